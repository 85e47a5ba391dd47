#include "yangian/boson.hpp"

#include <sstream>

#include "yangian/errors.hpp"

namespace yangian {

std::string ShiftScalar::str() const {
    if (ck.is_zero()) return c0.str();
    std::ostringstream os;
    if (!c0.is_zero()) os << c0 << (ck.sign() > 0 ? "+" : "-");
    else if (ck.sign() < 0) os << "-";
    Rational a = ck.abs();
    if (a != Rational(1)) os << a << "*";
    os << "k";
    return os.str();
}

BosonSymbol BosonSymbol::a(int i, int N) {
    if (i < 1 || i > N - 1) throw IndexOutOfRange("a^" + std::to_string(i) + " outside 1..N-1 for N=" + std::to_string(N));
    return {BosonKind::A, i, 0};
}

static void check_pair(const char* name, int i, int j, int N) {
    if (i < 1 || j > N || i >= j)
        throw IndexOutOfRange(std::string(name) + "^{" + std::to_string(i) + "," + std::to_string(j) +
                              "} requires 1<=i<j<=N with N=" + std::to_string(N));
}

BosonSymbol BosonSymbol::b(int i, int j, int N) {
    check_pair("b", i, j, N);
    return {BosonKind::B, i, j};
}

BosonSymbol BosonSymbol::c(int i, int j, int N) {
    check_pair("c", i, j, N);
    return {BosonKind::C, i, j};
}

std::string BosonSymbol::str() const {
    switch (kind) {
        case BosonKind::A: return "a" + std::to_string(i);
        case BosonKind::B: return "b" + std::to_string(i) + "," + std::to_string(j);
        case BosonKind::C: return "c" + std::to_string(i) + "," + std::to_string(j);
    }
    return "?";
}

std::vector<BosonSymbol> all_bosons(int N) {
    std::vector<BosonSymbol> out;
    for (int i = 1; i < N; ++i) out.push_back(BosonSymbol::a(i, N));
    for (int i = 1; i <= N; ++i)
        for (int j = i + 1; j <= N; ++j) out.push_back(BosonSymbol::b(i, j, N));
    for (int i = 1; i <= N; ++i)
        for (int j = i + 1; j <= N; ++j) out.push_back(BosonSymbol::c(i, j, N));
    return out;
}

FieldAtom FieldAtom::shifted(const ShiftScalar& s) const {
    FieldAtom r = *this;
    if (has_minus()) r.A += s;
    if (has_plus()) r.B += s;
    return r;
}

std::string FieldAtom::str() const {
    switch (part) {
        case Part::Minus: return sym.str() + " minus(" + A.str() + ")";
        case Part::Plus: return sym.str() + " plus(" + B.str() + ")";
        case Part::Full: return sym.str() + " full(" + A.str() + "," + B.str() + ")";
    }
    return "?";
}

void FieldCombo::add(const FieldAtom& a, const RatFunc& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(a, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

FieldCombo& FieldCombo::operator+=(const FieldCombo& o) {
    for (const auto& [a, c] : o.terms_) add(a, c);
    return *this;
}

FieldCombo& FieldCombo::operator-=(const FieldCombo& o) {
    for (const auto& [a, c] : o.terms_) add(a, -c);
    return *this;
}

FieldCombo FieldCombo::scaled(const RatFunc& c) const {
    FieldCombo r;
    if (c.is_zero()) return r;
    for (const auto& [a, x] : terms_) r.terms_.emplace(a, x * c);
    return r;
}

FieldCombo FieldCombo::shifted(const ShiftScalar& s) const {
    FieldCombo r;
    for (const auto& [a, x] : terms_) r.add(a.shifted(s), x);
    return r;
}

FieldCombo FieldCombo::halves() const {
    FieldCombo r;
    for (const auto& [a, x] : terms_) {
        if (a.part == Part::Full) {
            r.add(FieldAtom::minus(a.sym, a.A), x);
            r.add(FieldAtom::plus(a.sym, a.B), x);
        } else {
            r.add(a, x);
        }
    }
    return r;
}

RatFunc FieldCombo::q_coefficient(const BosonSymbol& s) const {
    RatFunc r;
    for (const auto& [a, x] : terms_)
        if (a.sym == s && a.has_minus()) r += x;
    return r;
}

RatFunc FieldCombo::p_coefficient(const BosonSymbol& s) const {
    RatFunc r;
    for (const auto& [a, x] : terms_)
        if (a.sym == s && a.has_plus()) r += x;
    return r;
}

std::set<BosonSymbol> FieldCombo::symbols() const {
    std::set<BosonSymbol> s;
    for (const auto& [a, x] : terms_) s.insert(a.sym);
    return s;
}

std::string FieldCombo::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [a, x] : terms_) {
        if (!first) os << " + ";
        os << "(" << x << ")*" << a.str();
        first = false;
    }
    return os.str();
}

std::string Prefactor::str() const {
    std::string s = coef.str();
    if (hbar_power != 0) s += "*hbar^" + std::to_string(hbar_power);
    return s;
}

CurrentExpr CurrentExpr::shifted(const ShiftScalar& s) const {
    CurrentExpr r{label, {}};
    for (const auto& t : terms) r.terms.push_back(t.shifted(s));
    return r;
}

RatFunc boson_metric(const BosonSymbol& X, const BosonSymbol& Y, const AlgebraData& d) {
    if (X.kind != Y.kind) return RatFunc(0);
    if (X.kind == BosonKind::A) {
        // (k+g) B_ij
        Poly kg = Poly::k() + Poly(d.g);
        return RatFunc(kg.scaled(d.b(X.i, Y.i)));
    }
    if (X.i != Y.i || X.j != Y.j) return RatFunc(0);
    return RatFunc(X.kind == BosonKind::B ? -1 : 1);
}

RatFunc mode_commutator(const BosonSymbol& X, int n, const BosonSymbol& Y, int m, const AlgebraData& d) {
    if (n == 0 || m == 0) throw Unsupported("mode_commutator: zero modes go through zero_mode_pairing");
    if (n + m != 0) return RatFunc(0);
    return boson_metric(X, Y, d) * RatFunc(n);
}

RatFunc zero_mode_pairing(const BosonSymbol& X, const BosonSymbol& Y, const AlgebraData& d) {
    return boson_metric(X, Y, d);
}

FieldCombo hatted_bc(const BosonSymbol& X, Sign sign, const ShiftScalar& s) {
    if (X.kind == BosonKind::A) throw WrongKind("hatted_bc: " + X.str() + " is not a b or c boson");
    const Rational h(1, 2);
    FieldCombo r;
    if (sign == Sign::Plus) {
        r.add(FieldAtom::plus(X, s - h), RatFunc(-1));
        r.add(FieldAtom::plus(X, s + h), RatFunc(1));
    } else {
        r.add(FieldAtom::minus(X, s - h), RatFunc(1));
        r.add(FieldAtom::minus(X, s + h), RatFunc(-1));
    }
    return r;
}

std::string variant_name(AVariant v) { return v == AVariant::Standard ? "standard" : "alternate"; }

FieldCombo hatted_a(int i, Sign sign, AVariant variant, const AlgebraData& d, const ShiftScalar& s) {
    const int N = d.N;
    const BosonSymbol ai = BosonSymbol::a(i, N);
    const ShiftScalar kg(Rational(d.g), Rational(1));
    const RatFunc inv_kg(Poly(1), Poly::k() + Poly(d.g));
    FieldCombo r;
    // Binv^{jl}/(k+g) * (X^j(s + base - B_il) - X^j(s + base + B_il)), X^j a half field
    auto binv_sum = [&](Part part, const ShiftScalar& base, int lead) {
        for (int j = 1; j < N; ++j) {
            const BosonSymbol aj = BosonSymbol::a(j, N);
            for (int l = 1; l < N; ++l) {
                const Rational& bil = d.b(i, l);
                if (bil.is_zero()) continue;
                RatFunc c = inv_kg * RatFunc(d.binv(j, l));
                ShiftScalar s1 = s + base + ShiftScalar(bil).scaled(Rational(lead));
                ShiftScalar s2 = s + base - ShiftScalar(bil).scaled(Rational(lead));
                if (part == Part::Minus) {
                    r.add(FieldAtom::minus(aj, s1), c);
                    r.add(FieldAtom::minus(aj, s2), -c);
                } else {
                    r.add(FieldAtom::plus(aj, s1), c);
                    r.add(FieldAtom::plus(aj, s2), -c);
                }
            }
        }
    };
    if (variant == AVariant::Standard) {
        if (sign == Sign::Plus) {
            r.add(FieldAtom::plus(ai, s), RatFunc(1));
            r.add(FieldAtom::plus(ai, s + kg), RatFunc(-1));
        } else {
            binv_sum(Part::Minus, ShiftScalar(), +1);
        }
    } else {
        const ShiftScalar half_kg = kg.scaled(Rational(1, 2));
        if (sign == Sign::Plus) {
            binv_sum(Part::Plus, half_kg, -1);
        } else {
            r.add(FieldAtom::minus(ai, s + half_kg), RatFunc(1));
            r.add(FieldAtom::minus(ai, s - half_kg), RatFunc(-1));
        }
    }
    return r;
}

FieldCombo bc_full(int i, int j, const ShiftScalar& s, const AlgebraData& d) {
    FieldCombo r;
    r.add(FieldAtom::full(BosonSymbol::b(i, j, d.N), s, s), RatFunc(1));
    r.add(FieldAtom::full(BosonSymbol::c(i, j, d.N), s, s), RatFunc(1));
    return r;
}

}  // namespace yangian
