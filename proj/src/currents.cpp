#include "yangian/currents.hpp"

#include <algorithm>
#include <sstream>

#include "yangian/errors.hpp"

namespace yangian {

namespace {

const Rational half(1, 2);

// s1*c0 + s2*k as a shift; helper for the many (a k + b)/2 style arguments
ShiftScalar sh(const Rational& c0, const Rational& ck) { return ShiftScalar(c0, ck); }

Sign parse_sign(const std::string& v) {
    if (v == "+") return Sign::Plus;
    if (v == "-") return Sign::Minus;
    throw std::invalid_argument("expected + or - in E^- reading, got '" + v + "'");
}

void check_i(int i, const AlgebraData& d) {
    if (i < 1 || i > d.N - 1)
        throw IndexOutOfRange("current index i=" + std::to_string(i) + " outside 1..N-1 for N=" + std::to_string(d.N));
}

// b^{ij} convention: the (m,m) pair contributes nothing.
FieldCombo bc(int i, int j, const ShiftScalar& s, const AlgebraData& d) {
    if (i == j) return {};
    return bc_full(i, j, s, d);
}

FieldCombo bhat(int i, int j, Sign sign, const ShiftScalar& s, const AlgebraData& d) {
    return hatted_bc(BosonSymbol::b(i, j, d.N), sign, s);
}

Prefactor over_hbar(int c) { return {RatFunc(c), -1}; }

}  // namespace

EMinusReading EMinusReading::parse(const std::string& text) {
    if (text == "corrected") return corrected();
    if (text == "printed") return printed();
    EMinusReading r;
    std::istringstream is(text);
    std::string item;
    while (std::getline(is, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("bad E^- reading item '" + item + "'");
        std::string key = item.substr(0, eq), val = item.substr(eq + 1);
        if (key == "first") r.first_sum = parse_sign(val);
        else if (key == "middle") r.middle_term = parse_sign(val);
        else if (key == "tail-a") {
            if (val != "on" && val != "off") throw std::invalid_argument("tail-a expects on|off");
            r.tail_a_plus = val == "on";
        } else {
            throw std::invalid_argument("unknown E^- reading key '" + key + "'");
        }
    }
    return r;
}

std::string EMinusReading::str() const {
    if (*this == corrected()) return "corrected";
    if (*this == printed()) return "printed";
    return std::string("first=") + sign_char(first_sum) + ",middle=" + sign_char(middle_term) +
           ",tail-a=" + (tail_a_plus ? "on" : "off");
}

std::string current_name(CurrentKind kind, int i) {
    switch (kind) {
        case CurrentKind::HPlus: return "H+_" + std::to_string(i);
        case CurrentKind::HMinus: return "H-_" + std::to_string(i);
        case CurrentKind::EPlus: return "E+_" + std::to_string(i);
        case CurrentKind::EMinus: return "E-_" + std::to_string(i);
    }
    return "?";
}

CurrentExpr build_H(int i, Sign sign, const AlgebraData& d, const CurrentOptions& opt) {
    check_i(i, d);
    const int N = d.N;
    const Rational s(sgn(sign));
    FieldCombo c;
    for (int l = 1; l <= i; ++l) c += bhat(l, i + 1, sign, sh(s * half * Rational(l - 1), s / 4), d);
    for (int l = 1; l <= i - 1; ++l) c -= bhat(l, i, sign, sh(s * half * Rational(l), s / 4), d);
    c += hatted_a(i, sign, opt.variant, d, ShiftScalar::of_k(-s / 4));
    for (int l = i + 1; l <= N; ++l) c += bhat(i, l, sign, sh(s * half * Rational(l), s / 4), d);
    for (int l = i + 2; l <= N; ++l) c -= bhat(i + 1, l, sign, sh(s * half * Rational(l - 1), s / 4), d);
    CurrentExpr e{current_name(sign == Sign::Plus ? CurrentKind::HPlus : CurrentKind::HMinus, i), {}};
    e.terms.push_back({Prefactor{}, c});
    return e;
}

CurrentExpr build_Eplus(int i, const AlgebraData& d) {
    check_i(i, d);
    CurrentExpr e{current_name(CurrentKind::EPlus, i), {}};
    for (int m = 1; m <= i; ++m) {
        FieldCombo tail;
        for (int l = 1; l < m; ++l) {
            tail += bhat(l, i + 1, Sign::Plus, half * Rational(l - 1), d);
            tail -= bhat(l, i, Sign::Plus, half * Rational(l), d);
        }
        FieldCombo head = bc(m, i, half * Rational(m - 1), d);
        FieldCombo t1 = head + bhat(m, i + 1, Sign::Plus, half * Rational(m - 1), d) -
                        bc(m, i + 1, half * Rational(m), d) + tail;
        FieldCombo t2 = head + bhat(m, i + 1, Sign::Minus, half * Rational(m - 1), d) -
                        bc(m, i + 1, half * Rational(m - 2), d) + tail;
        e.terms.push_back({over_hbar(-1), t1});
        e.terms.push_back({over_hbar(1), t2});
    }
    return e;
}

CurrentExpr build_Eminus(int i, const AlgebraData& d, const CurrentOptions& opt) {
    check_i(i, d);
    const int N = d.N;
    const EMinusReading& rd = opt.reading;
    // -(k + x)/2 and (k + x)/2
    auto neg = [](int x) { return sh(-half * Rational(x), -half); };
    auto pos = [](int x) { return sh(half * Rational(x), half); };
    CurrentExpr e{current_name(CurrentKind::EMinus, i), {}};

    for (int m = 1; m < i; ++m) {
        FieldCombo head = bc(m, i + 1, neg(m), d);
        FieldCombo tail;
        for (int l = m + 1; l <= i; ++l) tail += bhat(l, i + 1, Sign::Minus, neg(l - 1), d);
        for (int l = m + 1; l < i; ++l) tail -= bhat(l, i, Sign::Minus, neg(l), d);
        tail += hatted_a(i, Sign::Minus, opt.variant, d);
        for (int l = i + 1; l <= N; ++l) tail += bhat(i, l, Sign::Minus, neg(l), d);
        for (int l = i + 2; l <= N; ++l) tail -= bhat(i + 1, l, rd.first_sum, neg(l - 1), d);
        FieldCombo t1 = head - bhat(m, i, Sign::Minus, neg(m), d) - bc(m, i, neg(m - 1), d) + tail;
        FieldCombo t2 = head - bhat(m, i, Sign::Plus, neg(m), d) - bc(m, i, neg(m + 1), d) + tail;
        e.terms.push_back({over_hbar(-1), t1});
        e.terms.push_back({over_hbar(1), t2});
    }

    FieldCombo mid1 = bc(i, i + 1, neg(i), d) + hatted_a(i, Sign::Minus, opt.variant, d);
    for (int l = i + 1; l <= N; ++l) mid1 += bhat(i, l, Sign::Minus, neg(l), d);
    for (int l = i + 2; l <= N; ++l) mid1 -= bhat(i + 1, l, Sign::Minus, neg(l - 1), d);
    e.terms.push_back({over_hbar(-1), mid1});

    FieldCombo mid2 = bc(i, i + 1, pos(i), d) + hatted_a(i, Sign::Plus, opt.variant, d);
    for (int l = i + 1; l <= N; ++l) mid2 += bhat(i, l, Sign::Plus, pos(l), d);
    for (int l = i + 2; l <= N; ++l) mid2 -= bhat(i + 1, l, rd.middle_term, pos(l - 1), d);
    e.terms.push_back({over_hbar(1), mid2});

    for (int m = i + 2; m <= N; ++m) {
        FieldCombo head = bc(i, m, pos(m - 1), d);
        FieldCombo tail;
        for (int l = m; l <= N; ++l) {
            tail += bhat(i, l, Sign::Plus, pos(l), d);
            tail -= bhat(i + 1, l, Sign::Plus, pos(l - 1), d);
        }
        if (rd.tail_a_plus) tail += hatted_a(i, Sign::Plus, opt.variant, d);
        FieldCombo t1 = head + bhat(i + 1, m, Sign::Plus, pos(m - 1), d) - bc(i + 1, m, pos(m), d) + tail;
        FieldCombo t2 = head + bhat(i + 1, m, Sign::Minus, pos(m - 1), d) - bc(i + 1, m, pos(m - 2), d) + tail;
        e.terms.push_back({over_hbar(1), t1});
        e.terms.push_back({over_hbar(-1), t2});
    }
    return e;
}

CurrentExpr build_current(CurrentKind kind, int i, const AlgebraData& d, const CurrentOptions& opt) {
    switch (kind) {
        case CurrentKind::HPlus: return build_H(i, Sign::Plus, d, opt);
        case CurrentKind::HMinus: return build_H(i, Sign::Minus, d, opt);
        case CurrentKind::EPlus: return build_Eplus(i, d);
        case CurrentKind::EMinus: return build_Eminus(i, d, opt);
    }
    throw Error("unknown current kind");
}

std::map<BosonSymbol, RatFunc> momentum_shift(const VertexTerm& t) {
    std::map<BosonSymbol, RatFunc> out;
    for (const auto& s : t.combo.symbols()) {
        RatFunc q = t.combo.q_coefficient(s);
        if (!q.is_zero()) out[s] = q;
    }
    return out;
}

CurrentExpr transcribed_N2(CurrentKind kind) {
    const AlgebraData d = build_algebra_data(2);
    const BosonSymbol b = BosonSymbol::b(1, 2, 2);
    const BosonSymbol c = BosonSymbol::c(1, 2, 2);
    const BosonSymbol a = BosonSymbol::a(1, 2);
    const ShiftScalar kg(Rational(2), Rational(1));
    const RatFunc inv(Poly(1), Poly::k() + Poly(2));
    auto bhat_p = [&](const ShiftScalar& s) {
        return FieldCombo(FieldAtom::plus(b, s - half), -1) + FieldCombo(FieldAtom::plus(b, s + half), 1);
    };
    auto bhat_m = [&](const ShiftScalar& s) {
        return FieldCombo(FieldAtom::minus(b, s - half), 1) + FieldCombo(FieldAtom::minus(b, s + half), -1);
    };
    // a^_+(u+s) = a_+(u+s;0) - a_+(u+s;k+2);  a^_-(u+s) = (a_-(u+s;1) - a_-(u+s;-1))/(k+2)
    auto ahat_p = [&](const ShiftScalar& s) {
        return FieldCombo(FieldAtom::plus(a, s), 1) + FieldCombo(FieldAtom::plus(a, s + kg), -1);
    };
    auto ahat_m = [&](const ShiftScalar& s) {
        return FieldCombo(FieldAtom::minus(a, s + ShiftScalar(1)), inv) +
               FieldCombo(FieldAtom::minus(a, s - ShiftScalar(1)), -inv);
    };
    auto bpc = [&](const ShiftScalar& s) {
        return FieldCombo(FieldAtom::full(b, s, s), 1) + FieldCombo(FieldAtom::full(c, s, s), 1);
    };
    CurrentExpr e;
    switch (kind) {
        case CurrentKind::HPlus:
            e.label = "H+_1";
            e.terms.push_back({Prefactor{}, bhat_p(ShiftScalar::of_k(Rational(1, 4))) +
                                                bhat_p(ShiftScalar(Rational(1), Rational(1, 4))) +
                                                ahat_p(ShiftScalar::of_k(Rational(-1, 4)))});
            break;
        case CurrentKind::HMinus:
            e.label = "H-_1";
            e.terms.push_back({Prefactor{}, bhat_m(ShiftScalar::of_k(Rational(-1, 4))) +
                                                bhat_m(ShiftScalar(Rational(-1), Rational(-1, 4))) +
                                                ahat_m(ShiftScalar::of_k(Rational(1, 4)))});
            break;
        case CurrentKind::EPlus:
            e.label = "E+_1";
            e.terms.push_back({Prefactor{RatFunc(-1), -1}, bhat_p(ShiftScalar()) - bpc(half)});
            e.terms.push_back({Prefactor{RatFunc(1), -1}, bhat_m(ShiftScalar()) - bpc(-half)});
            break;
        case CurrentKind::EMinus:
            e.label = "E-_1";
            e.terms.push_back({Prefactor{RatFunc(1), -1}, bpc(ShiftScalar(half, half)) + ahat_p(ShiftScalar()) +
                                                              bhat_p(ShiftScalar(Rational(1), half))});
            e.terms.push_back({Prefactor{RatFunc(-1), -1}, bpc(ShiftScalar(-half, -half)) + ahat_m(ShiftScalar()) +
                                                               bhat_m(ShiftScalar(Rational(-1), -half))});
            break;
    }
    (void)d;
    return e;
}

namespace {

std::vector<std::string> canonical_terms(const CurrentExpr& e) {
    std::vector<std::string> out;
    for (const auto& t : e.terms) out.push_back(t.prefactor.str() + " :: " + t.combo.halves().str());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

ReductionReport reduce_to_N2(CurrentKind kind) {
    const AlgebraData d = build_algebra_data(2);
    ReductionReport r{kind, false, {}};
    auto built = canonical_terms(build_current(kind, 1, d));
    auto written = canonical_terms(transcribed_N2(kind));
    r.pass = built == written;
    if (!r.pass) {
        std::ostringstream os;
        for (const auto& t : built)
            if (std::find(written.begin(), written.end(), t) == written.end()) os << "built only: " << t << "\n";
        for (const auto& t : written)
            if (std::find(built.begin(), built.end(), t) == built.end()) os << "transcribed only: " << t << "\n";
        if (built.size() != written.size())
            os << "term counts " << built.size() << " vs " << written.size() << "\n";
        r.diff = os.str();
    }
    return r;
}

std::string dump(const CurrentExpr& e) {
    std::ostringstream os;
    os << "# " << e.label << "\n";
    int n = 0;
    for (const auto& t : e.terms) {
        os << "term " << ++n << " " << t.prefactor.str() << "\n";
        for (const auto& [atom, coef] : t.combo.terms()) {
            os << "  " << atom.sym.str() << " ";
            switch (atom.part) {
                case Part::Minus: os << "minus " << atom.A.str(); break;
                case Part::Plus: os << "plus " << atom.B.str(); break;
                case Part::Full: os << "full " << atom.A.str() << ";" << atom.B.str(); break;
            }
            os << " " << coef.str() << "\n";
        }
    }
    return os.str();
}

}  // namespace yangian
