#pragma once

#include <compare>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "yangian/cartan.hpp"
#include "yangian/ratfunc.hpp"

namespace yangian {

enum class Sign { Plus = 1, Minus = -1 };
inline int sgn(Sign s) { return static_cast<int>(s); }
inline Sign flip(Sign s) { return s == Sign::Plus ? Sign::Minus : Sign::Plus; }
inline char sign_char(Sign s) { return s == Sign::Plus ? '+' : '-'; }

// c0 + ck*k, always a multiplier of hbar.
struct ShiftScalar {
    Rational c0;
    Rational ck;

    ShiftScalar() = default;
    ShiftScalar(const Rational& c) : c0(c) {}
    template <std::integral I>
    ShiftScalar(I c) : c0(c) {}
    ShiftScalar(const Rational& c, const Rational& kc) : c0(c), ck(kc) {}
    static ShiftScalar of_k(const Rational& kc) { return ShiftScalar(Rational(0), kc); }

    Rational eval(const Rational& k) const { return c0 + ck * k; }
    bool is_zero() const { return c0.is_zero() && ck.is_zero(); }
    ShiftScalar scaled(const Rational& r) const { return {c0 * r, ck * r}; }

    ShiftScalar& operator+=(const ShiftScalar& o) { c0 += o.c0; ck += o.ck; return *this; }
    ShiftScalar& operator-=(const ShiftScalar& o) { c0 -= o.c0; ck -= o.ck; return *this; }
    friend ShiftScalar operator+(ShiftScalar a, const ShiftScalar& b) { return a += b; }
    friend ShiftScalar operator-(ShiftScalar a, const ShiftScalar& b) { return a -= b; }
    ShiftScalar operator-() const { return {-c0, -ck}; }
    friend bool operator==(const ShiftScalar&, const ShiftScalar&) = default;
    friend auto operator<=>(const ShiftScalar&, const ShiftScalar&) = default;

    std::string str() const;
};

enum class BosonKind { A, B, C };

struct BosonSymbol {
    BosonKind kind = BosonKind::A;
    int i = 0;
    int j = 0;  // unused (0) for kind A

    static BosonSymbol a(int i, int N);
    static BosonSymbol b(int i, int j, int N);
    static BosonSymbol c(int i, int j, int N);

    friend bool operator==(const BosonSymbol&, const BosonSymbol&) = default;
    friend auto operator<=>(const BosonSymbol&, const BosonSymbol&) = default;
    std::string str() const;
};

// All bosons of sl_N in canonical order: a^1..a^{N-1}, b^{ij}, c^{ij}.
std::vector<BosonSymbol> all_bosons(int N);

enum class Part { Minus, Plus, Full };

// X_-(u;A), X_+(u;B) or X(u;A,B). Shifts not used by the part are zero.
struct FieldAtom {
    BosonSymbol sym;
    Part part = Part::Full;
    ShiftScalar A;
    ShiftScalar B;

    static FieldAtom minus(const BosonSymbol& s, const ShiftScalar& A) { return {s, Part::Minus, A, {}}; }
    static FieldAtom plus(const BosonSymbol& s, const ShiftScalar& B) { return {s, Part::Plus, {}, B}; }
    static FieldAtom full(const BosonSymbol& s, const ShiftScalar& A, const ShiftScalar& B) {
        return {s, Part::Full, A, B};
    }

    bool has_minus() const { return part != Part::Plus; }
    bool has_plus() const { return part != Part::Minus; }
    FieldAtom shifted(const ShiftScalar& s) const;

    friend bool operator==(const FieldAtom&, const FieldAtom&) = default;
    friend auto operator<=>(const FieldAtom&, const FieldAtom&) = default;
    std::string str() const;
};

// Linear combination of field atoms with coefficients in Q(k).
class FieldCombo {
public:
    using Map = std::map<FieldAtom, RatFunc>;

    FieldCombo() = default;
    FieldCombo(const FieldAtom& a, const RatFunc& c = RatFunc(1)) { add(a, c); }

    void add(const FieldAtom& a, const RatFunc& c);
    const Map& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    FieldCombo& operator+=(const FieldCombo& o);
    FieldCombo& operator-=(const FieldCombo& o);
    friend FieldCombo operator+(FieldCombo a, const FieldCombo& b) { return a += b; }
    friend FieldCombo operator-(FieldCombo a, const FieldCombo& b) { return a -= b; }
    FieldCombo operator-() const { return scaled(RatFunc(-1)); }
    FieldCombo scaled(const RatFunc& c) const;
    // Field evaluated at u + s*hbar instead of u.
    FieldCombo shifted(const ShiftScalar& s) const;

    // Operator-level canonical form: every full atom split into its halves.
    FieldCombo halves() const;
    bool equivalent(const FieldCombo& o) const { return halves() == o.halves(); }

    RatFunc q_coefficient(const BosonSymbol& s) const;
    RatFunc p_coefficient(const BosonSymbol& s) const;
    std::set<BosonSymbol> symbols() const;

    friend bool operator==(const FieldCombo& a, const FieldCombo& b) { return a.terms_ == b.terms_; }
    std::string str() const;

private:
    Map terms_;
};

// c * hbar^hbar_power
struct Prefactor {
    RatFunc coef = RatFunc(1);
    int hbar_power = 0;

    friend bool operator==(const Prefactor&, const Prefactor&) = default;
    Prefactor operator*(const Prefactor& o) const { return {coef * o.coef, hbar_power + o.hbar_power}; }
    Rational eval(const Rational& k, const Rational& hbar) const { return coef.eval(k) * pow(hbar, hbar_power); }
    std::string str() const;
};

// prefactor * :exp(combo):
struct VertexTerm {
    Prefactor prefactor;
    FieldCombo combo;

    VertexTerm shifted(const ShiftScalar& s) const { return {prefactor, combo.shifted(s)}; }
};

struct CurrentExpr {
    std::string label;
    std::vector<VertexTerm> terms;

    CurrentExpr shifted(const ShiftScalar& s) const;
    std::size_t size() const { return terms.size(); }
};

// Heisenberg structure: [X_n, Y_m] = metric(X,Y) n delta_{n+m,0}, [p_X, q_Y] = metric(X,Y).
RatFunc boson_metric(const BosonSymbol& X, const BosonSymbol& Y, const AlgebraData& d);
RatFunc mode_commutator(const BosonSymbol& X, int n, const BosonSymbol& Y, int m, const AlgebraData& d);
RatFunc zero_mode_pairing(const BosonSymbol& X, const BosonSymbol& Y, const AlgebraData& d);

// X^_{+-}(u + s hbar) = -+(X_{+-}(u+s;-1/2) - X_{+-}(u+s;1/2)) for X of kind b or c.
FieldCombo hatted_bc(const BosonSymbol& X, Sign sign, const ShiftScalar& s = {});

enum class AVariant { Standard, Alternate };
std::string variant_name(AVariant v);

FieldCombo hatted_a(int i, Sign sign, AVariant variant, const AlgebraData& d, const ShiftScalar& s = {});

// (b+c)^{ij}(u + s hbar) as full fields.
FieldCombo bc_full(int i, int j, const ShiftScalar& s, const AlgebraData& d);

}  // namespace yangian
