#pragma once

#include <map>
#include <string>
#include <vector>

#include "yangian/rational.hpp"

namespace yangian {

using Exponents = std::vector<Rational>;

// sum_t weight_t * e_t >= threshold. A coefficient is exact (free of
// truncation effects) iff every rule of its series holds at its position.
struct ExactRule {
    std::vector<int> weights;
    Rational threshold;
    bool holds(const Exponents& e) const;
    std::string str(const std::vector<std::string>& vars) const;
    friend bool operator==(const ExactRule&, const ExactRule&) = default;
    friend auto operator<=>(const ExactRule&, const ExactRule&) = default;
};

// Truncated multi-variable series with rational exponents.
class GenSeries {
public:
    using Map = std::map<Exponents, Rational>;

    GenSeries() = default;
    explicit GenSeries(std::vector<std::string> vars) : vars_(std::move(vars)) {}

    // Polynomial / monomial helpers
    static GenSeries monomial(std::vector<std::string> vars, const Exponents& e, const Rational& c);
    static GenSeries constant(std::vector<std::string> vars, const Rational& c);
    // sum_t c_t var_t + c0
    static GenSeries linear(std::vector<std::string> vars, const std::vector<Rational>& c, const Rational& c0);

    const std::vector<std::string>& vars() const { return vars_; }
    std::size_t nvars() const { return vars_.size(); }
    int var_index(const std::string& name) const;
    const Map& coeffs() const { return coeffs_; }
    const std::vector<ExactRule>& rules() const { return rules_; }
    bool empty() const { return coeffs_.empty(); }

    void add_term(const Exponents& e, const Rational& c);
    void add_rule(const ExactRule& r);
    void add_rules(const std::vector<ExactRule>& rs);
    void add_lower_bound(int var, const Rational& lo);
    void add_upper_bound(int var, const Rational& hi);

    Rational coefficient(const Exponents& e) const;
    bool exact_at(const Exponents& e) const;

    GenSeries& operator+=(const GenSeries& o);
    GenSeries& operator-=(const GenSeries& o);
    friend GenSeries operator+(GenSeries a, const GenSeries& b) { return a += b; }
    friend GenSeries operator-(GenSeries a, const GenSeries& b) { return a -= b; }
    GenSeries scaled(const Rational& c) const;

    // Product with conservative propagation of the exactness rules. Rules with
    // negative weights need the other factor's support to be complete below.
    GenSeries operator*(const GenSeries& o) const;

    // Per-variable extreme exponents over the stored support (empty -> none).
    std::vector<Rational> max_exponents() const;
    std::vector<Rational> min_exponents() const;

    // Re-express in a different ordering/superset of variable names.
    GenSeries with_vars(const std::vector<std::string>& vars) const;

    std::string str() const;

private:
    std::vector<std::string> vars_;
    Map coeffs_;
    std::vector<ExactRule> rules_;
};

struct Window {
    Rational lo{-8};
    Rational hi{8};
    bool contains(const Exponents& e) const;
};

// Comparison of a series against zero over exact positions inside the window.
struct ResidualSummary {
    std::size_t exact_positions = 0;   // stored positions inspected
    std::size_t nonzero = 0;
    Rational max_abs;
    Exponents worst;
    bool zero() const { return nonzero == 0; }
};
ResidualSummary residual(const GenSeries& diff, const Window& w);

// Count of exact, in-window, nonzero coefficients (non-vacuity evidence).
std::size_t exact_support(const GenSeries& s, const Window& w);

// (x + s)^e = x^e sum_j binom(e,j) s^j x^{-j}, j = 0..jmax
std::vector<Rational> shifted_power_coeffs(const Rational& e, const Rational& s, int jmax);

// Formal delta d(u - v - c) = sum_n u^{-n-1} (v + c)^n with (v+c)^n, n<0, expanded
// in 1/v. u exponents in [ulo, uhi]; v exponents kept >= vlo.
GenSeries delta_series(const Rational& c, const std::string& u, const std::string& v, int ulo, int uhi, int vlo);

// d(u - v - c) * f(v) for a one-variable series f in v, computed directly so
// the exactness rule stays sharp: exact iff e_u + e_v + 1 >= (lowest exact
// exponent of f), plus the u range.
GenSeries delta_times(const Rational& c, const std::string& u, const GenSeries& f, int ulo, int uhi,
                      const Rational& vlo);

}  // namespace yangian
