#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "yangian/rational.hpp"

namespace yangian {

// Polynomial in u, v, u1, u2, h (hbar), c (central charge) and B (B_ij),
// graded by deg(u)=deg(v)=deg(u1)=deg(u2)=deg(h)=1, deg(c)=deg(B)=0.
class GradedPoly {
public:
    enum Var { U, V, U1, U2, H, C, B, NVars };
    using Monomial = std::array<int, NVars>;

    GradedPoly() = default;
    GradedPoly(const Rational& c);  // NOLINT: constants convert
    static GradedPoly var(Var x);
    // Spectral variable by name ("u", "v", "u1", "u2").
    static GradedPoly spectral(const std::string& name);

    const std::map<Monomial, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    static int degree(const Monomial& m);
    int max_degree() const;  // -1 for zero
    GradedPoly homogeneous(int d) const;
    GradedPoly truncated(int d) const;  // drop graded degree > d
    Rational coefficient(const Monomial& m) const;
    Rational coefficient(Var x) const;  // coefficient of the bare variable x
    Rational constant() const;
    GradedPoly substitute(Var x, const Rational& value) const;
    std::string str() const;

    GradedPoly& operator+=(const GradedPoly& o);
    GradedPoly& operator-=(const GradedPoly& o);
    friend GradedPoly operator+(GradedPoly a, const GradedPoly& b) { return a += b; }
    friend GradedPoly operator-(GradedPoly a, const GradedPoly& b) { return a -= b; }
    friend GradedPoly operator*(const GradedPoly& a, const GradedPoly& b);
    GradedPoly operator-() const;
    friend bool operator==(const GradedPoly&, const GradedPoly&) = default;
    friend auto operator<=>(const GradedPoly&, const GradedPoly&) = default;

private:
    void add(const Monomial& m, const Rational& c);
    std::map<Monomial, Rational> terms_;
};

// u_+ and friends: x + q (h c), as they appear in the Yangian relations.
GradedPoly shifted(const std::string& var, const Rational& quarter_units);

// One summand coef * monomial * q^{qa a_ij + qr} * gamma^{g}.
struct TrigSummand {
    Rational coef{1};
    std::map<std::string, int> monomial;  // over z, w, z1, z2
    Rational q_a;                         // multiple of the a_ij placeholder
    Rational q_r;                         // explicit rational q exponent
    Rational gamma;
};

struct TrigFactor {
    std::vector<TrigSummand> summands;
    std::string str() const;
};

// Parses the textual form used in the schemas, e.g. "z - q^{a} g^{-1/2} w",
// "q^{-a} z - w", "q + q^{-1}", "z w". g stands for gamma.
TrigFactor parse_trig(const std::string& text);

struct Linearization {
    GradedPoly poly;        // after sign normalization
    GradedPoly raw;         // degree <= 1 truncation before normalization
    int sign = 1;           // poly = sign * raw
    bool degenerate = false;
    std::string str() const;
};

// Degree-d graded Taylor expansion after q -> e^{h/2}, gamma -> e^{hc/2},
// z -> e^{u} (z1 -> u1, z2 -> u2, w -> v unless remapped), with a_ij = 2B.
GradedPoly expand_trig(const TrigFactor& f, int degree,
                       const std::map<std::string, std::string>& var_map = {});

// Substitution, expansion, truncation at degree 1 and sign normalization (the
// u coefficient becomes +1 when present). a_ij substitutes B = a_ij/2.
Linearization linearize_factor(const TrigFactor& f, std::optional<Rational> a_ij = std::nullopt,
                               const std::map<std::string, std::string>& var_map = {});

// Uninterpreted current label, e.g. psi^i_+(gamma^{1/2} w) or H^+_i(v_+).
struct CurrentLabel {
    std::string kind;   // "psi", "E" on the q side; "H", "E" on the Yangian side
    int sign = 1;
    std::string index;  // "i" or "j"
    std::string var;
    Rational shift;     // q side: gamma exponent; Yangian side: multiple of h c
    std::string str() const;
};

struct SchemaTerm {
    Rational sign{1};
    std::vector<std::string> numerators;    // trig text (q side) or pretty text (Yangian side)
    std::vector<std::string> denominators;
    std::optional<std::string> delta;       // q side: argument monomial of delta(.)
    std::vector<CurrentLabel> word;
};

struct YangianTerm {
    Rational sign{1};
    std::vector<GradedPoly> numerators;
    std::vector<GradedPoly> denominators;
    std::optional<GradedPoly> delta_locus;  // delta(locus)
    std::vector<CurrentLabel> word;
};

enum class IndexCondition { None, KroneckerDelta, Commuting, Adjacent };

// A relation written as sum(terms) = 0.
struct RelationSchema {
    std::string name;
    int sign = 1;  // which member of a +- pair
    IndexCondition condition = IndexCondition::None;
    std::map<std::string, std::string> var_map;  // q variable -> Yangian variable
    std::vector<SchemaTerm> terms;
};

struct YangianSchema {
    std::string name;
    int sign = 1;
    IndexCondition condition = IndexCondition::None;
    std::vector<YangianTerm> terms;
};

std::vector<RelationSchema> q_relation_schemas(int q_rel);        // one per sign variant
std::vector<YangianSchema> yangian_relation_schemas(int y_rel);   // y_rel in 1..8

struct FactorPair {
    std::string trig;
    std::string linearized;
    std::string target;
    bool matched = false;
};

struct VariantReport {
    int sign = 1;
    std::vector<FactorPair> factors;
    std::vector<std::string> words;  // "mapped  <->  target"
    std::vector<std::string> notes;
    std::optional<Rational> overall;  // common ratio between q and Yangian terms
    bool words_matched = false;
    bool factors_matched = false;
    bool multiplicative = false;
    bool condition_matched = false;
    bool pass() const;
};

struct CorrespondenceReport {
    int q_rel = 0;
    int y_rel = 0;
    std::vector<VariantReport> variants;
    bool pass() const;
    std::string str() const;
};

// Partner of q relation 1..8 under the correspondence.
int yangian_partner(int q_rel);

CorrespondenceReport correspond_relation(int q_rel);

// Structural comparison of one q schema with one Yangian schema.
VariantReport match_schema(const RelationSchema& q, const YangianSchema& y);

// Degree-2 truncation of the product expansion against the product of the two
// degree-1 linearizations.
bool multiplicative_at_leading_order(const TrigFactor& f, const TrigFactor& g,
                                     const std::map<std::string, std::string>& var_map = {});

}  // namespace yangian
