#pragma once

#include <map>
#include <string>
#include <vector>

#include "yangian/boson.hpp"
#include "yangian/currents.hpp"

namespace yangian {

// sum_s kappa_s * log(x - y + s hbar)
struct ContractionValue {
    std::map<ShiftScalar, RatFunc> terms;

    void add(const ShiftScalar& s, const RatFunc& kappa);
    ContractionValue& operator+=(const ContractionValue& o);
    ContractionValue scaled(const RatFunc& c) const;
    bool is_zero() const { return terms.empty(); }
    friend bool operator==(const ContractionValue&, const ContractionValue&) = default;
    std::string str() const;
};

// (x - y + shift hbar)
struct LinearFactor {
    std::string x;
    std::string y;
    ShiftScalar shift;
    friend bool operator==(const LinearFactor&, const LinearFactor&) = default;
    friend auto operator<=>(const LinearFactor&, const LinearFactor&) = default;
    std::string str() const;
};

// scalar * prod (x - y + s hbar)^e. Factors are stored with x < y whenever
// the exponent is an integer, so products in either orientation compare equal.
class LinearFactorProduct {
public:
    using Map = std::map<LinearFactor, RatFunc>;

    LinearFactorProduct() = default;
    static LinearFactorProduct factor(const std::string& x, const std::string& y, const ShiftScalar& s,
                                      const RatFunc& e = RatFunc(1));
    static LinearFactorProduct constant(const RatFunc& c);

    const Map& factors() const { return factors_; }
    const RatFunc& scalar() const { return scalar_; }
    bool is_one() const { return factors_.empty() && scalar_ == RatFunc(1); }
    bool integral_exponents() const;

    LinearFactorProduct& operator*=(const LinearFactorProduct& o);
    friend LinearFactorProduct operator*(LinearFactorProduct a, const LinearFactorProduct& b) { return a *= b; }
    LinearFactorProduct inverse() const;
    friend LinearFactorProduct operator/(const LinearFactorProduct& a, const LinearFactorProduct& b) {
        return a * b.inverse();
    }
    friend bool operator==(const LinearFactorProduct&, const LinearFactorProduct&) = default;

    std::string str() const;

private:
    void mul_factor(LinearFactor f, RatFunc e);
    Map factors_;
    RatFunc scalar_ = RatFunc(1);
};

// <F(x) G(y)>: plus shift of F against minus shift of G.
ContractionValue contract_atoms(const FieldAtom& F, const FieldAtom& G, const AlgebraData& d);
ContractionValue contract(const FieldCombo& F, const FieldCombo& G, const AlgebraData& d);
// exp(sum kappa log(x-y+s)); the contraction value is taken as written at (x,y).
LinearFactorProduct exp_contraction(const ContractionValue& c, const std::string& x, const std::string& y);

// T1(x) T2(y) = result * T2(y) T1(x) as normal-ordered operators.
LinearFactorProduct exchange_factor(const FieldCombo& T1, const std::string& x, const FieldCombo& T2,
                                    const std::string& y, const AlgebraData& d);
LinearFactorProduct exchange_factor(const VertexTerm& T1, const std::string& x, const VertexTerm& T2,
                                    const std::string& y, const AlgebraData& d);

enum class OpeLemma { Aapn, BHat, CHat, BHatVsFull, CHatVsFull };
std::string lemma_name(OpeLemma l);
OpeLemma parse_lemma(const std::string& s);
std::vector<OpeLemma> all_lemmas();

struct IdentityCheck {
    std::string indices;
    LinearFactorProduct computed;
    LinearFactorProduct expected;
    bool pass = false;
};

struct OpeReport {
    OpeLemma lemma;
    int N = 0;
    AVariant variant = AVariant::Standard;
    std::vector<IdentityCheck> checks;
    bool pass() const;
};

OpeReport verify_ope_lemma(OpeLemma lemma, const AlgebraData& d, AVariant variant = AVariant::Standard);

enum class LinearRelation { Y1, Y2, Y3, Y4 };
std::string relation_name(LinearRelation r);

enum class TermStatus { Pass, DeferredToOracle };

struct TermCheck {
    int term = 0;
    LinearFactorProduct exchange;
    LinearFactorProduct required;
    TermStatus status = TermStatus::Pass;
};

struct LinearRelationReport {
    LinearRelation relation;
    int N = 0, i = 0, j = 0;
    Sign sign = Sign::Plus;  // which E^{+-} (y3/y4) or H^{+-} pair (y1); unused for y2
    std::vector<TermCheck> terms;
    bool deferred() const;
};

LinearRelationReport verify_linear_relation(LinearRelation rel, const AlgebraData& d, int i, int j, Sign sign,
                                            const CurrentOptions& opt = {});

// Pairings of the a^-bearing currents under the two a^ variants.
struct InvarianceReport {
    int pairs_checked = 0;
    std::vector<std::string> mismatches;
    bool pass() const { return mismatches.empty(); }
};
InvarianceReport remark2_invariance(const AlgebraData& d, const EMinusReading& reading = EMinusReading::corrected());

// Residuals of :exp(candidate): against exp(a^j_+) (relation 1a, constrains the
// candidate's minus half) and exp(a^j_-) (relation 2a, constrains its plus half).
struct ScreeningEntry {
    int j = 0;
    LinearFactorProduct minus_side_residual;  // 1a
    LinearFactorProduct plus_side_residual;   // 2a
};

struct ScreeningReport {
    int i = 0;
    AVariant variant = AVariant::Standard;
    std::vector<ScreeningEntry> entries;
    bool minus_side_solved() const;
    bool plus_side_solved() const;
    bool success() const { return minus_side_solved() && plus_side_solved(); }
};

ScreeningReport check_screening_candidate(int i, const FieldCombo& candidate, const AlgebraData& d,
                                          AVariant variant = AVariant::Standard);

struct NamedCandidate {
    std::string name;
    int i = 0;
    AVariant variant = AVariant::Standard;
    FieldCombo combo;
};
std::vector<NamedCandidate> bundled_candidates(const AlgebraData& d);

}  // namespace yangian
