#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "yangian/currents.hpp"
#include "yangian/exchange.hpp"
#include "yangian/series.hpp"

namespace yangian {

struct OracleConfig {
    int N = 2;
    Rational k{1};
    Rational hbar{1};
    int L = 3;           // mode cutoff: total level of any intermediate state
    Window window;       // exponent window, same bounds for every variable
    int bra_level = 1;   // bras may carry at most this many extra levels over the ket
    CurrentOptions currents;
    std::map<BosonSymbol, Rational> momenta;  // base momenta of the sampled states

    void validate() const;
    std::string str() const;
};

struct FockState {
    std::map<BosonSymbol, Rational> momenta;               // nonzero entries only
    std::map<std::pair<BosonSymbol, int>, int> occupation;  // X_{-n} -> multiplicity

    static FockState vacuum(const std::map<BosonSymbol, Rational>& momenta = {});
    FockState& excite(const BosonSymbol& X, int n, int times = 1);
    int level() const;
    void normalize();
    std::string str() const;

    friend bool operator==(const FockState&, const FockState&) = default;
    friend auto operator<=>(const FockState&, const FockState&) = default;
};

// A current placed at var + arg*hbar.
struct WordFactor {
    CurrentExpr current;
    std::string var;
    ShiftScalar arg;
};
using Word = std::vector<WordFactor>;

// Output state -> coefficient series. The bra pairing is the coefficient of the
// output monomial in the basis prod X_{-n} |l>.
using StateSeries = std::map<FockState, GenSeries>;

StateSeries apply_vertex_term(const VertexTerm& T, const FockState& ket, const OracleConfig& cfg,
                              const std::string& var = "u");

// All outputs of the word on the ket whose level exceeds the ket's by at most
// cfg.bra_level. The leftmost factor is the largest variable.
StateSeries evaluate_word(const Word& w, const FockState& ket, const OracleConfig& cfg,
                          const std::vector<std::string>& vars);

struct MatrixElement {
    GenSeries series;
    bool momentum_allowed = false;  // false: zero by momentum bookkeeping
};
MatrixElement matrix_element(const Word& w, const FockState& bra, const FockState& ket, const OracleConfig& cfg,
                             const std::vector<std::string>& vars);

// Net momentum change of a word term choice is not unique in general; this
// lists the output momenta reachable from the ket.
std::vector<std::map<BosonSymbol, Rational>> reachable_momenta(const Word& w, const FockState& ket,
                                                               const OracleConfig& cfg);

// Rational-function expansions in the two orders of a pair of variables.
// R1 expands in the first variable large, R2 in the second.
GenSeries expand_region(const LinearFactorProduct& f, const std::string& large, const std::string& small,
                        const OracleConfig& cfg);
GenSeries region_difference(const LinearFactorProduct& f, const std::string& u, const std::string& v,
                            const OracleConfig& cfg);

// d(u - v - s hbar), exact inside the window.
GenSeries delta_series(const ShiftScalar& s, const OracleConfig& cfg, const std::string& u = "u",
                       const std::string& v = "v");

enum class OracleRelation { Y1, Y2, Y3, Y4, Y5, Y6, Y7, Y8 };
std::string relation_name(OracleRelation r);
OracleRelation parse_oracle_relation(const std::string& s);

// Kets used for a relation: vacuum, low excitations of every touched boson,
// mixed-momentum states per touched (b,c) pair, one a-momentum state.
// Local keeps l_b + l_c integral, so (b+c) vertex factors have integral
// exponents and delta-supported terms are honest formal distributions.
// Generic adds l_b + l_c = 5/6, where only the pole-free relations survive.
enum class MomentumSample { Local, Generic };
std::vector<FockState> state_sample(const std::vector<const CurrentExpr*>& currents, const OracleConfig& cfg,
                                    MomentumSample sample = MomentumSample::Local);

struct OracleFailure {
    std::string ket;
    std::string bra;
    Exponents position;
    Rational residual;
};

struct OracleReport {
    std::string relation;
    int i = 0, j = 0;
    Sign sign = Sign::Plus;
    std::size_t kets = 0;
    std::size_t bras = 0;
    std::size_t positions = 0;      // exact in-window positions compared
    std::size_t support = 0;        // of those, nonzero in some summand
    Rational max_residual;
    std::vector<OracleFailure> failures;  // first few only
    bool vacuous = false;           // relation does not apply to (i,j)
    bool pass() const { return failures.empty() && (vacuous || support > 0); }
};

OracleReport verify_relation_oracle(OracleRelation rel, int i, int j, Sign sign, const std::vector<FockState>& kets,
                                    const OracleConfig& cfg);
// State sample for the currents a relation involves.
std::vector<FockState> relation_sample(OracleRelation rel, int i, int j, Sign sign, const OracleConfig& cfg,
                                       MomentumSample sample = MomentumSample::Local);
// Same, with the default state sample.
OracleReport verify_relation_oracle(OracleRelation rel, int i, int j, Sign sign, const OracleConfig& cfg);

// For every term T of E^s_j: Q * <T1(u) T(v)> == P * <T(v) T1(u)> with P/Q the
// exchange factor specialized to (k, hbar). T1 = H^+_i (y2 uses T = H^-_j).
OracleReport cross_engine_check(OracleRelation rel, int i, int j, Sign sign, const std::vector<FockState>& kets,
                                const OracleConfig& cfg);

// Single-current matrix elements built with the two a^ variants. With
// a_vacuum_sector only kets with zero a-momentum and no a-oscillators, and
// bras without a-oscillators, are compared.
OracleReport oracle_variant_invariance(const std::vector<FockState>& kets, const OracleConfig& cfg,
                                       bool a_vacuum_sector = false);

}  // namespace yangian
