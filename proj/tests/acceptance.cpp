// Acceptance run: one PASS/FAIL line per criterion, exact comparisons only.
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "yangian/cartan.hpp"
#include "yangian/correspondence.hpp"
#include "yangian/currents.hpp"
#include "yangian/exchange.hpp"
#include "yangian/fock.hpp"

using namespace yangian;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string sign_text(Sign s) { return s == Sign::Plus ? "+" : "-"; }

struct Outcome {
    bool pass = true;
    std::ostringstream note;
};

void detail(const std::string& line) { std::cout << "    " << line << "\n" << std::flush; }

std::string oracle_line(const OracleReport& r) {
    std::ostringstream os;
    os << r.relation << " (" << r.i << "," << r.j << "," << sign_text(r.sign) << ") " << (r.pass() ? "pass" : "FAIL")
       << " kets=" << r.kets << " positions=" << r.positions << " support=" << r.support;
    if (r.vacuous) os << " vacuous";
    if (!r.failures.empty()) os << " max|residual|=" << r.max_residual;
    return os.str();
}

// 1: OPE lemmas for N = 2, 3, 4 from the contraction table, symbolic k.
Outcome criterion1() {
    Outcome o;
    auto t0 = Clock::now();
    int identities = 0;
    for (int N : {2, 3, 4}) {
        AlgebraData d = build_algebra_data(N);
        for (auto l : all_lemmas()) {
            OpeReport r = verify_ope_lemma(l, d);
            identities += static_cast<int>(r.checks.size());
            if (!r.pass() || r.checks.empty()) {
                o.pass = false;
                detail("N=" + std::to_string(N) + " " + lemma_name(l) + " FAIL");
            }
        }
        if (!verify_ope_lemma(OpeLemma::Aapn, d, AVariant::Alternate).pass()) {
            o.pass = false;
            detail("N=" + std::to_string(N) + " aapn (alternate) FAIL");
        }
    }
    double s = seconds_since(t0);
    if (s >= 1.0) o.pass = false;
    o.note << identities << " identities, " << s << " s";
    return o;
}

// 2: exchange factors of the a^-bearing pairings agree under both a^ builds.
Outcome criterion2() {
    Outcome o;
    int pairs = 0;
    for (int N : {2, 3}) {
        auto r = remark2_invariance(build_algebra_data(N));
        pairs += r.pairs_checked;
        if (!r.pass() || r.pairs_checked == 0) o.pass = false;
        for (const auto& m : r.mismatches) detail("N=" + std::to_string(N) + " " + m);
    }
    o.note << pairs << " pairings";
    return o;
}

// 3: y1..y4 termwise, symbolic k; any deferred term goes to the oracle.
Outcome criterion3() {
    Outcome o;
    auto t0 = Clock::now();
    int checks = 0, deferred = 0;
    for (int N : {2, 3}) {
        AlgebraData d = build_algebra_data(N);
        for (int i = 1; i < N; ++i)
            for (int j = 1; j < N; ++j)
                for (auto rel : {LinearRelation::Y1, LinearRelation::Y2, LinearRelation::Y3, LinearRelation::Y4})
                    for (Sign s : {Sign::Plus, Sign::Minus}) {
                        ++checks;
                        auto rep = verify_linear_relation(rel, d, i, j, s);
                        if (!rep.deferred()) continue;
                        ++deferred;
                        OracleConfig cfg;
                        cfg.N = N;
                        auto orel = static_cast<OracleRelation>(static_cast<int>(rel));
                        auto r = verify_relation_oracle(orel, i, j, s, cfg);
                        detail("deferred " + oracle_line(r));
                        if (!r.pass()) o.pass = false;
                    }
    }
    double s = seconds_since(t0);
    if (s >= 10.0) o.pass = false;
    o.note << checks << " relation instances, " << deferred << " deferred, " << s << " s";
    return o;
}

// 4: the general builders at N=2 against the hand-written sl_2 currents.
Outcome criterion4() {
    Outcome o;
    for (auto kind : {CurrentKind::HPlus, CurrentKind::HMinus, CurrentKind::EPlus, CurrentKind::EMinus}) {
        auto r = reduce_to_N2(kind);
        if (!r.pass) {
            o.pass = false;
            detail(current_name(kind, 1) + ": " + r.diff);
        }
    }
    o.note << "4 currents";
    return o;
}

bool run_oracle_grid(OracleConfig cfg, const std::vector<OracleRelation>& rels, int* count, bool verbose) {
    bool ok = true;
    const int r = cfg.N - 1;
    for (auto rel : rels) {
        const bool signed_rel = rel != OracleRelation::Y2 && rel != OracleRelation::Y6;
        for (int i = 1; i <= r; ++i)
            for (int j = 1; j <= r; ++j)
                for (Sign s : {Sign::Plus, Sign::Minus}) {
                    if (!signed_rel && s == Sign::Minus) continue;
                    auto rep = verify_relation_oracle(rel, i, j, s, cfg);
                    ++*count;
                    if (!rep.pass()) ok = false;
                    if (verbose || !rep.pass()) detail(oracle_line(rep));
                }
    }
    return ok;
}

// 5: oracle region differences for y1..y6 and y8.
Outcome criterion5() {
    Outcome o;
    const std::vector<OracleRelation> rels{OracleRelation::Y1, OracleRelation::Y2, OracleRelation::Y3,
                                           OracleRelation::Y4, OracleRelation::Y5, OracleRelation::Y6,
                                           OracleRelation::Y8};
    int count = 0;
    std::string readings;
    for (int N : {2, 3})
        for (int k : {1, 2})
            for (Rational hbar : {Rational(1), Rational(1, 3)}) {
                auto t0 = Clock::now();
                OracleConfig cfg;
                cfg.N = N;
                cfg.k = Rational(k);
                cfg.hbar = hbar;
                cfg.L = 3;
                cfg.window = Window{Rational(-8), Rational(8)};
                bool ok = false;
                std::string used;
                for (auto reading : {EMinusReading::corrected(), EMinusReading::printed()}) {
                    cfg.currents.reading = reading;
                    int before = count;
                    ok = run_oracle_grid(cfg, rels, &count, false);
                    if (ok) {
                        used = reading.str();
                        break;
                    }
                    count = before;
                    detail("N=" + std::to_string(N) + " k=" + std::to_string(k) + " hbar=" + hbar.str() + " reading " +
                           reading.str() + " fails");
                }
                detail("N=" + std::to_string(N) + " k=" + std::to_string(k) + " hbar=" + hbar.str() + ": " +
                       (ok ? "pass with the " + used + " E^- reading" : std::string("FAIL")) + " (" +
                       std::to_string(seconds_since(t0)) + " s)");
                if (!ok) o.pass = false;
                else if (readings.find(used) == std::string::npos) readings += (readings.empty() ? "" : ",") + used;
            }

    // The printed E^- reading, recorded for comparison.
    OracleConfig printed;
    printed.N = 3;
    printed.currents.reading = EMinusReading::printed();
    int scratch = 0;
    bool printed_ok = run_oracle_grid(printed, {OracleRelation::Y5, OracleRelation::Y6}, &scratch, false);
    detail(std::string("printed E^- reading at N=3, k=1, hbar=1 on y5/y6: ") + (printed_ok ? "pass" : "fails"));

    // y8 needs |i-j| > 1, which first happens at N=4.
    OracleConfig n4;
    n4.N = 4;
    n4.bra_level = 2;
    for (auto [i, j] : {std::pair{1, 3}, std::pair{3, 1}})
        for (Sign s : {Sign::Plus, Sign::Minus}) {
            auto r = verify_relation_oracle(OracleRelation::Y8, i, j, s, n4);
            ++count;
            detail("N=4 " + oracle_line(r));
            if (!r.pass()) o.pass = false;
        }
    o.note << count << " relation instances, E^- reading " << readings;
    return o;
}

// 6: Serre relation, N=3, (1,2), k=1, hbar=1, window [-5,5].
Outcome criterion6() {
    Outcome o;
    std::size_t support[2] = {0, 0};
    for (int L : {2, 3}) {
        OracleConfig cfg;
        cfg.N = 3;
        cfg.L = L;
        cfg.window = Window{Rational(-5), Rational(5)};
        // E^- at L=3 takes hours; L=3 is extra coverage for E^+ only
        for (Sign s : {Sign::Plus, Sign::Minus}) {
            if (L == 3 && s == Sign::Minus) continue;
            auto t0 = Clock::now();
            auto r = verify_relation_oracle(OracleRelation::Y7, 1, 2, s, cfg);
            support[L - 2] += r.support;
            detail("L=" + std::to_string(L) + " " + oracle_line(r) + " (" + std::to_string(seconds_since(t0)) + " s)");
            if (!r.pass()) o.pass = false;
        }
    }
    o.note << "support " << support[0] << " at L=2, " << support[1] << " at L=3";
    return o;
}

// 7: the q-affine relations map onto the Yangian ones.
Outcome criterion7() {
    Outcome o;
    int mapped = 0;
    for (int q = 1; q <= 8; ++q) {
        auto r = correspond_relation(q);
        if (r.pass()) ++mapped;
        else {
            o.pass = false;
            std::cout << r.str();
        }
    }
    // the two distinguished cases, read off the reports
    bool delta = false, inv_hbar = false, two = false;
    const auto r5 = correspond_relation(5), r8 = correspond_relation(8);
    for (const auto& f : r5.variants.at(0).factors) {
        if (f.trig == "delta(z^{-1} w g)" && f.matched)
            delta = f.linearized == "delta(" + (shifted("u", -1) - shifted("v", 1)).str() + ")";
        if (f.trig == "q - q^{-1}" && f.matched) inv_hbar = f.linearized == "h";
    }
    for (const auto& f : r8.variants.at(0).factors)
        if (f.trig == "q + q^{-1}") two = f.linearized == "leading 2";
    if (!(delta && inv_hbar && two)) o.pass = false;
    o.note << mapped << "/8 mapped; delta at u-v=hc/2 " << (delta ? "yes" : "no") << ", prefactor 1/h "
           << (inv_hbar ? "yes" : "no") << ", Serre coefficient 2 " << (two ? "yes" : "no");
    return o;
}

// 8: oracle series against the specialized symbolic exchange identity.
Outcome criterion8() {
    Outcome o;
    int count = 0;
    for (int N : {2, 3})
        for (int k : {1, 2})
            for (Rational hbar : {Rational(1), Rational(1, 3)}) {
                OracleConfig cfg;
                cfg.N = N;
                cfg.k = Rational(k);
                cfg.hbar = hbar;
                for (auto rel : {OracleRelation::Y2, OracleRelation::Y3})
                    for (int i = 1; i < N; ++i)
                        for (int j = 1; j < N; ++j)
                            for (Sign s : {Sign::Plus, Sign::Minus}) {
                                if (rel == OracleRelation::Y2 && s == Sign::Minus) continue;
                                auto kets = relation_sample(rel, i, j, s, cfg);
                                auto r = cross_engine_check(rel, i, j, s, kets, cfg);
                                ++count;
                                if (!r.pass()) {
                                    o.pass = false;
                                    detail("N=" + std::to_string(N) + " k=" + std::to_string(k) + " hbar=" +
                                           hbar.str() + " " + oracle_line(r));
                                }
                            }
            }
    o.note << count << " relation instances";
    return o;
}

// 9: screening obstruction; no bundled candidate is a solution.
Outcome criterion9() {
    Outcome o;
    int candidates = 0;
    for (int N : {2, 3, 4}) {
        AlgebraData d = build_algebra_data(N);
        const ShiftScalar half_kg(Rational(d.g, 2), Rational(1, 2));
        for (int i = 1; i < N; ++i) {
            auto r = check_screening_candidate(i, FieldCombo(FieldAtom::plus(BosonSymbol::a(i, N), half_kg)), d);
            // one side residual exactly 1, the other nontrivial
            bool one_side = r.plus_side_solved() != r.minus_side_solved();
            if (!one_side) {
                o.pass = false;
                detail("N=" + std::to_string(N) + " i=" + std::to_string(i) + ": plus-half candidate is not one-sided");
            }
        }
        for (const auto& c : bundled_candidates(d)) {
            ++candidates;
            if (check_screening_candidate(c.i, c.combo, d, c.variant).success()) {
                o.pass = false;
                detail("N=" + std::to_string(N) + " candidate " + c.name + " claims success");
            }
        }
    }
    o.note << candidates << " bundled candidates rejected";
    return o;
}

}  // namespace

// With arguments, runs only the listed criteria, e.g. `acceptance 7 9`.
int main(int argc, char** argv) {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"OPE lemmas", criterion1},         {"exchange factors independent of the a^ build", criterion2},
        {"linear relations y1-y4", criterion3}, {"N=2 reduction", criterion4},
        {"oracle relations y1-y6, y8", criterion5}, {"Serre relation y7", criterion6},
        {"q-affine correspondence", criterion7}, {"cross-engine equality y2/y3", criterion8},
        {"screening obstruction", criterion9}};
    std::set<std::size_t> only;
    for (int a = 1; a < argc; ++a) only.insert(static_cast<std::size_t>(std::atoi(argv[a])));
    int failed = 0, ran = 0;
    for (std::size_t n = 0; n < criteria.size(); ++n) {
        if (!only.empty() && !only.count(n + 1)) continue;
        ++ran;
        std::cout << "criterion " << n + 1 << ": " << criteria[n].first << "\n" << std::flush;
        Outcome o;
        try {
            o = criteria[n].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.note << "exception: " << e.what();
        }
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << n + 1 << " (" << criteria[n].first
                  << "): " << o.note.str() << "\n"
                  << std::flush;
        failed += !o.pass;
    }
    std::cout << (ran - failed) << "/" << ran << " criteria pass\n";
    return failed == 0 ? 0 : 1;
}
