#include <set>

#include "doctest.h"
#include "yangian/errors.hpp"
#include "yangian/exchange.hpp"
#include "yangian/fock.hpp"

using namespace yangian;

namespace {
Exponents e1(long a) { return {Rational(a)}; }
Exponents e2(long a, long b) { return {Rational(a), Rational(b)}; }

// Coefficients of a and b agree wherever both are exact and in the window.
std::size_t agree(const GenSeries& a, const GenSeries& b, const Window& w) {
    std::size_t n = 0;
    std::set<Exponents> pos;
    for (const auto& [e, c] : a.coeffs()) pos.insert(e);
    for (const auto& [e, c] : b.coeffs()) pos.insert(e);
    for (const auto& e : pos) {
        if (!w.contains(e) || !a.exact_at(e) || !b.exact_at(e)) continue;
        CHECK(a.coefficient(e) == b.coefficient(e));
        ++n;
    }
    return n;
}
}  // namespace

TEST_CASE("FockState: level, excitation and ordering") {
    auto a1 = BosonSymbol::a(1, 3);
    FockState s = FockState::vacuum();
    s.excite(a1, 1, 2).excite(a1, 2);
    CHECK(s.level() == 4);
    CHECK(s.str() == "a1_{-1}^2 a1_{-2} |>");
    FockState t = FockState::vacuum({{a1, Rational(0)}});
    CHECK(t == FockState::vacuum());
    CHECK_THROWS_AS(s.excite(a1, 0), Error);
}

TEST_CASE("OracleConfig validation") {
    OracleConfig c;
    c.hbar = Rational(0);
    CHECK_THROWS(c.validate());
    c = OracleConfig{};
    c.L = 0;
    CHECK_THROWS(c.validate());
    c = OracleConfig{};
    c.k = Rational(-2);
    CHECK_THROWS_AS(c.validate(), Unsupported);
}

TEST_CASE("apply_vertex_term: exp(a1_-(u;0)) on the vacuum at L=2") {
    OracleConfig cfg;
    cfg.L = 2;
    auto a1 = BosonSymbol::a(1, 2);
    VertexTerm T{{}, FieldCombo(FieldAtom::minus(a1, 0))};
    StateSeries out = apply_vertex_term(T, FockState::vacuum(), cfg);
    // the zero mode q_a shifts p_a by (k+g) B_11 = k+2 = 3
    std::map<BosonSymbol, Rational> m{{a1, Rational(3)}};
    FockState vac = FockState::vacuum(m);
    FockState one = FockState(vac).excite(a1, 1);
    FockState sq = FockState(vac).excite(a1, 1, 2);
    FockState two = FockState(vac).excite(a1, 2);
    REQUIRE(out.size() == 4);
    CHECK(out.at(vac).coeffs() == GenSeries::monomial({"u"}, e1(0), Rational(1)).coeffs());
    CHECK(out.at(one).coeffs() == GenSeries::monomial({"u"}, e1(1), Rational(1)).coeffs());
    CHECK(out.at(sq).coeffs() == GenSeries::monomial({"u"}, e1(2), Rational(1, 2)).coeffs());
    CHECK(out.at(two).coeffs() == GenSeries::monomial({"u"}, e1(2), Rational(1, 2)).coeffs());
}

TEST_CASE("apply_vertex_term: e^{q_b} lowers the p_b eigenvalue by one") {
    OracleConfig cfg;
    cfg.L = 1;
    auto b12 = BosonSymbol::b(1, 2, 2);
    VertexTerm T{{}, FieldCombo(FieldAtom::minus(b12, 0))};
    FockState ket = FockState::vacuum({{b12, Rational(2, 3)}});
    StateSeries out = apply_vertex_term(T, ket, cfg);
    for (const auto& [s, g] : out) CHECK(s.momenta.at(b12) == Rational(-1, 3));
}

TEST_CASE("apply_vertex_term: hatted b plus half fixes the vacuum") {
    OracleConfig cfg;
    auto b12 = BosonSymbol::b(1, 2, 2);
    VertexTerm T{{}, hatted_bc(b12, Sign::Plus)};
    StateSeries out = apply_vertex_term(T, FockState::vacuum(), cfg);
    REQUIRE(out.size() == 1);
    CHECK(out.begin()->first == FockState::vacuum());
    CHECK(out.begin()->second.coeffs() == GenSeries::constant({"u"}, Rational(1)).coeffs());
}

TEST_CASE("apply_vertex_term: kets beyond the cutoff are rejected") {
    OracleConfig cfg;
    cfg.L = 1;
    auto a1 = BosonSymbol::a(1, 2);
    VertexTerm T{{}, FieldCombo(FieldAtom::minus(a1, 0))};
    CHECK_THROWS_AS(apply_vertex_term(T, FockState::vacuum().excite(a1, 1, 2), cfg), TruncationExceeded);
}

TEST_CASE("matrix_element: <0|H^+_1(u)|0> = 1 at N=2") {
    OracleConfig cfg;
    AlgebraData d = build_algebra_data(2);
    Word w{{build_H(1, Sign::Plus, d), "u", {}}};
    MatrixElement me = matrix_element(w, FockState::vacuum(), FockState::vacuum(), cfg, {"u"});
    CHECK(me.momentum_allowed);
    CHECK(me.series.coeffs() == GenSeries::constant({"u"}, Rational(1)).coeffs());
    CHECK(exact_support(me.series, cfg.window) == 1);
}

TEST_CASE("matrix_element: E^+_1 leaves the vacuum sector") {
    OracleConfig cfg;
    AlgebraData d = build_algebra_data(2);
    Word w{{build_Eplus(1, d), "u", {}}};
    MatrixElement zero = matrix_element(w, FockState::vacuum(), FockState::vacuum(), cfg, {"u"});
    CHECK_FALSE(zero.momentum_allowed);
    CHECK(zero.series.empty());
    auto sectors = reachable_momenta(w, FockState::vacuum(), cfg);
    REQUIRE(sectors.size() == 1);
    FockState bra = FockState::vacuum(sectors[0]);
    bra.excite(BosonSymbol::c(1, 2, 2), 1);
    MatrixElement me = matrix_element(w, bra, FockState::vacuum(), cfg, {"u"});
    CHECK(me.momentum_allowed);
    CHECK_FALSE(me.series.empty());
}

TEST_CASE("momentum conservation: every output sits in a reachable sector") {
    OracleConfig cfg;
    cfg.N = 3;
    AlgebraData d = build_algebra_data(3);
    Word w{{build_Eminus(1, d), "u", {}}, {build_Eplus(2, d), "v", {}}};
    FockState ket = FockState::vacuum().excite(BosonSymbol::b(1, 2, 3), 1);
    auto sectors = reachable_momenta(w, ket, cfg);
    std::set<std::map<BosonSymbol, Rational>> allowed(sectors.begin(), sectors.end());
    StateSeries out = evaluate_word(w, ket, cfg, {"u", "v"});
    CHECK_FALSE(out.empty());
    for (const auto& [s, g] : out) CHECK(allowed.count(s.momenta) == 1);
}

TEST_CASE("H^+_1(u) H^-_1(v) on the vacuum is the expanded exchange factor") {
    OracleConfig cfg;
    cfg.k = Rational(2);
    AlgebraData d = build_algebra_data(2);
    auto Hp = build_H(1, Sign::Plus, d), Hm = build_H(1, Sign::Minus, d);
    Word w{{Hp, "u", {}}, {Hm, "v", {}}};
    MatrixElement me = matrix_element(w, FockState::vacuum(), FockState::vacuum(), cfg, {"u", "v"});
    LinearFactorProduct ef = exchange_factor(Hp.terms[0], "u", Hm.terms[0], "v", d);
    GenSeries expected = expand_region(ef, "u", "v", cfg);
    CHECK(agree(me.series, expected, cfg.window) >= 3);
}

TEST_CASE("window monotonicity: larger L and window keep old coefficients") {
    AlgebraData d = build_algebra_data(2);
    OracleConfig small, big;
    small.L = 2;
    small.window = {Rational(-4), Rational(4)};
    big.L = 3;
    big.window = {Rational(-7), Rational(7)};
    Word w{{build_Eplus(1, d), "u", {}}, {build_Eminus(1, d), "v", {}}};
    FockState ket = FockState::vacuum().excite(BosonSymbol::a(1, 2), 1);
    StateSeries a = evaluate_word(w, ket, small, {"u", "v"});
    StateSeries b = evaluate_word(w, ket, big, {"u", "v"});
    std::size_t n = 0;
    for (const auto& [s, g] : a) {
        REQUIRE(b.count(s) == 1);
        n += agree(g, b.at(s), small.window);
    }
    CHECK(n >= 10);
}

TEST_CASE("state_sample: vacuum, excitations and momentum states") {
    OracleConfig cfg;
    AlgebraData d = build_algebra_data(2);
    auto E = build_Eplus(1, d);
    auto local = state_sample({&E}, cfg);
    auto generic = state_sample({&E}, cfg, MomentumSample::Generic);
    // vacuum + 3 per boson (b12, c12) + one (b,c) momentum state
    CHECK(local.size() == 8);
    CHECK(generic.size() == 9);
    CHECK(local.front() == FockState::vacuum());
    for (const auto& s : local) CHECK(s.level() <= 2);
}

TEST_CASE("oracle y1-y5 at N=2") {
    for (Rational h : {Rational(1), Rational(1, 3)}) {
        OracleConfig cfg;
        cfg.k = Rational(2);
        cfg.hbar = h;
        for (auto rel : {OracleRelation::Y1, OracleRelation::Y2, OracleRelation::Y3, OracleRelation::Y4, OracleRelation::Y5})
            for (Sign s : {Sign::Plus, Sign::Minus}) {
                OracleReport r = verify_relation_oracle(rel, 1, 1, s, cfg);
                INFO(r.relation << " " << sign_char(s) << " hbar=" << h);
                CHECK(r.pass());
                CHECK(r.support > 0);
            }
    }
}

TEST_CASE("oracle y6 at N=2, k=2: delta coefficients match H matrix elements") {
    OracleConfig cfg;
    cfg.k = Rational(2);
    OracleReport r = verify_relation_oracle(OracleRelation::Y6, 1, 1, Sign::Plus, cfg);
    CHECK(r.pass());
    CHECK(r.support > 50);
}

TEST_CASE("oracle y6 with i != j has no delta part") {
    OracleConfig cfg;
    cfg.N = 3;
    auto d = build_algebra_data(3);
    auto Ep = build_Eplus(1, d), Em = build_Eminus(2, d);
    auto kets = state_sample({&Ep, &Em}, cfg);
    kets.resize(6);
    OracleReport r = verify_relation_oracle(OracleRelation::Y6, 1, 2, Sign::Plus, kets, cfg);
    CHECK(r.pass());
}

TEST_CASE("oracle y8 at N=4, (1,3), vacuum") {
    OracleConfig cfg;
    cfg.N = 4;
    cfg.bra_level = 2;  // level <= 1 bras see only zeros on the vacuum
    for (Sign s : {Sign::Plus, Sign::Minus}) {
        OracleReport r = verify_relation_oracle(OracleRelation::Y8, 1, 3, s, {FockState::vacuum()}, cfg);
        CHECK(r.pass());
        CHECK_FALSE(r.vacuous);
    }
    OracleReport adj = verify_relation_oracle(OracleRelation::Y8, 1, 2, Sign::Plus, {FockState::vacuum()}, cfg);
    CHECK(adj.vacuous);
}

TEST_CASE("oracle detects a wrong relation") {
    // y5 at N=2 with the prefactor signs exchanged is false
    OracleConfig cfg;
    AlgebraData d = build_algebra_data(2);
    auto E = build_Eplus(1, d);
    std::vector<std::string> uv{"u", "v"};
    const Rational B = d.b(1, 1) * cfg.hbar;
    FockState ket = FockState::vacuum({{BosonSymbol::b(1, 2, 2), Rational(1, 2)}, {BosonSymbol::c(1, 2, 2), Rational(-1, 2)}});
    StateSeries lhs = evaluate_word({{E, "u", {}}, {E, "v", {}}}, ket, cfg, uv);
    StateSeries rhs = evaluate_word({{E, "v", {}}, {E, "u", {}}}, ket, cfg, uv);
    auto check = [&](const Rational& sl, const Rational& sr) {
        std::size_t bad = 0;
        for (const auto& [s, g] : lhs) {
            REQUIRE(rhs.count(s) == 1);
            GenSeries diff = GenSeries::linear(uv, {Rational(1), Rational(-1)}, sl) * g -
                             GenSeries::linear(uv, {Rational(1), Rational(-1)}, sr) * rhs.at(s);
            bad += residual(diff, cfg.window).nonzero;
        }
        return bad;
    };
    CHECK(check(-B, B) == 0);
    CHECK(check(B, -B) > 0);
}

TEST_CASE("(en) readings at N=3: corrected passes y6, printed does not") {
    OracleConfig cfg;
    cfg.N = 3;
    auto d = build_algebra_data(3);
    std::vector<FockState> kets{FockState::vacuum(), FockState::vacuum().excite(BosonSymbol::a(1, 3), 1)};
    OracleReport ok = verify_relation_oracle(OracleRelation::Y6, 1, 1, Sign::Plus, kets, cfg);
    CHECK(ok.pass());
    cfg.currents.reading = EMinusReading::printed();
    OracleReport bad = verify_relation_oracle(OracleRelation::Y6, 1, 1, Sign::Plus, kets, cfg);
    CHECK_FALSE(bad.pass());
    CHECK(bad.max_residual > Rational(0));
}

TEST_CASE("cross-engine: y2 and y3 agree with the specialized exchange identity") {
    OracleConfig cfg;
    cfg.k = Rational(1);
    AlgebraData d = build_algebra_data(2);
    auto H = build_H(1, Sign::Plus, d);
    auto E = build_Eplus(1, d);
    auto kets = state_sample({&H, &E}, cfg);
    CHECK(cross_engine_check(OracleRelation::Y2, 1, 1, Sign::Plus, kets, cfg).pass());
    CHECK(cross_engine_check(OracleRelation::Y3, 1, 1, Sign::Plus, kets, cfg).pass());
    CHECK(cross_engine_check(OracleRelation::Y3, 1, 1, Sign::Minus, kets, cfg).pass());
    CHECK_THROWS_AS(cross_engine_check(OracleRelation::Y5, 1, 1, Sign::Plus, kets, cfg), Unsupported);
}

TEST_CASE("a^ variants: equal matrix elements only on the a-vacuum sector") {
    OracleConfig cfg;
    cfg.N = 3;
    AlgebraData d = build_algebra_data(3);
    std::vector<CurrentExpr> cs;
    for (int i = 1; i < 3; ++i) {
        cs.push_back(build_H(i, Sign::Plus, d));
        cs.push_back(build_Eminus(i, d));
    }
    std::vector<const CurrentExpr*> p;
    for (const auto& c : cs) p.push_back(&c);
    auto kets = state_sample(p, cfg);
    OracleReport sector = oracle_variant_invariance(kets, cfg, true);
    CHECK(sector.pass());
    CHECK(sector.kets > 5);
    OracleReport all = oracle_variant_invariance(kets, cfg);
    CHECK_FALSE(all.pass());
}
