#include "doctest.h"
#include "yangian/errors.hpp"
#include "yangian/fock.hpp"
#include "yangian/series.hpp"

using namespace yangian;

namespace {
OracleConfig small_window(int lo = -6) {
    OracleConfig c;
    c.window.lo = lo;
    c.window.hi = -lo;
    return c;
}
Exponents ex(long a, long b) { return {Rational(a), Rational(b)}; }
}  // namespace

TEST_CASE("GenSeries: accumulation drops zeros") {
    GenSeries s({"u", "v"});
    s.add_term(ex(1, 0), Rational(2));
    s.add_term(ex(1, 0), Rational(-2));
    CHECK(s.empty());
    s.add_term(ex(0, 1), Rational(1, 3));
    CHECK(s.coefficient(ex(0, 1)) == Rational(1, 3));
    CHECK(s.coefficient(ex(5, 5)) == Rational(0));
}

TEST_CASE("GenSeries: rules keep the strongest threshold") {
    GenSeries s({"u", "v"});
    s.add_lower_bound(0, Rational(-3));
    s.add_lower_bound(0, Rational(-5));
    s.add_lower_bound(0, Rational(-1));
    REQUIRE(s.rules().size() == 1);
    CHECK(s.rules()[0].threshold == Rational(-1));
    CHECK(s.exact_at(ex(-1, -9)));
    CHECK_FALSE(s.exact_at(ex(-2, 0)));
}

TEST_CASE("GenSeries: product transports truncation conservatively") {
    auto vars = std::vector<std::string>{"u", "v"};
    GenSeries a(vars);
    a.add_term(ex(-1, 0), Rational(1));
    a.add_term(ex(-2, 1), Rational(1));
    a.add_lower_bound(0, Rational(-2));
    GenSeries p = GenSeries::linear(vars, {Rational(1), Rational(-1)}, Rational(0));  // u - v
    GenSeries r = p * a;
    CHECK(r.coefficient(ex(0, 0)) == Rational(1));
    CHECK(r.coefficient(ex(-1, 1)) == Rational(0));  // -1 + 1
    CHECK(r.coefficient(ex(-2, 2)) == Rational(-1));
    CHECK(r.exact_at(ex(-1, 0)));
    CHECK_FALSE(r.exact_at(ex(-2, 0)));
}

TEST_CASE("with_vars reorders exponents and rules") {
    GenSeries s({"v"});
    s.add_term({Rational(3)}, Rational(7));
    s.add_lower_bound(0, Rational(-4));
    GenSeries t = s.with_vars({"u", "v"});
    CHECK(t.coefficient(ex(0, 3)) == Rational(7));
    CHECK(t.exact_at(ex(-100, -4)));
    CHECK_FALSE(t.exact_at(ex(0, -5)));
}

TEST_CASE("delta_series: p=0 lies on the antidiagonal with coefficient 1") {
    OracleConfig cfg = small_window();
    GenSeries d = delta_series(ShiftScalar(0), cfg);
    std::size_t seen = 0;
    for (const auto& [e, c] : d.coeffs()) {
        if (!cfg.window.contains(e) || !d.exact_at(e)) continue;
        CHECK(e[0] + e[1] == Rational(-1));
        CHECK(c == Rational(1));
        ++seen;
    }
    CHECK(seen == 12);  // e_u in [-6, 5] with e_v = -1 - e_u in the window
}

TEST_CASE("delta_series: (u - v - p hbar) annihilates the delta") {
    for (Rational p : {Rational(0), Rational(1, 2), Rational(-3)}) {
        for (Rational h : {Rational(1), Rational(1, 3)}) {
            OracleConfig cfg = small_window();
            cfg.hbar = h;
            GenSeries d = delta_series(ShiftScalar(p), cfg);
            GenSeries f = GenSeries::linear({"u", "v"}, {Rational(1), Rational(-1)}, -p * h) * d;
            auto r = residual(f, cfg.window);
            CHECK(r.zero());
            CHECK(exact_support(d, cfg.window) > 0);
        }
    }
}

TEST_CASE("delta_series: substitution property on monomials") {
    OracleConfig cfg = small_window();
    cfg.k = Rational(2);
    const ShiftScalar p = ShiftScalar::of_k(Rational(1, 2));
    const Rational c = p.eval(cfg.k) * cfg.hbar;
    GenSeries d = delta_series(p, cfg);
    std::vector<std::string> uv{"u", "v"};
    for (int m = 0; m <= 3; ++m) {
        GenSeries fu = GenSeries::monomial(uv, ex(m, 0), Rational(1));
        GenSeries fv(uv);  // (v + c)^m
        for (int j = 0; j <= m; ++j) fv.add_term(ex(0, j), binomial(Rational(m), j) * pow(c, m - j));
        auto r = residual(fu * d - fv * d, cfg.window);
        CHECK(r.zero());
        CHECK(r.exact_positions == 0);
    }
}

TEST_CASE("delta_times agrees with the explicit product") {
    OracleConfig cfg = small_window();
    const Rational c(3, 2);
    GenSeries f({"v"});
    f.add_term({Rational(2)}, Rational(5));
    f.add_term({Rational(-1)}, Rational(-1, 7));
    f.add_term({Rational(-3)}, Rational(2));
    GenSeries direct = delta_times(c, "u", f, -6, 6, Rational(-6));
    GenSeries viaprod = delta_series(c, "u", "v", -6, 6, -12) * f.with_vars({"u", "v"});
    GenSeries diff = direct - viaprod;
    CHECK(residual(diff, cfg.window).zero());
    CHECK(exact_support(direct, cfg.window) > 5);
}

TEST_CASE("region_difference: 1/(u-v) is the delta") {
    OracleConfig cfg = small_window();
    auto f = LinearFactorProduct::factor("u", "v", ShiftScalar(0), RatFunc(-1));
    GenSeries r = region_difference(f, "u", "v", cfg);
    std::size_t seen = 0;
    for (int n = -6; n <= 5; ++n) {
        Exponents e = ex(-n - 1, n);
        if (!r.exact_at(e)) continue;
        CHECK(r.coefficient(e) == Rational(1));
        ++seen;
    }
    CHECK(seen > 4);
    for (const auto& [e, c] : r.coeffs())
        if (cfg.window.contains(e) && r.exact_at(e)) CHECK(e[0] + e[1] == Rational(-1));
}

TEST_CASE("region_difference: polynomials give zero") {
    OracleConfig cfg = small_window();
    cfg.k = Rational(5, 2);
    auto f = LinearFactorProduct::factor("u", "v", ShiftScalar(1, Rational(1, 4)), RatFunc(2)) *
             LinearFactorProduct::factor("u", "v", ShiftScalar(-1), RatFunc(1));
    GenSeries r = region_difference(f, "u", "v", cfg);
    CHECK(r.empty());
}

TEST_CASE("region_difference: shifted simple pole is the shifted delta") {
    OracleConfig cfg = small_window();
    cfg.hbar = Rational(1, 3);
    const ShiftScalar s(Rational(-2));
    auto f = LinearFactorProduct::factor("u", "v", s, RatFunc(-1));  // 1/(u - v - 2 hbar)
    GenSeries r = region_difference(f, "u", "v", cfg);
    GenSeries d = delta_series(ShiftScalar(2), cfg);
    GenSeries diff = r - d;
    CHECK(residual(diff, cfg.window).zero());
    CHECK(exact_support(r, cfg.window) > 4);
}
