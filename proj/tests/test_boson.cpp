#include "doctest.h"
#include "yangian/boson.hpp"
#include "yangian/errors.hpp"

using namespace yangian;

TEST_CASE("boson: mode commutators") {
    AlgebraData d2 = build_algebra_data(2);
    auto a1 = BosonSymbol::a(1, 2);
    auto b12 = BosonSymbol::b(1, 2, 2);
    CHECK(mode_commutator(a1, 2, a1, -2, d2) == RatFunc(2) * (RatFunc::k() + RatFunc(2)));
    CHECK(mode_commutator(b12, 3, b12, -3, d2) == RatFunc(-3));
    CHECK(mode_commutator(a1, 2, b12, -2, d2).is_zero());
    CHECK(mode_commutator(a1, 2, a1, -1, d2).is_zero());
    // antisymmetry under (X,n) <-> (Y,m)
    CHECK(mode_commutator(a1, -2, a1, 2, d2) == -mode_commutator(a1, 2, a1, -2, d2));
}

TEST_CASE("boson: zero mode pairing") {
    AlgebraData d3 = build_algebra_data(3);
    CHECK(zero_mode_pairing(BosonSymbol::a(1, 3), BosonSymbol::a(2, 3), d3) ==
          -(RatFunc::k() + RatFunc(3)) / RatFunc(2));
    CHECK(zero_mode_pairing(BosonSymbol::c(1, 3, 3), BosonSymbol::c(1, 3, 3), d3) == RatFunc(1));
    CHECK(zero_mode_pairing(BosonSymbol::b(1, 2, 3), BosonSymbol::c(1, 2, 3), d3).is_zero());
    CHECK(zero_mode_pairing(BosonSymbol::b(1, 2, 3), BosonSymbol::b(1, 2, 3), d3) == RatFunc(-1));
}

TEST_CASE("boson: symbol ranges") {
    CHECK_THROWS_AS(BosonSymbol::b(2, 2, 3), IndexOutOfRange);
    CHECK_THROWS_AS(BosonSymbol::c(2, 1, 3), IndexOutOfRange);
    CHECK_THROWS_AS(BosonSymbol::a(3, 3), IndexOutOfRange);
    CHECK(all_bosons(3).size() == 8);
}

TEST_CASE("boson: hatted b and c") {
    auto b12 = BosonSymbol::b(1, 2, 2);
    auto c12 = BosonSymbol::c(1, 2, 2);
    FieldCombo bp = hatted_bc(b12, Sign::Plus);
    FieldCombo expected = FieldCombo(FieldAtom::plus(b12, Rational(-1, 2)), -1) +
                          FieldCombo(FieldAtom::plus(b12, Rational(1, 2)), 1);
    CHECK(bp == expected);
    FieldCombo cm = hatted_bc(c12, Sign::Minus);
    CHECK(cm == FieldCombo(FieldAtom::minus(c12, Rational(-1, 2)), 1) +
                    FieldCombo(FieldAtom::minus(c12, Rational(1, 2)), -1));
    CHECK(hatted_bc(b12, Sign::Minus).q_coefficient(b12).is_zero());
    CHECK(bp.p_coefficient(b12).is_zero());
    CHECK_THROWS_AS(hatted_bc(BosonSymbol::a(1, 2), Sign::Plus), WrongKind);
}

TEST_CASE("boson: hatted a, rank one") {
    AlgebraData d = build_algebra_data(2);
    auto a1 = BosonSymbol::a(1, 2);
    RatFunc inv = RatFunc(1) / (RatFunc::k() + RatFunc(2));
    CHECK(hatted_a(1, Sign::Plus, AVariant::Standard, d) ==
          FieldCombo(FieldAtom::plus(a1, {}), 1) + FieldCombo(FieldAtom::plus(a1, ShiftScalar(2, 1)), -1));
    CHECK(hatted_a(1, Sign::Minus, AVariant::Standard, d) ==
          FieldCombo(FieldAtom::minus(a1, 1), inv) + FieldCombo(FieldAtom::minus(a1, -1), -inv));
    CHECK_THROWS_AS(hatted_a(2, Sign::Plus, AVariant::Standard, d), IndexOutOfRange);
}

TEST_CASE("boson: hatted a touches every a^j at N=3") {
    AlgebraData d = build_algebra_data(3);
    auto syms = hatted_a(1, Sign::Minus, AVariant::Standard, d).symbols();
    CHECK(syms.count(BosonSymbol::a(1, 3)) == 1);
    CHECK(syms.count(BosonSymbol::a(2, 3)) == 1);
    for (auto v : {AVariant::Standard, AVariant::Alternate})
        for (auto s : {Sign::Plus, Sign::Minus})
            for (int i = 1; i <= 2; ++i) {
                FieldCombo h = hatted_a(i, s, v, d);
                for (const auto& sym : h.symbols()) {
                    CHECK(h.q_coefficient(sym).is_zero());
                    CHECK(h.p_coefficient(sym).is_zero());
                }
            }
}

TEST_CASE("boson: (b+c) full fields") {
    AlgebraData d = build_algebra_data(2);
    FieldCombo f = bc_full(1, 2, {}, d);
    CHECK(f.size() == 2);
    CHECK(f.terms().at(FieldAtom::full(BosonSymbol::b(1, 2, 2), {}, {})) == RatFunc(1));
    CHECK(f.terms().at(FieldAtom::full(BosonSymbol::c(1, 2, 2), {}, {})) == RatFunc(1));
    CHECK_THROWS_AS(bc_full(2, 2, {}, d), IndexOutOfRange);
}

TEST_CASE("boson: canonical form is insertion-order independent") {
    auto b12 = BosonSymbol::b(1, 2, 3);
    auto a2 = BosonSymbol::a(2, 3);
    std::vector<std::pair<FieldAtom, RatFunc>> items = {
        {FieldAtom::plus(b12, 1), RatFunc(2)},
        {FieldAtom::minus(a2, ShiftScalar(0, 1)), RatFunc(1) / RatFunc::k()},
        {FieldAtom::full(b12, 0, 1), RatFunc(-1)},
        {FieldAtom::plus(b12, 1), RatFunc(-2)},
        {FieldAtom::minus(a2, Rational(1, 2)), RatFunc(3)},
    };
    FieldCombo fwd, rev;
    for (const auto& [a, c] : items) fwd.add(a, c);
    for (auto it = items.rbegin(); it != items.rend(); ++it) rev.add(it->first, it->second);
    CHECK(fwd == rev);
    CHECK(fwd.size() == 3);
    CHECK(fwd.halves().halves() == fwd.halves());
    CHECK(FieldCombo(FieldAtom::full(b12, 0, 0)).equivalent(FieldCombo(FieldAtom::minus(b12, 0)) +
                                                            FieldCombo(FieldAtom::plus(b12, 0))));
}
