#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "orbitlab/dimlat.hpp"

using namespace orbitlab;

namespace {

std::vector<FactorType> all_factors() {
    return {FactorType::ii_1(),   FactorType::i_fin(4), FactorType::i_inf(0),
            FactorType::i_inf(2), FactorType::ii_inf(), FactorType::iii()};
}

// Random valid class in the factor, kept small enough that triple sums stay
// inside the identity for the finite factors.
DimValue random_value(std::mt19937_64& rng, const FactorType& f) {
    auto pick = [&](long long n) { return (long long)(rng() % (std::uint64_t)n); };
    switch (f.tag) {
        case FactorTag::II_1: return DimValue::trace(f, Rational(pick(5), 16));
        case FactorTag::II_inf:
            return pick(4) == 0 ? DimValue::infinite(f)
                                : DimValue::trace(f, Rational(pick(40), 8));
        case FactorTag::I_fin: return DimValue::finite_card(f, pick(2));
        case FactorTag::I_inf:
            return pick(2) == 0 ? DimValue::finite_card(f, pick(6))
                                : DimValue::aleph(f, pick(f.param + 1));
        case FactorTag::III:
            return pick(2) == 0 ? DimValue::zero(f) : DimValue::infinite(f);
    }
    return DimValue::zero(f);
}

}  // namespace

TEST_CASE("rational arithmetic basics") {
    CHECK(Rational(1, 2) + Rational(1, 4) == Rational(3, 4));
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(1, 3) * Rational(3, 5) == Rational(1, 5));
    CHECK(Rational(7, 8).is_dyadic());
    CHECK(!Rational(1, 3).is_dyadic());
    CHECK(Rational(3, 8).dyadic_level() == 3);
    CHECK(Rational(-1, 2) < Rational(0));
    CHECK_THROWS_AS(Rational(1, 0), RationalOverflowError);
    CHECK_THROWS_AS(Rational(1, 3).dyadic_level(), InvariantViolationError);
}

TEST_CASE("addition follows trace and cardinal arithmetic") {
    FactorType ii1 = FactorType::ii_1();
    CHECK(dim_add(DimValue::trace(ii1, Rational(1, 2)), DimValue::trace(ii1, Rational(1, 4))) ==
          DimValue::trace(ii1, Rational(3, 4)));
    CHECK_THROWS_AS(
        dim_add(DimValue::trace(ii1, Rational(3, 4)), DimValue::trace(ii1, Rational(1, 2))),
        OverflowError);

    FactorType i1 = FactorType::i_inf(1);
    CHECK(dim_add(DimValue::finite_card(i1, 7), DimValue::aleph(i1, 0)) ==
          DimValue::aleph(i1, 0));
    CHECK(dim_add(DimValue::aleph(i1, 0), DimValue::aleph(i1, 1)) == DimValue::aleph(i1, 1));

    FactorType iinf = FactorType::ii_inf();
    CHECK(dim_add(DimValue::trace(iinf, Rational(5)), DimValue::infinite(iinf)) ==
          DimValue::infinite(iinf));

    CHECK_THROWS_AS(dim_add(DimValue::trace(ii1, Rational(1, 2)),
                            DimValue::trace(iinf, Rational(1, 2))),
                    FactorMismatchError);
}

TEST_CASE("order examples") {
    FactorType iinf = FactorType::ii_inf();
    CHECK(dim_leq(DimValue::trace(iinf, Rational(3, 2)), DimValue::infinite(iinf)));
    FactorType i2 = FactorType::i_inf(2);
    CHECK(!dim_leq(DimValue::aleph(i2, 1), DimValue::aleph(i2, 0)));
    FactorType iii = FactorType::iii();
    CHECK(dim_leq(DimValue::zero(iii), DimValue::infinite(iii)));
}

TEST_CASE("meet and join are min and max") {
    FactorType ii1 = FactorType::ii_1();
    auto [m, j] = dim_meet_join(DimValue::trace(ii1, Rational(1, 3)),
                                DimValue::trace(ii1, Rational(1, 2)));
    CHECK(m == DimValue::trace(ii1, Rational(1, 3)));
    CHECK(j == DimValue::trace(ii1, Rational(1, 2)));

    FactorType i1 = FactorType::i_inf(1);
    auto [m2, j2] = dim_meet_join(DimValue::finite_card(i1, 5), DimValue::aleph(i1, 1));
    CHECK(m2 == DimValue::finite_card(i1, 5));
    CHECK(j2 == DimValue::aleph(i1, 1));

    FactorType iii = FactorType::iii();
    auto [m3, j3] = dim_meet_join(DimValue::infinite(iii), DimValue::infinite(iii));
    CHECK(m3 == DimValue::infinite(iii));
    CHECK(j3 == DimValue::infinite(iii));
}

TEST_CASE("closure membership across factor types") {
    FactorType iinf = FactorType::ii_inf();
    CHECK(closure_member(DimValue::trace(iinf, Rational(3, 2)),
                         DimValue::trace(iinf, Rational(2))));
    FactorType i1 = FactorType::i_inf(1);
    CHECK(closure_member(DimValue::aleph(i1, 1), DimValue::aleph(i1, 0)));
    FactorType ii1 = FactorType::ii_1();
    CHECK(!closure_member(DimValue::trace(ii1, Rational(1, 3)),
                          DimValue::trace(ii1, Rational(1, 2))));
}

TEST_CASE("cruder cap") {
    FactorType i2 = FactorType::i_inf(2);
    CHECK(cruder_value(DimValue::aleph(i2, 2)) == DimValue::aleph(i2, 0));
    CHECK(cruder_value(DimValue::finite_card(i2, 4)) == DimValue::finite_card(i2, 4));
    FactorType iinf = FactorType::ii_inf();
    CHECK(cruder_value(DimValue::trace(iinf, Rational(5, 2))) ==
          DimValue::trace(iinf, Rational(5, 2)));
    FactorType i0 = FactorType::i_inf(0);
    CHECK(cruder_value(DimValue::aleph(i0, 0)) == DimValue::aleph(i0, 0));
}

TEST_CASE("projection orbit closures with complements") {
    FactorType i0 = FactorType::i_inf(0);
    ProjClassPair both_inf(DimValue::aleph(i0, 0), DimValue::aleph(i0, 0));
    ProjClassPair small(DimValue::finite_card(i0, 3), DimValue::aleph(i0, 0));
    CHECK(projection_orbit_closure(both_inf, small));
    ProjClassPair p2(DimValue::finite_card(i0, 2), DimValue::aleph(i0, 0));
    CHECK(!projection_orbit_closure(p2, small));
    CHECK(projection_orbit_closure(small, p2));

    FactorType ii1 = FactorType::ii_1();
    ProjClassPair half(DimValue::trace(ii1, Rational(1, 2)),
                       DimValue::trace(ii1, Rational(1, 2)));
    CHECK(projection_orbit_closure(half, half));

    // Complement class forced by the identity-sum invariant.
    CHECK_THROWS_AS(ProjClassPair(DimValue::trace(ii1, Rational(1, 2)),
                                  DimValue::trace(ii1, Rational(1, 4))),
                    InvariantViolationError);
}

TEST_CASE("algebraic laws on random values") {
    std::mt19937_64 rng(42);
    for (const FactorType& f : all_factors()) {
        for (int i = 0; i < 10000; ++i) {
            DimValue a = random_value(rng, f), b = random_value(rng, f),
                     c = random_value(rng, f);
            if (f.tag == FactorTag::II_1) {
                // Keep sums inside the identity.
                if (Rational(1) < a.trace_value() + b.trace_value() + c.trace_value()) continue;
            }
            CHECK(dim_add(a, b) == dim_add(b, a));
            CHECK(dim_add(dim_add(a, b), c) == dim_add(a, dim_add(b, c)));
            if (dim_leq(a, b) && b.is_infinite_class()) CHECK(dim_add(a, b) == b);

            // Total order: exactly one of <, ==, >.
            int rels = (dim_lt(a, b) ? 1 : 0) + (a == b ? 1 : 0) + (dim_lt(b, a) ? 1 : 0);
            CHECK(rels == 1);

            auto [mt, jn] = dim_meet_join(a, b);
            CHECK(dim_leq(mt, a));
            CHECK(dim_leq(mt, b));
            CHECK(dim_leq(a, jn));
            CHECK(dim_leq(b, jn));
            auto [mt2, jn2] = dim_meet_join(b, a);
            CHECK(mt == mt2);
            CHECK(jn == jn2);

            // Cruder cap is idempotent and monotone.
            CHECK(cruder_value(cruder_value(a)) == cruder_value(a));
            if (dim_leq(a, b)) CHECK(dim_leq(cruder_value(a), cruder_value(b)));
            if (f.sigma_finite()) CHECK(cruder_value(a) == a);

            // Closure membership is reflexive and transitive; symmetric in
            // finite factors.
            CHECK(closure_member(a, a));
            if (closure_member(a, b) && closure_member(b, c)) CHECK(closure_member(a, c));
            if (f.is_finite()) CHECK(closure_member(a, b) == closure_member(b, a));
        }
    }
}
