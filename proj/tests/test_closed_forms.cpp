#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "rootgeo/closed_forms.hpp"
#include "support.hpp"

using namespace rootgeo;

namespace {
RecurrenceParams params_1211() {
    return {Rational(1), Rational(2), Rational(1), Rational(1)};
}
RecurrenceParams params_1111() {
    return {Rational(1), Rational(1), Rational(1), Rational(1)};
}
RecurrenceParams params_onset() {
    return {Rational(10), Rational(1), Rational(2), Rational(239, 1000)};
}
RecurrenceParams params_1112() {
    return {Rational(1), Rational(1), Rational(1), Rational(2)};
}
}  // namespace

TEST_CASE("critical quantities for (1,2,1,1)") {
    CriticalPoints cp = characteristic_data(params_1211());
    CHECK(cp.x_A == Rational(-2));
    CHECK(cp.x_B == Rational(-1));
    CHECK(cp.delta_delta == Rational(2));
    CHECK(cp.delta_g == Rational(9));
    REQUIRE(cp.x_delta_minus);
    CHECK(*cp.x_delta_minus == QuadExt(Rational(-4), Rational(-2), Rational(2)));
    CHECK(*cp.x_delta_plus == QuadExt(Rational(-4), Rational(2), Rational(2)));
    REQUIRE(cp.x_g_minus);
    CHECK(cp.x_g_minus->rational() == Rational(-1, 3));  // a = 1 branch
    CHECK(*cp.x_g_minus == *cp.x_g_plus);
    REQUIRE(cp.u);
    REQUIRE(cp.v);
    CHECK(*cp.u == *cp.x_delta_minus);
    CHECK(cp.v->rational() == Rational(-1, 3));
}

TEST_CASE("critical quantities for the equal regime (1,1,1,1)") {
    CriticalPoints cp = characteristic_data(params_1111());
    CHECK(cp.x_A == Rational(-1));
    CHECK(cp.x_B == Rational(-1));
    CHECK(cp.delta_delta == Rational(1));
    REQUIRE(cp.x_delta_plus);
    CHECK(cp.x_delta_plus->rational() == Rational(-1));  // x_delta^+ = x_A here
    CHECK(cp.x_delta_minus->rational() == Rational(-5));
    CHECK(cp.u->rational() == Rational(-5));
    CHECK(cp.v->rational() == Rational(-1, 2));
}

TEST_CASE("zero of h exists exactly when a != 2") {
    CriticalPoints cp = characteristic_data(params_1211());
    REQUIRE(cp.x_h);
    CHECK(*cp.x_h == Rational(2));  // b/(2-a) with a = 1, b = 2
    CriticalPoints flat =
        characteristic_data(RecurrenceParams(Rational(2), Rational(1), Rational(1), Rational(1)));
    CHECK(!flat.x_h);  // h is the constant -b
    CHECK(poly_h(RecurrenceParams(Rational(2), Rational(1), Rational(1), Rational(1))).degree() ==
          0);
}

TEST_CASE("h at the Delta zeros matches its closed form") {
    std::mt19937_64 rng(2077);
    for (int trial = 0; trial < 40; ++trial) {
        RecurrenceParams p = testsupport::rand_params(rng);
        CriticalPoints cp = characteristic_data(p);
        if (!cp.x_delta_minus) continue;
        QuadExt root = QuadExt::sqrt(cp.delta_delta);
        Rational half_a2 = p.a * p.a / Rational(2);
        QuadExt plus = ((p.a - Rational(2)) * (QuadExt(p.c) - root) - QuadExt(p.a * p.b)) /
                       QuadExt(half_a2);
        QuadExt minus = ((p.a - Rational(2)) * (QuadExt(p.c) + root) - QuadExt(p.a * p.b)) /
                        QuadExt(half_a2);
        CHECK(*cp.h_at_xd_plus == plus);
        CHECK(*cp.h_at_xd_minus == minus);
    }
}

TEST_CASE("exact identities at the critical points") {
    std::mt19937_64 rng(2078);
    RatPoly g_poly, h_poly;
    for (int trial = 0; trial < 60; ++trial) {
        RecurrenceParams p = testsupport::rand_params(rng);
        CriticalPoints cp = characteristic_data(p);
        if (!cp.x_delta_minus) continue;
        g_poly = poly_g(p);
        // g(x_delta^-+) = h(x_delta^-+)^2 / 4
        for (Sign s : {Sign::minus, Sign::plus}) {
            const QuadExt& x = s == Sign::minus ? *cp.x_delta_minus : *cp.x_delta_plus;
            const QuadExt& h = s == Sign::minus ? *cp.h_at_xd_minus : *cp.h_at_xd_plus;
            CHECK(poly_eval(g_poly, x) == h * h / QuadExt(Rational(4)));
        }
        // h(x_delta^-) = 0 iff delta_delta = delta_g (possible only for a > 2)
        CHECK((cp.h_at_xd_minus->sign() == 0) == (cp.delta_delta == cp.delta_g));
        if (p.a <= Rational(2)) {
            CHECK(cp.h_at_xd_minus->sign() < 0);
            CHECK(cp.h_at_xd_plus->sign() < 0);
        }
    }
    // a fixed boundary witness: (3,1,2,1) has delta_delta = delta_g = 1
    RecurrenceParams bd(Rational(3), Rational(1), Rational(2), Rational(1));
    CriticalPoints cp = characteristic_data(bd);
    CHECK(cp.delta_delta == Rational(1));
    CHECK(cp.delta_g == Rational(1));
    CHECK(cp.h_at_xd_minus->sign() == 0);
    CHECK(cp.x_delta_minus->rational() == Rational(-1));
}

TEST_CASE("orderings of the comparison points in the real-rooted regimes") {
    std::mt19937_64 rng(2079);
    for (int trial = 0; trial < 30; ++trial) {
        bool strict = trial % 2 == 0;
        RecurrenceParams p = testsupport::rand_params_real_rooted(rng, strict);
        CriticalPoints cp = characteristic_data(p);
        CHECK(cp.delta_delta.sign() > 0);
        CHECK(cp.delta_g.sign() > 0);
        QuadExt xa{cp.x_A};
        CHECK(*cp.x_delta_minus < xa);
        CHECK(*cp.x_delta_plus < QuadExt(Rational(0)));
        REQUIRE(cp.u);
        REQUIRE(cp.v);
        if (strict) {
            CHECK(*cp.u <= *cp.x_delta_minus);
            CHECK(xa < *cp.x_delta_plus);
            CHECK(*cp.x_delta_plus < *cp.v);
        } else {
            CHECK(*cp.u < xa);
            CHECK(*cp.x_delta_plus == xa);
            CHECK(xa < *cp.v);
        }
        CHECK(*cp.v < QuadExt(Rational(0)));
    }
}

TEST_CASE("family classification") {
    CHECK(classify_family(params_1211()).tag == FamilyTag::real_rooted_strict);
    CHECK(classify_family(params_1111()).tag == FamilyTag::real_rooted_equal);
    FamilyClass onset = classify_family(params_onset());
    CHECK(onset.tag == FamilyTag::nonreal_guaranteed_real_zero);
    REQUIRE(onset.threshold_N);
    CHECK(*onset.threshold_N == 5);
    CHECK(onset.guarantee == GuaranteeKind::two_zeros_outside);
    CHECK(classify_family(params_1112()).tag == FamilyTag::nonreal_no_guarantee);
}

TEST_CASE("critical exponents for (10,1,2,239/1000)") {
    CriticalPoints cp = characteristic_data(params_onset());
    CHECK(cp.delta_delta == Rational(1, 10));
    CHECK(cp.delta_g == Rational(99, 250));
    REQUIRE(cp.n_plus);
    REQUIRE(cp.n_minus);
    CHECK(cp.n_plus->to_double() == doctest::Approx(4.852).epsilon(1e-3));
    CHECK(cp.n_minus->to_double() == doctest::Approx(2.715).epsilon(1e-3));
    // difference identity: n^+ - n^- = 8 b sqrt(dd) / (a^2 h(x_d^-) h(x_d^+))
    QuadExt diff = *cp.n_plus - *cp.n_minus;
    QuadExt rhs = QuadExt(Rational(8)) * QuadExt::sqrt(cp.delta_delta) /
                  (QuadExt(Rational(100)) * *cp.h_at_xd_minus * *cp.h_at_xd_plus);
    CHECK(diff == rhs);
}

TEST_CASE("limit sets per regime") {
    LimitSetDescriptor a1 = limit_set(params_1211());
    REQUIRE(a1.interval);
    CHECK(a1.interval->first == QuadExt(Rational(-4), Rational(-2), Rational(2)));
    CHECK(a1.interval->second == QuadExt(Rational(-4), Rational(2), Rational(2)));
    CHECK(a1.case_tag == LimitCase::a_at_most_1);
    REQUIRE(a1.isolated_points.size() == 1);
    CHECK(a1.isolated_points[0].rational() == Rational(-1, 3));
    REQUIRE(a1.always_nonisolated.size() == 3);
    CHECK(a1.always_nonisolated[0].rational() == Rational(-2));

    LimitSetDescriptor mid =
        limit_set(RecurrenceParams(Rational(3, 2), Rational(2), Rational(1), Rational(1)));
    CHECK(mid.case_tag == LimitCase::a_1_to_2_or_dd_le_dg);
    REQUIRE(mid.isolated_points.size() == 1);
    CriticalPoints mid_cp =
        characteristic_data(RecurrenceParams(Rational(3, 2), Rational(2), Rational(1), Rational(1)));
    CHECK(mid.isolated_points[0] == *mid_cp.x_g_plus);

    // a > 2 with delta_delta > delta_g: both zeros of g are isolated
    RecurrenceParams wide(Rational(3), Rational(1), Rational(4), Rational(1));
    LimitSetDescriptor two = limit_set(wide);
    CHECK(two.case_tag == LimitCase::a_gt_2_and_dd_gt_dg);
    CHECK(two.isolated_points.size() == 2);
    CriticalPoints wide_cp = characteristic_data(wide);
    CHECK(*wide_cp.u == *wide_cp.x_g_minus);  // u switches to x_g^- past a = 2
    CHECK(two.isolated_points[0] < two.isolated_points[1]);

    // boundary delta_delta = delta_g with ad < bc: x_g^- merges into the interval
    RecurrenceParams boundary(Rational(3), Rational(2), Rational(5, 2), Rational(1));
    CriticalPoints bcp = characteristic_data(boundary);
    CHECK(bcp.delta_delta == bcp.delta_g);
    LimitSetDescriptor bl = limit_set(boundary);
    CHECK(bl.case_tag == LimitCase::a_1_to_2_or_dd_le_dg);
    REQUIRE(bl.isolated_points.size() == 1);
    CHECK(bl.isolated_points[0] == *bcp.x_g_plus);
    CHECK(*bcp.x_g_minus == *bcp.x_delta_minus);

    // ad > bc: no full description, only the anchor points
    LimitSetDescriptor none = limit_set(params_1112());
    CHECK(!none.interval);
    CHECK(!none.case_tag);
    REQUIRE(none.always_nonisolated.size() == 3);
    CHECK(none.always_nonisolated[0].rational() == Rational(-1));
    CHECK(none.always_nonisolated[1].rational() == Rational(-3));  // double zero of Delta
    CHECK(none.always_nonisolated[2].rational() == Rational(-3));
}

TEST_CASE("closed values at the zeros of g") {
    CHECK(closed_value_at_xg(params_1211(), Sign::minus, 2, true).rational() == Rational(1, 9));
    std::mt19937_64 rng(2080);
    RecurrenceParams any = testsupport::rand_params(rng);
    if (characteristic_data(any).x_g_minus)
        CHECK(closed_value_at_xg(any, Sign::plus, 0).rational() == Rational(1));
    CHECK(closed_value_at_xg(params_1111(), Sign::minus, 3, true).rational() == Rational(-1, 8));
    // delta_g < 0: the quantity does not exist
    CHECK_THROWS_AS(
        closed_value_at_xg(RecurrenceParams(Rational(3), Rational(1), Rational(1), Rational(5)),
                           Sign::minus, 2),
        Undefined);
}

TEST_CASE("closed values at the zeros of Delta") {
    CriticalPoints cp = characteristic_data(params_1211());
    CHECK(closed_value_at_xdelta(params_1211(), Sign::plus, 1, true) == *cp.x_delta_plus);
    CHECK(closed_value_at_xdelta(params_1211(), Sign::minus, 1, true) == *cp.x_delta_minus);
    CHECK(closed_value_at_xdelta(params_1111(), Sign::plus, 2, true).sign() == 0);
    QuadExt w2 = closed_value_at_xdelta(params_1211(), Sign::plus, 2, true);
    CHECK(w2 == QuadExt(Rational(13), Rational(-10), Rational(2)));
    CHECK_THROWS_AS(closed_value_at_xdelta(params_1211(), Sign::plus, 0), std::invalid_argument);
    CHECK_THROWS_AS(
        closed_value_at_xdelta(RecurrenceParams(Rational(3), Rational(1), Rational(1), Rational(5)),
                               Sign::plus, 2),
        Undefined);
}

TEST_CASE("closed values agree with direct evaluation across regimes") {
    std::mt19937_64 rng(2081);
    int checked = 0;
    for (int trial = 0; trial < 12; ++trial) {
        RecurrenceParams p = trial % 3 == 2 ? testsupport::rand_params(rng)
                                            : testsupport::rand_params_real_rooted(rng, trial % 2);
        CriticalPoints cp = characteristic_data(p);
        for (unsigned n = 1; n <= 25; ++n) {
            if (cp.x_g_minus) {
                closed_value_at_xg(p, Sign::minus, n, true);
                closed_value_at_xg(p, Sign::plus, n, true);
                ++checked;
            }
            if (cp.x_delta_minus) {
                closed_value_at_xdelta(p, Sign::minus, n, true);
                closed_value_at_xdelta(p, Sign::plus, n, true);
                ++checked;
            }
        }
    }
    CHECK(checked > 100);  // the verify flag throws on any mismatch
}

TEST_CASE("sign of W_n at x_A follows the three-way table") {
    CHECK(sign_at_xA(params_1211(), 2, true) == -1);
    for (unsigned n = 2; n <= 10; ++n) CHECK(sign_at_xA(params_1111(), n, true) == 0);
    CHECK(sign_at_xA(params_1112(), 3, true) == -1);
    CHECK(sign_at_xA(params_1112(), 0) == 1);
    CHECK(sign_at_xA(params_1112(), 1) == -1);

    std::mt19937_64 rng(2082);
    for (int trial = 0; trial < 9; ++trial) {
        RecurrenceParams p = trial % 3 == 0 ? testsupport::rand_params_real_rooted(rng, true)
                             : trial % 3 == 1
                                 ? testsupport::rand_params_real_rooted(rng, false)
                                 : testsupport::rand_params_gt(rng);
        for (unsigned n = 0; n <= 50; ++n) sign_at_xA(p, n, true);  // throws on mismatch
    }
}

TEST_CASE("sign tables at the Delta zeros match evaluation") {
    std::mt19937_64 rng(2083);
    for (int trial = 0; trial < 12; ++trial) {
        RecurrenceParams p = trial % 2 == 0 ? testsupport::rand_params_real_rooted(rng, trial % 4 == 0)
                                            : testsupport::rand_params_gt(rng);
        CriticalPoints cp = characteristic_data(p);
        if (!cp.x_delta_minus) continue;
        WSequence ws(p);
        for (unsigned n = 0; n <= 25; ++n) {
            CHECK(predicted_sign_at_xdelta(p, Sign::minus, n) ==
                  poly_eval(ws.at(n), *cp.x_delta_minus).sign());
            if (p.regime() > 0)
                CHECK(predicted_sign_at_xdelta(p, Sign::plus, n) ==
                      poly_eval(ws.at(n), *cp.x_delta_plus).sign());
        }
        // the zero of g on the minus side keeps alternating sign
        if (cp.x_g_minus)
            for (unsigned n = 0; n <= 25; ++n) {
                int s = poly_eval(ws.at(n), *cp.x_g_minus).sign();
                CHECK(s == (n % 2 == 0 ? 1 : -1));
            }
    }
    CHECK_THROWS_AS(predicted_sign_at_xdelta(params_1211(), Sign::plus, 3), WrongRegime);
}

TEST_CASE("guaranteed-family sampling produces both guarantee kinds") {
    std::mt19937_64 rng(2084);
    RecurrenceParams p42 = testsupport::rand_params_guaranteed(rng, GuaranteeKind::two_zeros_outside);
    FamilyClass c42 = classify_family(p42);
    CHECK(c42.guarantee == GuaranteeKind::two_zeros_outside);
    CHECK(*c42.threshold_N >= 1);

    RecurrenceParams p43 = testsupport::rand_params_guaranteed(rng, GuaranteeKind::zero_between);
    FamilyClass c43 = classify_family(p43);
    CHECK(c43.guarantee == GuaranteeKind::zero_between);
    CHECK(*c43.threshold_N >= 1);
}
