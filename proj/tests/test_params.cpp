#include "doctest.h"

#include "wns/params.hpp"

using namespace wns;

TEST_CASE("paper-regime parameters pass every ledger line") {
    ParamSet p;
    // alpha b must be a multiple of 8 and b a multiple of 56; "a large
    // enough" is astronomically large, so the ladder runs in log space
    p.b = 11200;
    p.alpha = 1.0 / 1400.0;
    p.beta = p.alpha / (19.0 * double(p.b) * p.b);
    p.log_a = 3.0e8;
    p.regime = ParamSet::Regime::Paper;
    p.m0 = 1.0;
    EnergyProfile prof;
    prof.c0 = 4.5;
    prof.c1 = 0.0;
    auto lines = validate_params(p, &prof);
    for (const auto& l : lines) {
        CAPTURE(l.name);
        CHECK(l.pass);
    }
}

TEST_CASE("desk parameters record failures without aborting") {
    ParamSet p;  // a=2, b=7, alpha=1/8, beta=0.01
    EnergyProfile prof;
    auto lines = validate_params(p, &prof);
    CHECK(!all_pass(lines));
    bool found_b = false;
    for (const auto& l : lines)
        if (l.name == "b in 56 N") { found_b = true; CHECK(!l.pass); }
    CHECK(found_b);
}

TEST_CASE("delta_1 = 1 for any (a, b, beta)") {
    for (int a : {2, 3, 5})
        for (double beta : {0.01, 0.1}) {
            ParamSet p;
            p.a = a;
            p.beta = beta;
            CHECK(p.delta(1) == doctest::Approx(1.0).epsilon(1e-14));
        }
}

TEST_CASE("ladder monotonicity and window endpoints") {
    ParamSet p;
    CHECK(p.lambda(1) == doctest::Approx(128.0));
    CHECK(p.lambda(2) > p.lambda(1));
    CHECK(p.delta(2) < p.delta(1));
    CHECK(p.t_q(0) == doctest::Approx(-2.0));
    CHECK(p.t_q(1) == doctest::Approx(-1.0));  // delta_1 = 1
}
