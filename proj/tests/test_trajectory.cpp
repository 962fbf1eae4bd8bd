#include "doctest.h"

#include <cmath>

#include "test_util.hpp"
#include "wns/trajectory.hpp"

using namespace wns;
using namespace wns::test;

namespace {

TimeTrajectory<VectorField> constant_traj(const Grid3& g, const VectorField& v, double t_lo,
                                          double dt, int nsamp) {
    TimeTrajectory<VectorField> tr(t_lo, dt);
    for (int i = 0; i < nsamp; ++i) tr.push_back(v);
    return tr;
}

}  // namespace

TEST_CASE("causal weights have unit mass and honor ceil(ell/dt)") {
    auto w = causal_time_weights(0.05, 0.01);
    CHECK(w.size() == 5);
    double s = 0.0;
    for (double x : w) s += x;
    CHECK(s == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(causal_time_weights(0.041, 0.01).size() == 5);  // rounded up
}

TEST_CASE("mollify: constant trajectory is unchanged") {
    Grid3 g(16);
    VectorField v = random_field(g, 1);
    auto tr = constant_traj(g, v, -0.1, 0.01, 30);
    auto out = mollify_onesided(tr, 0.03);
    CHECK(out.t_lo() == doctest::Approx(-0.07));
    for (std::size_t i = 0; i < out.size(); ++i) {
        VectorField d = out.at(i);
        // space mollifier keeps a constant-in-time field only up to the
        // space smoothing; compare against the space-mollified reference
        SpaceMollifier m(0.03);
        VectorField ref(g);
        m.apply(v, ref);
        d -= ref;
        CHECK(lp_norm(d, kInf) <= 1e-12 * std::max(1.0, lp_norm(v, kInf)));
    }
}

TEST_CASE("mollify: strict causality across a step") {
    Grid3 g(8);
    VectorField a = random_field(g, 2), b = random_field(g, 3);
    const double dt = 0.01, ell = 0.04;
    const int nstep = 40;
    // step at sample 25: value a before, b from 25 on
    TimeTrajectory<VectorField> tr(0.0, dt);
    for (int i = 0; i < nstep; ++i) tr.push_back(i < 25 ? a : b);
    auto out = mollify_onesided(tr, ell);
    SpaceMollifier m(ell);
    VectorField ref(g);
    m.apply(a, ref);
    // output at sample index j uses inputs j-1..j-4 only; the first
    // affected output is at input index 26 (j-1 = 25)
    for (std::size_t j = 0; j < out.size(); ++j) {
        const double t = out.time(j);
        if (t < 25 * dt + dt - 1e-12) {
            VectorField d = out.at(j);
            d -= ref;
            CHECK(lp_norm(d, kInf) <= 1e-13 * std::max(1.0, lp_norm(a, kInf)));
        }
    }
}

TEST_CASE("mollify error bound: ||v - v_ell|| <= C ell ||v||_C1, C <= 5") {
    Grid3 g(24);
    VectorField v = random_field(g, 4, 2.5);
    const double dt = 0.002, ell = 0.02;
    auto tr = constant_traj(g, v, 0.0, dt, 60);
    auto out = mollify_onesided(tr, ell);
    VectorField d = out.at(out.size() - 1);
    d -= band_project(v);
    const double c1 = cn_norm(v, 1);
    CHECK(lp_norm(d, kInf) <= 5.0 * ell * c1);
}

TEST_CASE("holder seminorm of a constant trajectory vanishes") {
    Grid3 g(8);
    VectorField v = random_field(g, 5);
    auto tr = constant_traj(g, v, 0.0, 0.1, 8);
    std::function<double(const VectorField&)> base = [](const VectorField& f) {
        return lp_norm(f, 2.0);
    };
    std::function<double(const VectorField&, const VectorField&)> diff =
        [](const VectorField& f, const VectorField& h) {
            VectorField d = f;
            d -= h;
            return lp_norm(d, 2.0);
        };
    const double norm = holder_time_norm(tr, 0.4, base, diff);
    CHECK(norm == doctest::Approx(lp_norm(v, 2.0)).epsilon(1e-12));
}

TEST_CASE("mollify rejects too-short history") {
    Grid3 g(8);
    VectorField v = random_field(g, 6);
    auto tr = constant_traj(g, v, 0.0, 0.01, 3);
    CHECK_THROWS_AS((void)mollify_onesided(tr, 0.05), WindowTooShort);
}
