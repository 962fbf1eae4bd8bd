#include "doctest.h"

#include <cmath>
#include <random>

#include "test_util.hpp"
#include "wns/jets.hpp"
#include "wns/norms.hpp"

using namespace wns;
using namespace wns::test;

TEST_CASE("profile normalizations: bump kind") {
    JetParams p = JetParams::ladder(128.0);
    JetQuadrature q{p};
    CHECK(q.mean_psi2() == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(q.mean_phi2() == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(std::abs(q.mean_psi()) <= 1e-10);
    CHECK(std::abs(q.mean_phi()) <= 1e-10);
}

TEST_CASE("profile normalizations: trig kind") {
    JetParams p = JetParams::custom(8.0, 0.25, 0.5, 16.0, Profiles::trig(3, 3));
    JetQuadrature q{p};
    CHECK(q.mean_psi2() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(q.mean_phi2() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(q.mean_psi()) <= 1e-12);
    CHECK(std::abs(q.mean_phi()) <= 1e-12);
}

TEST_CASE("ladder parameters at lambda = 128 and 2^14 (exact dyadics)") {
    JetParams p = JetParams::ladder(128.0);
    CHECK(p.r_par == doctest::Approx(1.0 / 16.0).epsilon(1e-14));
    CHECK(p.r_perp == doctest::Approx(1.0 / 64.0).epsilon(1e-14));
    CHECK(p.mu == doctest::Approx(512.0).epsilon(1e-13));
    CHECK(p.kappa == 2);
    CHECK(p.mu * p.r_perp / p.r_par == doctest::Approx(p.lambda).epsilon(1e-12));

    JetParams p2 = JetParams::ladder(16384.0);
    CHECK(p2.r_par == doctest::Approx(std::pow(2.0, -8)).epsilon(1e-13));
    CHECK(p2.r_perp == doctest::Approx(std::pow(2.0, -12)).epsilon(1e-13));
    CHECK(p2.kappa == 4);

    CHECK_THROWS_AS((void)JetParams::ladder(32.0), NonIntegerPeriod);
}

TEST_CASE("tube families have certified disjoint supports (bump)") {
    JetParams p = JetParams::ladder(128.0);
    CHECK(p.support_separation() > 0.0);

    // pointwise product of any two families vanishes
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ud(0.0, kTwoPi);
    for (int trial = 0; trial < 2000; ++trial) {
        const Vec3d x{ud(rng), ud(rng), ud(rng)};
        for (int d1 = 0; d1 < 6; ++d1)
            for (int d2 = d1 + 1; d2 < 6; ++d2) {
                const auto a = jet_point_eval(p, d1, 0.3, x);
                const auto b = jet_point_eval(p, d2, 0.3, x);
                const double na = std::abs(a.W[0]) + std::abs(a.W[1]) + std::abs(a.W[2]);
                const double nb = std::abs(b.W[0]) + std::abs(b.W[1]) + std::abs(b.W[2]);
                CHECK(na * nb == 0.0);
            }
    }
}

TEST_CASE("div(W + Wc) vanishes (analytic values, FD divergence)") {
    JetParams p = JetParams::ladder(128.0);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ud(0.0, kTwoPi);
    const double h = 1e-6;
    double worst = 0.0, scale = 0.0;
    for (int trial = 0; trial < 500; ++trial) {
        // bias points into the support of some tube: pick a random family and
        // a point near one of its axes
        Vec3d x{ud(rng), ud(rng), ud(rng)};
        const int d = trial % 6;
        double div = 0.0, mag = 0.0;
        for (int c = 0; c < 3; ++c) {
            Vec3d xp = x, xm = x;
            xp[c] += h;
            xm[c] -= h;
            const auto vp = jet_point_eval(p, d, 0.2, xp);
            const auto vm = jet_point_eval(p, d, 0.2, xm);
            div += (vp.W[c] + vp.Wc[c] - vm.W[c] - vm.Wc[c]) / (2.0 * h);
            const auto v0 = jet_point_eval(p, d, 0.2, x);
            mag = std::max(mag, std::abs(v0.W[c]) * p.lambda);
        }
        worst = std::max(worst, std::abs(div));
        scale = std::max(scale, mag);
    }
    // relative to the natural gradient scale lambda ||W||
    CHECK(worst <= 1e-5 * std::max(scale, 1.0));
}

TEST_CASE("exact sampling identities for trig jets on a grid") {
    // bandwidth fits the grid: every identity holds to roundoff
    Grid3 g(64);
    JetParams p = JetParams::custom(8.0, 0.25, 0.5, 16.0, Profiles::trig(2, 1));
    JetBasis basis(g, p);
    const double t = 0.17;

    for (int d = 0; d < 6; ++d) {
        auto s = basis.eval(d, t);
        VectorField wc = basis.eval_corrector(d, t);

        // curl curl V = W + Wc (band-limited, so spectral curl is exact)
        VectorField cc = curl_curl(s.V);
        VectorField rhs = s.W;
        rhs += wc;
        VectorField diff = cc;
        diff -= rhs;
        CHECK(lp_norm(diff, kInf) <= 1e-10 * std::max(1.0, lp_norm(rhs, kInf)));

        // div(W + Wc) = 0 spectrally
        CHECK(divergence_linf(rhs) <= 1e-10 * std::max(1.0, p.lambda * lp_norm(s.W, kInf)));

        // measured second moment is the exact continuum one
        CHECK(s.mean_psi2phi2 == doctest::Approx(1.0).epsilon(1e-12));

        // Psi = |W|^2 xi pointwise
        const auto xi = DirectionSet::get().xi(d);
        double worst = 0.0;
        for (std::size_t i = 0; i < s.W.size(); i += 97) {
            const double w2 = s.W.data(0)[i] * s.W.data(0)[i] + s.W.data(1)[i] * s.W.data(1)[i] +
                              s.W.data(2)[i] * s.W.data(2)[i];
            worst = std::max(worst, std::abs(s.Psi.data(0)[i] - xi[0] * w2));
        }
        CHECK(worst <= 1e-12 * std::max(1.0, lp_norm(s.Psi, kInf)));
    }
}

TEST_CASE("spectral support of W (x) W sits on the kappa lattice") {
    Grid3 g(64);
    JetParams p = JetParams::custom(8.0, 0.25, 0.5, 16.0, Profiles::trig(2, 1));
    JetBasis basis(g, p);
    auto s = basis.eval(0, 0.05);
    // scalar carrier psi^2 phi^2 == Psi component 0 / xi_0
    ScalarField carrier(g);
    const auto xi = DirectionSet::get().xi(0);
    for (std::size_t i = 0; i < carrier.size(); ++i) carrier[i] = s.Psi.data(0)[i] / xi[0];

    SpecBuf buf(g);
    to_spectral(carrier, buf.data());
    double offlattice = 0.0, total = 0.0;
    const cplx* spec = buf.data();
    for_each_mode(g, [&](int kx, int ky, int kz, std::size_t m) {
        const double a = std::abs(spec[m]);
        total += a;
        const bool on = (kx % p.kappa == 0) && (ky % p.kappa == 0) && (kz % p.kappa == 0);
        if (!on) offlattice += a;
    });
    CHECK(offlattice <= 1e-12 * total);

    // P_{>= kappa/2} of the mean-free part equals the mean-free part
    SymTensorField ww = sym_tensor_product(s.W, s.W);
    SymTensorField wwnz = spectral_filter(ww, FilterKind::Neq0);
    SymTensorField hi = spectral_filter(wwnz, FilterKind::GeqK, p.kappa / 2.0);
    hi -= wwnz;
    CHECK(lp_norm(hi, kInf) <= 1e-12 * std::max(1.0, lp_norm(ww, kInf)));
}

TEST_CASE("W (x) W mean equals xi (x) xi via factorized quadrature") {
    for (double lambda : {128.0, 16384.0}) {
        JetParams p = JetParams::ladder(lambda);
        JetQuadrature q{p};
        CHECK(q.ww_mean_scalar() == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("jet scaling ratios are lambda-independent within factor 2") {
    std::vector<JetParams> ps;
    ps.push_back(JetParams::ladder(128.0));
    ps.push_back(JetParams::ladder(16384.0));
    auto rows = check_jet_bounds(ps);
    CHECK(jet_bounds_worst_spread(rows) <= 2.0);
    CHECK(!jet_bounds_to_json(rows).empty());

    // ||W||_{L^2} itself is lambda-free: (2pi)^{3/2} by the normalizations
    for (const auto& r : rows)
        if (r.quantity == "W" && r.p == 2.0 && r.N == 0 && r.M == 0)
            CHECK(r.measured == doctest::Approx(std::pow(kTwoPi, 1.5)).epsilon(1e-6));
}

TEST_CASE("jets are mean-zero (factorized quadrature)") {
    JetParams p = JetParams::ladder(128.0);
    JetQuadrature q{p};
    // mean over T^3 of W and V factor through mean(psi) = 0
    CHECK(std::abs(q.mean_psi()) <= 1e-10);
}

TEST_CASE("grid coarser than the tube frequency is rejected unless allowed") {
    Grid3 g(64);
    JetParams strict = JetParams::ladder(128.0);
    CHECK_THROWS_AS((void)JetBasis(g, strict), UnderResolved);
    JetParams loose = JetParams::custom(128.0, 1.0 / 64, 1.0 / 16, 512.0, Profiles::bump(), true);
    JetBasis basis(g, loose);  // allowed
    auto s = basis.eval(0, 0.0);
    CHECK(s.W.grid().n == 64);
}
