#include "doctest.h"

#include <cmath>
#include <random>

#include "wns/geometry.hpp"

using namespace wns;

namespace {

Mat3 random_symmetric_near_id(std::mt19937_64& rng, double radius) {
    std::normal_distribution<double> nd;
    Mat3 e{};
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) e[i][j] = e[j][i] = nd(rng);
    double fr = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) fr += e[i][j] * e[i][j];
    fr = std::sqrt(fr);
    std::uniform_real_distribution<double> ud(0.0, radius);
    const double scale = ud(rng) / std::max(fr, 1e-300);
    Mat3 r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r[i][j] = (i == j ? 1.0 : 0.0) + scale * e[i][j];
    return r;
}

Mat3 reconstruct(const DirectionSet& ds, const std::array<double, 6>& gsq) {
    Mat3 out{};
    for (int d = 0; d < 6; ++d) {
        const auto x = ds.xi(d);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) out[i][j] += gsq[d] * x[i] * x[j];
    }
    return out;
}

double frob_diff(const Mat3& a, const Mat3& b) {
    double s = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s += (a[i][j] - b[i][j]) * (a[i][j] - b[i][j]);
    return std::sqrt(s);
}

}  // namespace

TEST_CASE("direction set: six exact unit rational directions") {
    const auto& ds = DirectionSet::get();
    CHECK(ds.size() == 6);
    for (int d = 0; d < 6; ++d) {
        const auto& f = ds.frame(d);
        CHECK(dot(f.xi, f.xi) == Rat(1));
        CHECK(dot(f.a, f.a) == Rat(1));
        CHECK(dot(f.xi, f.a).is_zero());
        // gram matrix of the frame is the identity, exactly
        CHECK(dot(f.b, f.b) == Rat(1));
        CHECK(dot(f.xi, f.b).is_zero());
        CHECK(dot(f.a, f.b).is_zero());
    }
}

TEST_CASE("n_star is 5 (verified exhaustively by the builder)") {
    CHECK(DirectionSet::get().n_star() == 5);
}

TEST_CASE("generator determinant nonzero (exact rational)") {
    CHECK(!DirectionSet::get().generator_determinant().is_zero());
}

TEST_CASE("cross product of the first frame is e3") {
    const auto& f = DirectionSet::get().frame(0);
    CHECK(f.b[0] == Rat(0));
    CHECK(f.b[1] == Rat(0));
    CHECK(f.b[2] == Rat(1));
}

TEST_CASE("gamma_sq(Id) = 1/2 for all directions") {
    const auto& ds = DirectionSet::get();
    Mat3 id{};
    for (int i = 0; i < 3; ++i) id[i][i] = 1.0;
    // trace identity pins the value: sum of gamma^2 = tr(Id) = 3 over six
    // equivalent directions, so each equals 1/2
    for (double v : ds.gamma_sq(id)) CHECK(v == doctest::Approx(0.5).epsilon(1e-13));
    for (double v : ds.gamma_coeffs(id)) CHECK(v == doctest::Approx(std::sqrt(0.5)).epsilon(1e-13));
}

TEST_CASE("reconstruction identity at radius 0.3, 1000 samples") {
    const auto& ds = DirectionSet::get();
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 1000; ++trial) {
        Mat3 r = random_symmetric_near_id(rng, 0.3);
        const auto gsq = ds.gamma_sq(r);
        CHECK(frob_diff(reconstruct(ds, gsq), r) <= 1e-10);
    }
}

TEST_CASE("shear perturbation moves only the paired in-plane directions") {
    const auto& ds = DirectionSet::get();
    Mat3 r{};
    for (int i = 0; i < 3; ++i) r[i][i] = 1.0;
    r[0][1] = r[1][0] = 0.01;
    const auto gsq = ds.gamma_sq(r);
    // directions 0 and 1 are the (3,+-4,0)/5 pair; their coefficients move
    // antisymmetrically, the others stay at 1/2
    CHECK(gsq[0] - 0.5 == doctest::Approx(-(gsq[1] - 0.5)).epsilon(1e-10));
    CHECK(std::abs(gsq[0] - 0.5) > 1e-4);
    for (int d = 2; d < 6; ++d) CHECK(gsq[d] == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("positivity certified on the effective ball; OutOfBall beyond") {
    const auto& ds = DirectionSet::get();
    CHECK(ds.radius_eff() > 0.0);
    CHECK(ds.radius_eff() <= 0.5);
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 10000; ++trial) {
        Mat3 r = random_symmetric_near_id(rng, ds.radius_eff());
        for (double v : ds.gamma_sq(r)) CHECK(v > 0.0);
    }
    Mat3 far{};
    for (int i = 0; i < 3; ++i) far[i][i] = 1.0;
    far[0][0] += 2.0 * ds.radius_eff() + 0.1;
    CHECK_THROWS_AS((void)ds.gamma_coeffs(far), OutOfBall);
}

TEST_CASE("frame lookup by direction") {
    const auto& ds = DirectionSet::get();
    RatVec3 xi{Rat(3, 5), Rat(4, 5), Rat(0)};
    const Frame& f = ds.frame_of(xi);
    CHECK(f.a[0] == Rat(-4, 5));
    RatVec3 bad{Rat(1), Rat(0), Rat(0)};
    CHECK_THROWS_AS((void)ds.frame_of(bad), UnknownDirection);
}

TEST_CASE("derivative constant reported positive and finite") {
    const auto& ds = DirectionSet::get();
    CHECK(ds.m_const() > 0.0);
    CHECK(std::isfinite(ds.m_const()));
    CHECK(ds.m_const_derivatives() == 4);
}

TEST_CASE("adapted map reproduces the exact one for ideal generators") {
    const auto& ds = DirectionSet::get();
    std::array<Vec6, 6> gen{};
    for (int d = 0; d < 6; ++d) {
        const auto x = ds.xi(d);
        Mat3 xx{};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) xx[i][j] = x[i] * x[j];
        gen[d] = sym_to_vec6(xx);
    }
    GammaCoeffs adapted = GammaCoeffs::from_generators(gen);
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        Mat3 r = random_symmetric_near_id(rng, 0.3);
        auto a = adapted.gamma_sq(r);
        auto b = ds.gamma_sq(r);
        for (int d = 0; d < 6; ++d) CHECK(a[d] == doctest::Approx(b[d]).epsilon(1e-12));
    }
}
