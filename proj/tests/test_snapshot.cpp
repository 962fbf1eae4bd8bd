#include "doctest.h"

#include <cstdio>

#include "test_util.hpp"
#include "wns/snapshot.hpp"

using namespace wns;
using namespace wns::test;

TEST_CASE("snapshot round trip preserves fields bit-for-bit") {
    Grid3 g(16);
    VectorField v = band_project(random_divfree_field(g, 42));
    const char* path = "/tmp/wns_test_snapshot.wns";
    save_field(path, v, SnapshotFlags{true, true, false}, 1.25);

    SnapshotFlags fl;
    double t = 0;
    VectorField w = load_vector_field(path, &fl, &t);
    CHECK(fl.mean_zero);
    CHECK(fl.divergence_free);
    CHECK(t == 1.25);
    CHECK(w.grid().n == 16);
    // band-limited field: r2c + c2r round trip is exact up to last-bit
    // rounding of the backward normalization
    VectorField d = w;
    d -= v;
    CHECK(lp_norm(d, kInf) <= 1e-15 * std::max(1.0, lp_norm(v, kInf)));
    std::remove(path);
}

TEST_CASE("snapshot rejects corrupt magic") {
    const char* path = "/tmp/wns_test_bad.wns";
    FILE* f = fopen(path, "wb");
    fwrite("NOPE", 1, 4, f);
    fclose(f);
    CHECK_THROWS_AS((void)load_vector_field(path), IoError);
    std::remove(path);
}

TEST_CASE("tensor snapshot round trip") {
    Grid3 g(8);
    VectorField a = random_field(g, 1), b = random_field(g, 2);
    SymTensorField t = traceless_tensor_product(a, b);
    t = spectral_filter(t, FilterKind::LeqF, g.n / 2.0);  // band-limit
    const char* path = "/tmp/wns_test_tensor.wns";
    save_field(path, t, SnapshotFlags{false, false, true}, 0.0);
    SymTensorField r = load_tensor_field(path);
    r -= t;
    CHECK(lp_norm(r, kInf) <= 1e-14 * std::max(1.0, lp_norm(t, kInf)));
    std::remove(path);
}
