#pragma once

#include <cmath>
#include <random>

#include "wns/field.hpp"
#include "wns/norms.hpp"

namespace wns::test {

/// Random smooth-ish real field: iid normal coefficients per mode inside
/// the band, decayed by |k|^{-decay}. Deterministic for a given seed.
inline VectorField random_field(const Grid3& g, unsigned seed, double decay = 2.0,
                                bool mean_zero = true) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd(0.0, 1.0);
    VectorField out(g);
    const int n = g.n, h = n / 2;
    // build in physical space from a modest set of modes to avoid a full
    // spectral pass: sum of random plane waves
    const int kmax = std::min(h - 1, 6);
    for (int c = 0; c < 3; ++c) {
        for (int kx = -kmax; kx <= kmax; ++kx)
            for (int ky = -kmax; ky <= kmax; ++ky)
                for (int kz = -kmax; kz <= kmax; ++kz) {
                    if (kx == 0 && ky == 0 && kz == 0 && mean_zero) continue;
                    if (kx < 0 || (kx == 0 && (ky < 0 || (ky == 0 && kz < 0)))) continue;
                    const double k2 = double(kx) * kx + double(ky) * ky + double(kz) * kz;
                    const double amp = (k2 == 0.0) ? 1.0 : std::pow(k2, -decay / 2.0);
                    const double ar = amp * nd(rng), ai = amp * nd(rng);
                    for (int iz = 0; iz < n; ++iz)
                        for (int iy = 0; iy < n; ++iy)
                            for (int ix = 0; ix < n; ++ix) {
                                const double ph = (kx * ix + ky * iy + kz * iz) * (kTwoPi / n);
                                out.data(c)[g.idx(ix, iy, iz)] += ar * std::cos(ph) - ai * std::sin(ph);
                            }
                }
    }
    return out;
}

inline VectorField random_divfree_field(const Grid3& g, unsigned seed, double decay = 2.0) {
    return leray_project(random_field(g, seed, decay));
}

inline double rel_err(double a, double b) {
    return std::abs(a - b) / std::max(1e-300, std::abs(b));
}

}  // namespace wns::test
