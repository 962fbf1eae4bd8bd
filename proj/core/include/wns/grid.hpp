#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>

namespace wns {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Uniform periodic grid on [0,2pi)^3 with n points per axis.
/// Spectral content is kept inside the band |k_i| <= n/2 - 1; Nyquist
/// planes are zeroed by every spectral operator so that real fields stay
/// Hermitian under repeated transforms.
struct Grid3 {
    int n = 0;
    // dealias cutoff as a rational fraction of n/2; products computed
    // through the dealiased API are truncated at |k| > fraction * (n/2).
    int dealias_num = 2;
    int dealias_den = 3;

    Grid3() = default;
    explicit Grid3(int n_, int num = 2, int den = 3)
        : n(n_), dealias_num(num), dealias_den(den) {
        if (n < 8 || n % 2 != 0) throw std::invalid_argument("Grid3: n must be even and >= 8");
        if (num <= 0 || den <= 0 || num > den) throw std::invalid_argument("Grid3: dealias fraction must lie in (0,1]");
    }

    std::size_t npoints() const { return std::size_t(n) * n * n; }
    // r2c layout: x is the contiguous, halved dimension.
    std::size_t nspec() const { return std::size_t(n) * n * (n / 2 + 1); }
    double spacing() const { return kTwoPi / n; }
    double cell_volume() const { double h = spacing(); return h * h * h; }
    double dealias_cutoff() const { return double(n) / 2.0 * dealias_num / dealias_den; }
    int band_limit() const { return n / 2 - 1; }

    /// Signed wavenumber for index i along a full axis.
    int wavenumber(int i) const { return (i <= n / 2) ? i : i - n; }

    bool operator==(const Grid3& o) const { return n == o.n; }
    bool operator!=(const Grid3& o) const { return n != o.n; }

    std::size_t idx(int ix, int iy, int iz) const {
        return std::size_t(ix) + std::size_t(n) * (std::size_t(iy) + std::size_t(n) * iz);
    }
};

}  // namespace wns
