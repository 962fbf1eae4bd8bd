#pragma once

#include <array>
#include <cmath>

#include "wns/errors.hpp"
#include "wns/rational.hpp"

namespace wns {

using Mat3 = std::array<std::array<double, 3>, 3>;
using Vec6 = std::array<double, 6>;  // xx, yy, zz, xy, xz, yz

inline Vec6 sym_to_vec6(const Mat3& m) {
    return {m[0][0], m[1][1], m[2][2], m[0][1], m[0][2], m[1][2]};
}

inline double frobenius_dist_to_id(const Mat3& r) {
    double s = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const double d = r[i][j] - (i == j ? 1.0 : 0.0);
            s += d * d;
        }
    return std::sqrt(s);
}

/// Orthonormal rational frame (xi, A, xi x A) attached to one direction.
struct Frame {
    RatVec3 xi, a, b;
};

/// Linear coefficient map of the rank-one decomposition: for each direction,
/// gamma_sq(R) is a fixed linear functional of the six components of R.
class GammaCoeffs {
public:
    /// Exact map built from xi (x) xi of the fixed direction set.
    static GammaCoeffs from_direction_set();
    /// Adapted map built from measured generator matrices (double solve);
    /// used when jet second moments are taken from the grid instead of the
    /// ideal xi (x) xi.
    static GammaCoeffs from_generators(const std::array<Vec6, 6>& gen);

    std::array<double, 6> gamma_sq(const Mat3& r) const;
    double gamma_sq_one(int dir, const Vec6& rv) const;
    /// Frobenius norms of the representing matrices of the six functionals.
    std::array<double, 6> functional_norms() const;

    const std::array<std::array<double, 6>, 6>& rows() const { return rows_; }

private:
    std::array<std::array<double, 6>, 6> rows_{};  // rows_[dir][component]
};

/// The fixed rational direction set with frames, the integer n_star, the
/// verified positivity radius and the derivative constant of the lemma.
class DirectionSet {
public:
    static const DirectionSet& get();

    int size() const { return 6; }
    const Frame& frame(int i) const { return frames_[i]; }
    /// Frame lookup by direction; throws UnknownDirection.
    const Frame& frame_of(const RatVec3& xi) const;

    int n_star() const { return n_star_; }
    double radius_eff() const { return radius_eff_; }
    double m_const() const { return m_const_; }
    int m_const_derivatives() const { return n_derivatives_; }

    const GammaCoeffs& gamma() const { return gamma_; }

    /// gamma_xi values (sqrt of the linear form); requires
    /// ||R - Id||_F <= radius_eff, else OutOfBall.
    std::array<double, 6> gamma_coeffs(const Mat3& r) const;
    /// the linear gamma^2 values, valid for any symmetric R.
    std::array<double, 6> gamma_sq(const Mat3& r) const { return gamma_.gamma_sq(r); }

    /// direction as doubles
    std::array<double, 3> xi(int i) const;
    std::array<double, 3> axis_a(int i) const;
    std::array<double, 3> axis_b(int i) const;

    /// exact determinant of the 6x6 generator matrix (must be nonzero)
    Rat generator_determinant() const { return det_; }

private:
    DirectionSet();
    std::array<Frame, 6> frames_;
    int n_star_ = 0;
    double radius_eff_ = 0.0;
    double m_const_ = 0.0;
    int n_derivatives_ = 4;
    GammaCoeffs gamma_;
    Rat det_;
};

}  // namespace wns
