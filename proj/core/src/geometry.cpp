#include "wns/geometry.hpp"

#include <cmath>

namespace wns {

namespace {

// Rank-one matrix components (xx,yy,zz,xy,xz,yz) of xi (x) xi, exact.
std::array<Rat, 6> rank_one_vec(const RatVec3& xi) {
    return {xi[0] * xi[0], xi[1] * xi[1], xi[2] * xi[2],
            xi[0] * xi[1], xi[0] * xi[2], xi[1] * xi[2]};
}

// Exact Gauss-Jordan inversion of a 6x6 rational matrix.
std::array<std::array<Rat, 6>, 6> invert6(std::array<std::array<Rat, 6>, 6> m, Rat* det_out) {
    std::array<std::array<Rat, 6>, 6> inv{};
    for (int i = 0; i < 6; ++i) inv[i][i] = Rat(1);
    Rat det(1);
    for (int col = 0; col < 6; ++col) {
        int piv = -1;
        for (int r = col; r < 6; ++r)
            if (!m[r][col].is_zero()) { piv = r; break; }
        if (piv < 0) throw Error("direction set generators are linearly dependent");
        if (piv != col) { std::swap(m[piv], m[col]); std::swap(inv[piv], inv[col]); det = -det; }
        const Rat p = m[col][col];
        det = det * p;
        for (int c = 0; c < 6; ++c) { m[col][c] = m[col][c] / p; inv[col][c] = inv[col][c] / p; }
        for (int r = 0; r < 6; ++r) {
            if (r == col || m[r][col].is_zero()) continue;
            const Rat f = m[r][col];
            for (int c = 0; c < 6; ++c) {
                m[r][c] = m[r][c] - f * m[col][c];
                inv[r][c] = inv[r][c] - f * inv[col][c];
            }
        }
    }
    if (det_out) *det_out = det;
    return inv;
}

const std::array<Frame, 6>& fixed_frames() {
    auto mk = [](std::int64_t x, std::int64_t y, std::int64_t z) {
        return RatVec3{Rat(x, 5), Rat(y, 5), Rat(z, 5)};
    };
    static const std::array<Frame, 6> frames = {
        Frame{mk(3, 4, 0), mk(-4, 3, 0), cross(mk(3, 4, 0), mk(-4, 3, 0))},
        Frame{mk(3, -4, 0), mk(4, 3, 0), cross(mk(3, -4, 0), mk(4, 3, 0))},
        Frame{mk(0, 3, 4), mk(0, -4, 3), cross(mk(0, 3, 4), mk(0, -4, 3))},
        Frame{mk(0, 3, -4), mk(0, 4, 3), cross(mk(0, 3, -4), mk(0, 4, 3))},
        Frame{mk(4, 0, 3), mk(3, 0, -4), cross(mk(4, 0, 3), mk(3, 0, -4))},
        Frame{mk(-4, 0, 3), mk(3, 0, 4), cross(mk(-4, 0, 3), mk(3, 0, 4))},
    };
    return frames;
}

// Double-precision Gauss elimination with partial pivoting.
std::array<std::array<double, 6>, 6> invert6d(std::array<std::array<double, 6>, 6> m) {
    std::array<std::array<double, 6>, 6> inv{};
    for (int i = 0; i < 6; ++i) inv[i][i] = 1.0;
    for (int col = 0; col < 6; ++col) {
        int piv = col;
        for (int r = col + 1; r < 6; ++r)
            if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
        if (std::abs(m[piv][col]) < 1e-14) throw Error("generator matrix nearly singular");
        if (piv != col) { std::swap(m[piv], m[col]); std::swap(inv[piv], inv[col]); }
        const double p = m[col][col];
        for (int c = 0; c < 6; ++c) { m[col][c] /= p; inv[col][c] /= p; }
        for (int r = 0; r < 6; ++r) {
            if (r == col) continue;
            const double f = m[r][col];
            if (f == 0.0) continue;
            for (int c = 0; c < 6; ++c) {
                m[r][c] -= f * m[col][c];
                inv[r][c] -= f * inv[col][c];
            }
        }
    }
    return inv;
}

}  // namespace

GammaCoeffs GammaCoeffs::from_direction_set() {
    std::array<std::array<Rat, 6>, 6> m{};
    const auto& fr = fixed_frames();
    // column xi holds vec6(xi (x) xi); solve M gamma_sq = vec6(R)
    for (int xi = 0; xi < 6; ++xi) {
        const auto col = rank_one_vec(fr[xi].xi);
        for (int c = 0; c < 6; ++c) m[c][xi] = col[c];
    }
    const auto inv = invert6(m, nullptr);
    GammaCoeffs g;
    for (int xi = 0; xi < 6; ++xi)
        for (int c = 0; c < 6; ++c) g.rows_[xi][c] = inv[xi][c].to_double();
    return g;
}

GammaCoeffs GammaCoeffs::from_generators(const std::array<Vec6, 6>& gen) {
    std::array<std::array<double, 6>, 6> m{};
    for (int xi = 0; xi < 6; ++xi)
        for (int c = 0; c < 6; ++c) m[c][xi] = gen[xi][c];
    const auto inv = invert6d(m);
    GammaCoeffs g;
    g.rows_ = inv;
    return g;
}

std::array<double, 6> GammaCoeffs::gamma_sq(const Mat3& r) const {
    const Vec6 rv = sym_to_vec6(r);
    std::array<double, 6> out{};
    for (int xi = 0; xi < 6; ++xi) out[xi] = gamma_sq_one(xi, rv);
    return out;
}

double GammaCoeffs::gamma_sq_one(int dir, const Vec6& rv) const {
    const auto& row = rows_[dir];
    return row[0] * rv[0] + row[1] * rv[1] + row[2] * rv[2] + row[3] * rv[3] + row[4] * rv[4] +
           row[5] * rv[5];
}

std::array<double, 6> GammaCoeffs::functional_norms() const {
    // Frobenius norm of the representing symmetric matrix: diagonal entries
    // are row components, off-diagonals are half the stored coefficient
    // (the functional sees R_ij + R_ji merged).
    std::array<double, 6> out{};
    for (int xi = 0; xi < 6; ++xi) {
        const auto& row = rows_[xi];
        double s = row[0] * row[0] + row[1] * row[1] + row[2] * row[2];
        for (int c = 3; c < 6; ++c) s += 2.0 * (row[c] / 2.0) * (row[c] / 2.0);
        out[xi] = std::sqrt(s);
    }
    return out;
}

DirectionSet::DirectionSet() : frames_(fixed_frames()) {
    // exact sanity: unit directions, orthonormal frames
    for (const auto& f : frames_) {
        if (dot(f.xi, f.xi) != Rat(1) || dot(f.a, f.a) != Rat(1) || dot(f.b, f.b) != Rat(1) ||
            !dot(f.xi, f.a).is_zero() || !dot(f.xi, f.b).is_zero() || !dot(f.a, f.b).is_zero())
            throw Error("direction frame not orthonormal");
    }

    // n_star by brute force: smallest n clearing all denominators
    n_star_ = 0;
    for (int n = 1; n <= 100 && n_star_ == 0; ++n) {
        bool ok = true;
        for (const auto& f : frames_)
            for (const auto* v : {&f.xi, &f.a, &f.b})
                for (const auto& q : *v)
                    if ((n * q.num) % q.den != 0) { ok = false; break; }
        if (ok) n_star_ = n;
    }
    if (n_star_ == 0) throw Error("no n_star <= 100 clears the frame denominators");

    // exact determinant of the generator matrix
    {
        std::array<std::array<Rat, 6>, 6> m{};
        for (int xi = 0; xi < 6; ++xi) {
            const auto col = rank_one_vec(frames_[xi].xi);
            for (int c = 0; c < 6; ++c) m[c][xi] = col[c];
        }
        invert6(m, &det_);
        if (det_.is_zero()) throw Error("rank-one generators degenerate");
    }

    gamma_ = GammaCoeffs::from_direction_set();

    // positivity radius: gamma_sq(Id) = 1/2 per direction (trace identity);
    // linearity gives gamma_sq >= 1/2 - r * ||functional|| on the Frobenius
    // ball of radius r
    const auto norms = gamma_.functional_norms();
    double worst = 0.0;
    for (double x : norms) worst = std::max(worst, x);
    const double margin = 1.0 / 64.0;
    radius_eff_ = std::min(0.5, (0.5 - margin) / worst);

    // derivative constant of the lemma over the admissible ball:
    // gamma = sqrt(u), u affine, u >= margin on the ball; directional
    // derivative bounds |D^j gamma| <= c_j ||G||^j u_min^{1/2 - j}
    const double u_min = 0.5 - radius_eff_ * worst;
    const double u_max = 0.5 + radius_eff_ * worst;
    double sup = std::sqrt(u_max);
    double deriv_sum = 0.0;
    double cj = 1.0;
    for (int j = 1; j <= n_derivatives_; ++j) {
        cj *= std::abs(0.5 - double(j - 1));
        deriv_sum += cj * std::pow(worst, j) * std::pow(u_min, 0.5 - double(j));
    }
    const double c_lambda = 8.0 * 6.0 * std::sqrt(1.0 + 8.0 * std::pow(M_PI, 3));
    m_const_ = c_lambda * (sup + sup + deriv_sum);
}

const DirectionSet& DirectionSet::get() {
    static DirectionSet ds;
    return ds;
}

const Frame& DirectionSet::frame_of(const RatVec3& xi) const {
    for (const auto& f : frames_)
        if (f.xi[0] == xi[0] && f.xi[1] == xi[1] && f.xi[2] == xi[2]) return f;
    throw UnknownDirection("direction not in the set");
}

std::array<double, 6> DirectionSet::gamma_coeffs(const Mat3& r) const {
    if (frobenius_dist_to_id(r) > radius_eff_ + 1e-12)
        throw OutOfBall("matrix outside the admissible ball");
    auto sq = gamma_.gamma_sq(r);
    std::array<double, 6> out{};
    for (int i = 0; i < 6; ++i) {
        if (sq[i] < 0.0) throw OutOfBall("negative coefficient inside nominal ball");
        out[i] = std::sqrt(sq[i]);
    }
    return out;
}

std::array<double, 3> DirectionSet::xi(int i) const {
    return {frames_[i].xi[0].to_double(), frames_[i].xi[1].to_double(), frames_[i].xi[2].to_double()};
}

std::array<double, 3> DirectionSet::axis_a(int i) const {
    return {frames_[i].a[0].to_double(), frames_[i].a[1].to_double(), frames_[i].a[2].to_double()};
}

std::array<double, 3> DirectionSet::axis_b(int i) const {
    return {frames_[i].b[0].to_double(), frames_[i].b[1].to_double(), frames_[i].b[2].to_double()};
}

}  // namespace wns
