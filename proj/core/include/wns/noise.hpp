#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wns/field.hpp"
#include "wns/norms.hpp"
#include "wns/rng.hpp"

namespace wns {

// Noise and stochastic-convolution conventions
// ---------------------------------------------------------------------------
// The driving Wiener process acts mode by mode on the solenoidal subspace.
// For each retained half-space wavevector k (k lexicographically positive,
// k != 0) and each of the two solenoidal directions e_1(k), e_2(k), the
// complex Fourier coefficient follows the exact Ornstein-Uhlenbeck update
//
//   c(t+dt) = e^{-|k|^2 dt} c(t) + g_k sigma_k(dt) (eta_re + i eta_im)/sqrt(2),
//   sigma_k(dt)^2 = (1 - e^{-2 |k|^2 dt}) / (2 |k|^2),
//
// with eta standard normal per real degree of freedom, drawn from the
// counter-based generator keyed by (seed, mode, step). The stationary
// variance is E|c|^2 = g_k^2 / (2|k|^2) and
// E||Z(t)||_{L^2}^2 = (2pi)^3 sum_{half k} 4 g_k^2 (1-e^{-2|k|^2 t})/(2|k|^2).
// The squared Hilbert-Schmidt norm of the covariance, accordingly, is
// C_G = 4 (2pi)^3 sum_{half k} g_k^2.

struct NoiseMode {
    int k[3];
    double g;
    double e1[3], e2[3];  // orthonormal solenoidal basis of k-perp
};

struct NoiseSpec {
    std::vector<NoiseMode> modes;
    double c_g = 0.0;

    /// g_k = scale * |k|^{-s_g} on 0 < |k|_inf <= kmax; g_0 = 0.
    static NoiseSpec power_law(int kmax, double s_g = 3.0, double scale = 1.0);
    static NoiseSpec single_mode(int kx, int ky, int kz, double g);
    static NoiseSpec zero();

    /// Sobolev embedding constant of the retained-mode space:
    /// ||f||_inf <= C_S ||f||_{H^{(3+sigma)/2}}, floored at 1.
    double sobolev_constant(double sigma = 0.01) const;
};

/// One sample of the sparse solenoidal field: two complex coefficients per
/// retained half-space mode.
struct SparseField {
    std::vector<std::array<cplx, 2>> coef;

    double l2_norm(const NoiseSpec& spec) const;
    double hs_norm(const NoiseSpec& spec, double s) const;
    double l2_dist(const SparseField& other, const NoiseSpec& spec) const;
    /// Restrict to |k|_inf <= f (the P_{<= f} projection).
    SparseField filtered(const NoiseSpec& spec, double f) const;
};

/// Uniformly sampled OU trajectory, Z(0) = 0 unless an initial sparse field
/// is supplied.
struct StokesTraj {
    double t0 = 0.0;
    double dt = 0.0;
    std::vector<SparseField> samples;

    double t_hi() const { return t0 + dt * double(samples.size() - 1); }
    std::size_t index_of(double t) const;
};

StokesTraj simulate_stokes(const NoiseSpec& spec, double dt, std::size_t nsteps,
                           std::uint64_t seed, const SparseField* z0 = nullptr,
                           std::size_t step_offset = 0);

/// Materialize one sparse sample on a grid (exact spectral placement).
VectorField materialize(const SparseField& f, const NoiseSpec& spec, const Grid3& g);

struct StoppingParams {
    double c_s = 1.0;     // Sobolev constant
    double delta = 0.05;  // must be < 1/12
    // variant A thresholds
    double thr_h = 0.0;      // ||z(t)||_{H^{1-delta}} >= thr_h
    double thr_holder = 0.0; // ||z||_{C^{1/2-2delta} L^2} >= thr_holder
    double thr_l2 = 0.0;     // ||z(t)||_{L^2} >= thr_l2 (variant A only)
    double cap = 1.0;        // trailing cap (1 for A, L for B)

    static StoppingParams variant_a(double c_s, double delta, double a, double b, double beta);
    static StoppingParams variant_b(double c_s, double delta, double L);
};

struct StoppingRecord {
    double time = 0.0;
    std::string fired;  // "H", "holder", "L2", "cap"
    double norm_h = 0.0, norm_holder = 0.0, norm_l2 = 0.0;
};

enum class Variant { A, B };

/// First grid time at which any threshold fires, else the cap. The Hoelder
/// norm is evaluated over all discrete pairs up to the current time.
StoppingRecord stopping_time(const StokesTraj& traj, const NoiseSpec& spec,
                             const StoppingParams& params, Variant variant);

/// Zhat(t) = Z(t + T) - e^{t Lap} Z(T); T must lie on the sample grid.
StokesTraj restart_shift(const StokesTraj& traj, const NoiseSpec& spec, double T);

}  // namespace wns
