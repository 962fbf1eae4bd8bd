#pragma once

#include <array>
#include <optional>
#include <string>

#include "wns/field.hpp"
#include "wns/geometry.hpp"
#include "wns/profiles.hpp"

namespace wns {

using Vec3d = std::array<double, 3>;

/// Concentration / oscillation parameters of one jet family. kappa =
/// lambda * r_perp must be a positive integer: it is the cell frequency of
/// the periodic tube lattice and the anchor of every exact-sampling
/// argument.
struct JetParams {
    double lambda = 0.0;
    double r_perp = 0.0;
    double r_par = 0.0;
    double mu = 0.0;
    int kappa = 0;
    int n_star = 5;
    Profiles profiles = Profiles::bump();
    std::array<Vec3d, 6> shifts{};
    bool allow_underresolved = false;

    /// The canonical exponent ladder: r_par = lambda^{-4/7},
    /// r_perp = lambda^{-6/7}, mu = lambda^{9/7}. Throws NonIntegerPeriod
    /// unless lambda * r_perp is an integer within 1e-9.
    static JetParams ladder(double lambda, const Profiles& prof = Profiles::bump());

    /// Free choice of concentrations (desk configurations); lambda * r_perp
    /// must still be a positive integer.
    static JetParams custom(double lambda, double r_perp, double r_par, double mu,
                            const Profiles& prof, bool allow_underresolved = true);

    /// Pairwise tube-axis separation certificate for compactly supported
    /// profiles: exact minimum distance between tube families minus the sum
    /// of tube radii (> 0 means disjoint supports in the continuum).
    double support_separation() const;
};

/// Sampled jet family on one grid. All values are exact point samples of
/// the continuum functions: arguments of every profile factor land on an
/// n-point circle, so each (direction, factor) reduces to a lookup table.
class JetBasis {
public:
    JetBasis(const Grid3& g, const JetParams& p);

    const JetParams& params() const { return params_; }
    const Grid3& grid() const { return grid_; }

    struct Sample {
        VectorField W;    // xi psi phi
        VectorField V;    // xi psi Phi / (n*^2 lambda^2)
        VectorField Psi;  // xi psi^2 phi^2
        double mean_psi2phi2 = 0.0;  // grid mean of psi^2 phi^2 (time dependent)
    };

    /// Evaluate one direction at time t (one fused pass over the grid).
    Sample eval(int dir, double t) const;

    /// Analytic incompressibility corrector W^(c) (chain-rule closed form).
    VectorField eval_corrector(int dir, double t) const;

    /// Grid mean of psi^2 phi^2 for the amplitude normalization.
    double measured_moment(int dir, double t) const;

private:
    Grid3 grid_;
    JetParams params_;
    struct DirTables {
        std::array<long, 3> ws;   // integer index weights for the psi argument
        std::array<long, 3> wa;   // for the first transverse argument
        std::array<long, 3> wb;   // for the second
        double off_a = 0.0, off_b = 0.0;  // shift offsets (radians)
        std::vector<double> phi_tab, Phi_tab, Phi1_tab, Phi2_tab;  // n x n
    };
    std::array<DirTables, 6> tabs_;

    void psi_tables(int dir, double t, std::vector<double>& psi_tab,
                    std::vector<double>& dpsi_tab) const;
};

/// Analytic evaluation at a single point (no grid): W, the corrector W^(c),
/// and the potential V.
struct JetPointValue {
    Vec3d W{}, Wc{}, V{};
};
JetPointValue jet_point_eval(const JetParams& p, int dir, double t, const Vec3d& x);

/// Continuum quadrature of jet quantities through the frame factorization
/// (integrals over T^3 reduce exactly to 1D x 2D period integrals).
struct JetQuadrature {
    const JetParams& p;
    int n1d = 1 << 15;
    int n2d = 1 << 10;

    double psi_lp(double p_exp, int dt_order, int dx_order) const;  // ||d^..psi_(xi)||_Lp
    double phi_lp(double p_exp, int dx_order) const;
    double w_lp(double p_exp) const;            // ||W_(xi)||_Lp over T^3
    double mean_psi2() const;                   // (1/2pi) int psi_r^2
    double mean_phi2() const;                   // (1/4pi^2) int phi_r^2
    double mean_psi() const;
    double mean_phi() const;
    /// (2pi)^{-3} int W (x) W = (mean_psi2 * mean_phi2) xi (x) xi
    double ww_mean_scalar() const { return mean_psi2() * mean_phi2(); }
};

/// Scaling report for check_jet_bounds: measured norm / predicted scaling
/// per (quantity, p, N, M) and lambda.
struct JetBoundsRow {
    std::string quantity;
    double p;
    int N, M;
    double lambda;
    double measured;
    double predicted_scale;
    double ratio;
};

std::vector<JetBoundsRow> check_jet_bounds(const std::vector<JetParams>& params_list);

/// max over rows grouped by (quantity,p,N,M) of ratio_max/ratio_min.
double jet_bounds_worst_spread(const std::vector<JetBoundsRow>& rows);

std::string jet_bounds_to_json(const std::vector<JetBoundsRow>& rows);

}  // namespace wns
