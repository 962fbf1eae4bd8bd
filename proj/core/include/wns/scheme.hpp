#pragma once

#include <cmath>
#include <map>
#include <memory>
#include <optional>

#include "wns/geometry.hpp"
#include "wns/jets.hpp"
#include "wns/noise.hpp"
#include "wns/params.hpp"
#include "wns/trajectory.hpp"

namespace wns {

/// Full configuration of one convex-integration run.
struct SchemeConfig {
    Variant variant = Variant::A;
    ParamSet params;
    EnergyProfile energy;  // variant A
    int grid_n = 48;
    double dt = 2e-3;
    int levels = 1;
    std::uint64_t seed = 1;
    int noise_kmax = 2;
    double noise_decay = 3.0;
    double noise_scale = 0.25;
    double sigma_embed = 0.01;  // exponent sigma in C_S

    // variant B
    double L = 1.0;
    double n_datum = 1.0;  // L^2 bound on the initial datum
    double K = 10.0;       // distinguishing constant, gamma_3 = K
    std::optional<VectorField> u0;

    // jet parameters per level: the exponent ladder when jet_lambda == 0,
    // otherwise the fixed desk override (identities are parameter-free)
    double jet_lambda = 0.0, jet_r_perp = 0.0, jet_r_par = 0.0, jet_mu = 0.0;
    int trig_m_par = 0, trig_m_perp = 0;  // 0 -> bump profiles

    // preset noise path (restart gluing, causality experiments); when set,
    // the engine uses it instead of simulating from the seed
    std::optional<StokesTraj> preset_z;
    std::optional<NoiseSpec> preset_noise;
    double stop_thr_scale = 1.0;  // restart segments use 2(L+1)/C_S

    bool deterministic = true;
    double c_lambda_safety = 0.0;  // 0 -> max(2, 1/radius_eff)
    // mollification width: the ladder formula capped at ell_cap (desk runs
    // would otherwise inherit an O(0.1) width from lambda_0 = a), floored
    // at one time step; 0 -> 4 dt
    double ell_cap = 0.0;
    // regulariser inside rho = c sqrt(reg^2 + |R_ell|^2); 0 -> min(ladder
    // formula, dt/4). Any positive value preserves the identities.
    double rho_reg = 0.0;
    double t_start = 0.0;          // variant A runs start at t_q of the deepest level
    double horizon = 1.0;          // detection horizon for the stopping time

    JetParams jet_params_for_level(int q_next) const;
    double c_lambda() const;
};

/// One time sample of one iteration level.
struct LevelSample {
    double t = 0.0;
    VectorField v;
    SymTensorField R;
    // per-sample scalars for the ledger
    double v_l2 = 0.0;
    double r_l1 = 0.0;
    double vz_l2 = 0.0;  // ||v_q + z_q||_{L^2}
};

/// Named stress pieces of one assembled sample (diagnostics).
struct StressNorms {
    double lin = 0, cor = 0, osc_x = 0, osc_t = 0, com = 0, com1 = 0, cut = 0, cross = 0,
           chi_rl = 0;
};

struct ResidualReport {
    double t = 0.0;
    double abs_l2 = 0.0;
    double scale = 0.0;  // max of the equation term norms
    double rel = 0.0;
};

struct LevelLedgerRow {
    double t;
    double v_l2, v_c1, r_l1, vz_l2;
    double gap;          // |e - ||v+z||^2| (variant A)
    double increment;    // ||v_{q+1} - v_q||_{L^2}
    double w_half_norm;  // W^{1/2,31/30} increment (variant B)
};

/// Convex-integration driver: levels are produced lazily and memoized over a
/// sliding window of the shared time grid, so whole-window sweeps and
/// short spot checks share one code path.
class SchemeEngine {
public:
    explicit SchemeEngine(SchemeConfig cfg);

    const SchemeConfig& config() const { return cfg_; }
    const Grid3& grid() const { return grid_; }
    double dt() const { return cfg_.dt; }
    double stopping() const { return stop_time_; }
    const StoppingRecord& stopping_record() const { return stop_rec_; }
    long index_min() const { return j_min_; }
    long index_max() const { return j_max_; }
    double time_of(long j) const { return double(j) * cfg_.dt; }
    /// first index at which level q is defined (needs mollification history)
    long first_index(int q) const;

    /// Level sample access (memoized; level 0 is closed-form).
    const LevelSample& level(int q, long j);

    /// z_q on the grid at index j (q = -1 means the unfiltered z).
    VectorField z_field(int q, long j) const;
    double z_l2(int q, long j) const;

    /// Leray-projected equation residual of level q at index j, using the
    /// same centered time difference as the assembly.
    ResidualReport residual(int q, long j);

    /// Stress-piece norms of the assembly emitted at (q, j), q >= 1.
    StressNorms stress_norms(int q, long j);

    /// gamma_q(t) of the energy pumping (variant A), clamped at zero.
    double gamma_q(int q, long j);
    int gamma_clamp_count() const { return gamma_clamps_; }

    /// delta E(t) = |e(t)(1-delta_{q+2}) - ||v_{q+1}+z_{q+1}||^2| at level
    /// q+1 given index j.
    double energy_gap(int q_next, long j);

    /// Ledger sweep for level q at a stride of the time grid.
    std::vector<LevelLedgerRow> ledger_sweep(int q, long stride);

    double measured_m0() const { return m0_measured_; }

    /// Pointwise cancellation residual of the amplitude identity at (q->q+1, j):
    /// max_x | sum_xi a_xi^2 M_xi xi (x) xi - (rho Id - R_ell) | / max rho.
    double cancellation_residual(int q_next, long j);

private:
    friend struct StepAssembler;
    SchemeConfig cfg_;
    Grid3 grid_;
    NoiseSpec noise_;
    StokesTraj ztraj_;
    StoppingRecord stop_rec_;
    double stop_time_ = 0.0;
    long j_min_ = 0, j_max_ = 0;
    std::vector<std::unique_ptr<JetBasis>> jets_;  // per produced level q+1
    std::vector<double> ell_;                      // effective mollification widths
    std::vector<std::vector<double>> tw_;          // time weights per level
    std::optional<std::vector<cplx>> u0_spec_[3];  // variant B datum spectrum
    double u0_l2_ = 0.0;
    int gamma_clamps_ = 0;
    double m0_measured_ = 0.0;
    double c_lambda_ = 2.0;

    struct Slot {
        long j = -1000000000;
        std::shared_ptr<LevelSample> s;
    };
    std::vector<std::map<long, std::shared_ptr<LevelSample>>> cache_;
    std::vector<long> cache_floor_;

    struct MollySample;  // internal (stress.cpp)
    std::vector<std::map<long, std::shared_ptr<MollySample>>> mcache_;

    const MollySample& molly(int q_next, long j);
    std::shared_ptr<LevelSample> assemble(int q_next, long j);
    void evict(int q, long j);

    VectorField z_in(double t) const;           // heat flow of the datum
    VectorField z_in_mollified(int q_next, long j) const;
    double chi(int q, double t) const;          // variant B cutoff for level q+1
    double chi_prime_used(int q, double t) const;
};

/// Residual-style relative norm of one glued two-segment run near the seam.
struct GlueReport {
    double seam_jump_l2 = 0.0;
    double residual_before = 0.0;
    double residual_after = 0.0;
    double t_seam = 0.0;
    double u_final_l2 = 0.0;
};

/// Run one variant-B segment to its stopping time, restart from the final
/// value with the shifted noise, and verify the seam.
GlueReport run_glue(const SchemeConfig& cfg);

struct CompareKReport {
    double k1 = 0.0, k2 = 0.0;
    double v1_sq = 0.0, v2_sq = 0.0;  // final ||v_Q||^2 per run
    double t_final = 0.0;
    double separation() const { return std::abs(v1_sq - v2_sq); }
};

/// Two prescribed-datum runs with a shared noise path and different
/// distinguishing constants K.
CompareKReport run_compare_k(SchemeConfig cfg, double k1, double k2);

}  // namespace wns
