#include "wns/scheme.hpp"

#include <algorithm>
#include <cmath>

#include "wns/stress_detail.hpp"

namespace wns {

JetParams SchemeConfig::jet_params_for_level(int q_next) const {
    const Profiles prof = (trig_m_par > 0 && trig_m_perp > 0)
                              ? Profiles::trig(trig_m_par, trig_m_perp)
                              : Profiles::bump();
    if (jet_lambda > 0.0)
        return JetParams::custom(jet_lambda, jet_r_perp, jet_r_par, jet_mu, prof, true);
    return JetParams::ladder(params.lambda(q_next), prof);
}

double SchemeConfig::c_lambda() const {
    if (c_lambda_safety > 0.0) return c_lambda_safety;
    return std::max(2.0, 1.0 / DirectionSet::get().radius_eff());
}

SchemeEngine::SchemeEngine(SchemeConfig cfg) : cfg_(std::move(cfg)), grid_(cfg_.grid_n) {
    c_lambda_ = cfg_.c_lambda();
    noise_ = cfg_.preset_noise ? *cfg_.preset_noise
                               : NoiseSpec::power_law(cfg_.noise_kmax, cfg_.noise_decay,
                                                      cfg_.noise_scale);
    const double cs = noise_.sobolev_constant(cfg_.sigma_embed);

    // variant B datum: Leray-projected, mean-free, band-limited
    if (cfg_.variant == Variant::B) {
        VectorField u0 = cfg_.u0 ? *cfg_.u0 : VectorField(grid_);
        if (u0.grid() != grid_) throw GridMismatch("datum grid differs from scheme grid");
        u0 = leray_project(u0);
        u0_l2_ = lp_norm(u0, 2.0);
        if (u0_l2_ > cfg_.n_datum + 1e-12)
            throw DatumTooLarge("||u0|| exceeds the configured bound N");
        const Fft& fft = Fft::get(grid_);
        for (int c = 0; c < 3; ++c) {
            u0_spec_[c].emplace(grid_.nspec());
            fft.forward(u0.data(c), u0_spec_[c]->data());
        }
    }

    // simulate the stochastic convolution past the horizon and detect the
    // stopping time on its sample grid
    const std::size_t nsteps = std::size_t(std::ceil(cfg_.horizon / cfg_.dt)) + 8;
    if (cfg_.preset_z) {
        ztraj_ = *cfg_.preset_z;
        if (ztraj_.samples.size() < nsteps)
            throw OutOfRange("preset noise trajectory shorter than the horizon");
    } else {
        ztraj_ = simulate_stokes(noise_, cfg_.dt, nsteps, cfg_.seed);
    }
    StoppingParams sp = (cfg_.variant == Variant::A)
                            ? StoppingParams::variant_a(cs, 0.05, cfg_.params.a, cfg_.params.b,
                                                        cfg_.params.beta)
                            : StoppingParams::variant_b(cs, 0.05, cfg_.L);
    sp.thr_h *= cfg_.stop_thr_scale;
    sp.thr_holder *= cfg_.stop_thr_scale;
    // detection on a decimated grid when the trajectory is long (the pair
    // set of the Hoelder norm grows quadratically)
    if (ztraj_.samples.size() > 2200) {
        const std::size_t stride = ztraj_.samples.size() / 1100;
        StokesTraj dec;
        dec.t0 = ztraj_.t0;
        dec.dt = ztraj_.dt * double(stride);
        for (std::size_t j = 0; j < ztraj_.samples.size(); j += stride)
            dec.samples.push_back(ztraj_.samples[j]);
        stop_rec_ = stopping_time(dec, noise_, sp, cfg_.variant);
    } else {
        stop_rec_ = stopping_time(ztraj_, noise_, sp, cfg_.variant);
    }
    stop_time_ = std::min(stop_rec_.time, cfg_.horizon);

    if (cfg_.variant == Variant::A) {
        // constraints (c:1)-(c:3) of the start of the iteration
        if (cfg_.energy.e_inf() < 4.0)
            throw EnergyConstraintViolated("energy profile must stay >= 4");
        j_min_ = std::lround(cfg_.t_start / cfg_.dt);
        if (cfg_.t_start == 0.0) {
            // default: one mollification margin below the deepest window
            j_min_ = std::lround((cfg_.params.t_q(cfg_.levels) - 0.05) / cfg_.dt);
        }
        j_min_ = std::max(j_min_, std::lround(-2.0 / cfg_.dt) + 4);
    } else {
        j_min_ = 0;
    }
    j_max_ = std::lround(stop_time_ / cfg_.dt);

    // per-level machinery
    jets_.resize(cfg_.levels + 1);
    ell_.resize(cfg_.levels + 1, 0.0);
    tw_.resize(cfg_.levels + 1);
    const double ell_cap = cfg_.ell_cap > 0.0 ? cfg_.ell_cap : 4.0 * cfg_.dt;
    for (int qn = 1; qn <= cfg_.levels; ++qn) {
        jets_[qn] = std::make_unique<JetBasis>(grid_, cfg_.jet_params_for_level(qn));
        const double ell_formula = cfg_.params.ell(qn - 1);
        const double ell_eff = std::max(std::min(ell_formula, ell_cap), cfg_.dt);
        // round up to a whole number of steps
        const std::size_t jm = std::size_t(std::ceil(ell_eff / cfg_.dt - 1e-12));
        ell_[qn] = double(jm) * cfg_.dt;
        tw_[qn] = causal_time_weights(ell_[qn], cfg_.dt);
    }

    cache_.resize(cfg_.levels + 1);
    cache_floor_.assign(cfg_.levels + 1, -1000000000L);
    mcache_.resize(cfg_.levels + 1);
}

long SchemeEngine::first_index(int q) const {
    if (q == 0) return j_min_;
    long j = first_index(q - 1);
    if (cfg_.variant == Variant::B) return 0;  // backwards extension by the t=0 value
    const long jm = long(tw_[q].size());
    return j + jm + 2;
}

double SchemeEngine::chi(int q, double t) const {
    if (cfg_.variant == Variant::A) return 1.0;
    const double sq = std::pow(2.0, -double(q));
    const double lo = sq / 2.0, hi = sq;
    if (t <= lo) return 0.0;
    if (t >= hi) return 1.0;
    auto f = [](double u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; };
    const double u = (t - lo) / (hi - lo);
    return f(u) / (f(u) + f(1.0 - u));
}

VectorField SchemeEngine::z_in(double t) const {
    VectorField out(grid_);
    if (cfg_.variant == Variant::A || !u0_spec_[0]) return out;
    const double tc = std::max(t, 0.0);
    const Fft& fft = Fft::get(grid_);
    SpecBuf buf(grid_);
    const int h = grid_.n / 2;
    for (int c = 0; c < 3; ++c) {
        const auto& u0 = *u0_spec_[c];
        cplx* spec = buf.data();
        for_each_mode(grid_, [&](int kx, int ky, int kz, std::size_t m) {
            if (kx >= h || std::abs(ky) >= h || std::abs(kz) >= h) { spec[m] = 0.0; return; }
            const double k2 = double(kx) * kx + double(ky) * ky + double(kz) * kz;
            spec[m] = u0[m] * std::exp(-k2 * tc);
        });
        fft.backward(buf.data(), out.data(c));
    }
    return out;
}

VectorField SchemeEngine::z_field(int q, long j) const {
    // z_q = z^in + P_{<= f(q)} Z; q = -1 means no frequency cut
    const double fcut = (q >= 0) ? cfg_.params.f_cut(q) : kInf;
    VectorField out = z_in(time_of(j));
    if (cfg_.variant == Variant::A && time_of(j) < 0.0) return out;  // z frozen at z(0) = 0
    const long jz = std::max(j, 0L);
    if (std::size_t(jz) < ztraj_.samples.size()) {
        SparseField zf = (fcut == kInf) ? ztraj_.samples[jz]
                                        : ztraj_.samples[jz].filtered(noise_, fcut);
        VectorField zg = materialize(zf, noise_, grid_);
        out += zg;
    }
    return out;
}

double SchemeEngine::z_l2(int q, long j) const {
    VectorField z = z_field(q, j);
    return lp_norm(z, 2.0);
}

const LevelSample& SchemeEngine::level(int q, long j) {
    if (q < 0 || q > cfg_.levels) throw OutOfRange("level out of range");
    if (cfg_.variant == Variant::B && j < 0) j = 0;  // value-at-zero extension
    auto& cache = cache_[q];
    auto it = cache.find(j);
    if (it != cache.end()) return *it->second;

    std::shared_ptr<LevelSample> s;
    if (q == 0) {
        s = std::make_shared<LevelSample>();
        s->t = time_of(j);
        s->v = VectorField(grid_);
        VectorField z0 = z_field(0, j);
        s->R = traceless_tensor_product(z0, z0);
        s->v_l2 = 0.0;
        s->r_l1 = l1_norm(s->R);
        s->vz_l2 = lp_norm(z0, 2.0);
    } else {
        s = assemble(q, j);
    }
    cache[j] = s;
    evict(q, j);
    return *cache[j];
}

void SchemeEngine::evict(int q, long j) {
    // keep a sliding window behind the newest index
    const long jm = (q < int(tw_.size()) && q >= 1) ? long(tw_[q].size()) : 1;
    const long keep_from = j - (jm + 6);
    auto& cache = cache_[q];
    for (auto it = cache.begin(); it != cache.end();) {
        if (it->first < keep_from && it->first > cache_floor_[q])
            it = cache.erase(it);
        else
            ++it;
    }
    if (q < int(mcache_.size())) {
        auto& mc = mcache_[q];
        for (auto it = mc.begin(); it != mc.end();) {
            if (it->first < j - 4) it = mc.erase(it); else ++it;
        }
    }
}

double SchemeEngine::gamma_q(int q, long j) {
    if (cfg_.variant == Variant::B) {
        const int r = q + 1;
        return (r == 3) ? cfg_.K : std::pow(2.0, -double(r));
    }
    const LevelSample& s = level(q, j);
    const double e = cfg_.energy.e(time_of(j));
    const double d2 = cfg_.params.delta(q + 2);
    double g = (e * (1.0 - d2) - s.vz_l2 * s.vz_l2) / (3.0 * std::pow(kTwoPi, 3));
    if (g < 0.0) {
        ++gamma_clamps_;
        g = 0.0;
    }
    return g;
}

double SchemeEngine::energy_gap(int q_next, long j) {
    const LevelSample& s = level(q_next, j);
    const double e = cfg_.energy.e(time_of(j));
    return std::abs(e - s.vz_l2 * s.vz_l2);
}

ResidualReport SchemeEngine::residual(int q, long j) {
    // residual of (v_q, R_q): D_t v - Lap v + P Pneq0 div((v+z_q)(x)(v+z_q))
    // - P div R, with the same clamped centered difference as the assembly
    ResidualReport rep;
    rep.t = time_of(j);
    const LevelSample& sm = level(q, j - 1);
    const LevelSample& s0 = level(q, j);
    const LevelSample& sp = level(q, j + 1);

    VectorField dtv = sp.v;
    dtv -= sm.v;
    dtv *= 1.0 / (2.0 * cfg_.dt);
    VectorField lap = laplacian(s0.v);

    VectorField z = z_field(q, j);
    VectorField u = s0.v;
    u += z;
    SymTensorField uu = sym_tensor_product(u, u);
    VectorField nl = divergence(uu);
    nl = leray_project(spectral_filter(nl, FilterKind::Neq0));

    VectorField divR = divergence(s0.R);
    divR = leray_project(spectral_filter(divR, FilterKind::Neq0));

    VectorField res = leray_project(spectral_filter(dtv, FilterKind::Neq0));
    res -= leray_project(spectral_filter(lap, FilterKind::Neq0));
    // note: lap enters with minus sign in the equation; res = dtv - lap + nl - divR
    res += nl;
    res -= divR;

    rep.abs_l2 = lp_norm(res, 2.0);
    rep.scale = std::max({lp_norm(dtv, 2.0), lp_norm(lap, 2.0), lp_norm(nl, 2.0),
                          lp_norm(divR, 2.0), 1e-300});
    rep.rel = rep.abs_l2 / rep.scale;
    return rep;
}

std::vector<LevelLedgerRow> SchemeEngine::ledger_sweep(int q, long stride) {
    std::vector<LevelLedgerRow> rows;
    const long j0 = first_index(q) + 1;
    for (long j = j0; j <= j_max_ - 1; j += stride) {
        LevelLedgerRow row{};
        row.t = time_of(j);
        const LevelSample& s = level(q, j);
        row.v_l2 = s.v_l2;
        row.r_l1 = s.r_l1;
        row.vz_l2 = s.vz_l2;
        row.v_c1 = grad_linf(s.v) + lp_norm(s.v, kInf);
        row.gap = std::abs(cfg_.energy.e(row.t) - s.vz_l2 * s.vz_l2);
        if (q >= 1) {
            const LevelSample& prev = level(q - 1, j);
            VectorField d = s.v;
            d -= prev.v;
            row.increment = lp_norm(d, 2.0);
            row.w_half_norm = wsp_norm(d, 0.5, 31.0 / 30.0);
        }
        rows.push_back(row);
    }
    return rows;
}

GlueReport run_glue(const SchemeConfig& cfg0) {
    if (cfg0.variant != Variant::B) throw ConfigError("gluing is a prescribed-datum operation");
    SchemeConfig cfg = cfg0;
    // simulate one shared noise path long enough for both segments
    NoiseSpec noise = NoiseSpec::power_law(cfg.noise_kmax, cfg.noise_decay, cfg.noise_scale);
    const double total = 2.0 * cfg.horizon + 1.0;
    const std::size_t nsteps = std::size_t(std::ceil(total / cfg.dt)) + 16;
    StokesTraj z = simulate_stokes(noise, cfg.dt, nsteps, cfg.seed);

    cfg.preset_noise = noise;
    cfg.preset_z = z;
    SchemeEngine seg1(cfg);
    const double T = seg1.stopping();
    const long jT = std::lround(T / cfg.dt);

    // u(T) = v_Q(T) + z_Q(T) becomes the next datum
    const int Q = cfg.levels;
    const LevelSample& sT = seg1.level(Q, jT);
    VectorField u_seam = sT.v;
    VectorField zT = seg1.z_field(Q, jT);
    u_seam += zT;

    SchemeConfig cfg2 = cfg0;
    cfg2.u0 = u_seam;
    cfg2.n_datum = lp_norm(u_seam, 2.0) + 1.0;
    cfg2.L = cfg0.L + 1.0;
    cfg2.stop_thr_scale = 2.0;  // thresholds 2(L+1)/C_S after the restart
    cfg2.preset_noise = noise;
    cfg2.preset_z = restart_shift(z, noise, double(jT) * cfg.dt);
    SchemeEngine seg2(cfg2);

    GlueReport rep;
    rep.t_seam = T;
    const LevelSample& s20 = seg2.level(Q, 0);
    VectorField u20 = s20.v;
    VectorField z20 = seg2.z_field(Q, 0);
    u20 += z20;
    VectorField d = u20;
    d -= u_seam;
    rep.seam_jump_l2 = lp_norm(d, 2.0);
    rep.residual_before = seg1.residual(Q, jT - 1).rel;
    rep.residual_after = seg2.residual(Q, 1).rel;
    const long jf = std::min(seg2.index_max() - 1, std::lround(0.25 / cfg.dt));
    VectorField uf = seg2.level(Q, jf).v;
    VectorField zf = seg2.z_field(Q, jf);
    uf += zf;
    rep.u_final_l2 = lp_norm(uf, 2.0);
    return rep;
}

CompareKReport run_compare_k(SchemeConfig cfg, double k1, double k2) {
    if (cfg.variant != Variant::B) throw ConfigError("compare-K is a prescribed-datum operation");
    CompareKReport rep;
    rep.k1 = k1;
    rep.k2 = k2;
    cfg.K = k1;
    SchemeEngine e1(cfg);
    cfg.K = k2;
    SchemeEngine e2(cfg);
    const long jf = std::min(e1.index_max(), e2.index_max()) - 1;
    rep.t_final = double(jf) * cfg.dt;
    rep.v1_sq = std::pow(e1.level(cfg.levels, jf).v_l2, 2);
    rep.v2_sq = std::pow(e2.level(cfg.levels, jf).v_l2, 2);
    return rep;
}

}  // namespace wns
