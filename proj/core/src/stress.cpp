#include <cmath>

#include "wns/stress_detail.hpp"

namespace wns {

namespace {

// accumulate  out += c(x) * (xi (x) xi)  for a constant direction
void acc_rank_one(SymTensorField& out, const ScalarField& c, const std::array<double, 3>& xi,
                  bool traceless) {
    const double d = traceless ? 1.0 / 3.0 : 0.0;
    const double m[6] = {xi[0] * xi[0] - d, xi[1] * xi[1] - d, xi[2] * xi[2] - d,
                         xi[0] * xi[1], xi[0] * xi[2], xi[1] * xi[2]};
    for (int comp = 0; comp < 6; ++comp) {
        double* o = out.data(comp);
        const double* s = c.data();
        const double w = m[comp];
        for (std::size_t i = 0; i < c.size(); ++i) o[i] += w * s[i];
    }
}

VectorField leray_neq0(const VectorField& f) {
    return leray_project(spectral_filter(f, FilterKind::Neq0));
}

}  // namespace

const SchemeEngine::MollySample& SchemeEngine::molly(int q_next, long j) {
    auto& cache = mcache_[q_next];
    auto it = cache.find(j);
    if (it != cache.end()) return *it->second;

    const int q = q_next - 1;
    auto ms = std::make_shared<MollySample>();
    ms->t = time_of(j);
    const auto& w = tw_[q_next];
    const long jm = long(w.size());
    SpaceMollifier smoll(ell_[q_next]);

    // time averages of the parent fields and of the parent product
    VectorField vavg(grid_);
    SymTensorField ravg(grid_), pavg(grid_);
    double gavg = 0.0;
    for (long k = 1; k <= jm; ++k) {
        const LevelSample& ps = level(q, j - k);
        axpy(w[k - 1], ps.v, vavg);
        axpy(w[k - 1], ps.R, ravg);
        VectorField vz = ps.v;
        VectorField zq = z_field(q, j - k);
        vz += zq;
        SymTensorField prod = traceless_tensor_product(vz, vz);
        axpy(w[k - 1], prod, pavg);
        gavg += w[k - 1] * gamma_q(q, j - k);
    }
    ms->v_l = VectorField(grid_);
    smoll.apply(vavg, ms->v_l);
    ms->R_l = SymTensorField(grid_);
    smoll.apply(ravg, ms->R_l);
    ms->P_l = SymTensorField(grid_);
    smoll.apply(pavg, ms->P_l);
    ms->gamma_l = gavg;

    {
        // z_l: sparse time average materialized, then space-mollified, plus
        // the datum heat flow averaged the same way
        VectorField zavg(grid_);
        for (long k = 1; k <= jm; ++k) {
            VectorField zk = z_field(q, j - k);
            axpy(w[k - 1], zk, zavg);
        }
        ms->z_l = VectorField(grid_);
        smoll.apply(zavg, ms->z_l);
    }

    // rho = c_Lambda sqrt(reg^2 + |R_l|^2) + pumping
    const double ell_f = cfg_.rho_reg > 0.0
                             ? cfg_.rho_reg
                             : std::min(cfg_.params.ell(q), cfg_.dt / 4.0);
    const double pump = (cfg_.variant == Variant::A)
                            ? ms->gamma_l
                            : gamma_q(q, j) / std::pow(kTwoPi, 3);
    ms->rho = ScalarField(grid_);
    {
        ScalarField fr;
        ms->R_l.frobenius(fr);
        for (std::size_t i = 0; i < fr.size(); ++i)
            ms->rho[i] = c_lambda_ * std::sqrt(ell_f * ell_f + fr[i] * fr[i]) + pump;
    }

    // jet scalars and moments at this time
    const JetBasis& jets = *jets_[q_next];
    std::array<VectorField, 6> Vfields;
    for (int d = 0; d < 6; ++d) {
        JetBasis::Sample s = jets.eval(d, ms->t);
        // scalar carrier: W = s xi with s = psi phi; recover from the
        // largest component of xi
        const auto xi = DirectionSet::get().xi(d);
        int cmax = 0;
        for (int c = 1; c < 3; ++c)
            if (std::abs(xi[c]) > std::abs(xi[cmax])) cmax = c;
        ms->js[d] = ScalarField(grid_);
        for (std::size_t i = 0; i < ms->js[d].size(); ++i)
            ms->js[d][i] = s.W.data(cmax)[i] / xi[cmax];
        ms->moment[d] = s.mean_psi2phi2;
        Vfields[d] = std::move(s.V);
    }

    // amplitude squares: a_xi^2 = rho gamma_xi^2(Id - R_l/rho) / moment
    const GammaCoeffs& gamma = DirectionSet::get().gamma();
    for (int d = 0; d < 6; ++d) ms->a2[d] = ScalarField(grid_);
    {
        const std::size_t np = grid_.npoints();
        const double* rl[6];
        for (int c = 0; c < 6; ++c) rl[c] = ms->R_l.data(c);
        for (std::size_t i = 0; i < np; ++i) {
            const double r = ms->rho[i];
            const Vec6 rt{1.0 - rl[0][i] / r, 1.0 - rl[1][i] / r, 1.0 - rl[2][i] / r,
                          -rl[3][i] / r, -rl[4][i] / r, -rl[5][i] / r};
            for (int d = 0; d < 6; ++d) {
                const double g2 = gamma.gamma_sq_one(d, rt);
                ms->a2[d][i] = r * std::max(g2, 0.0) / ms->moment[d];
            }
        }
    }

    // w^{pc} = sum_xi curl curl (a_xi V_xi)
    ms->wpc = VectorField(grid_);
    for (int d = 0; d < 6; ++d) {
        VectorField av(grid_);
        for (int c = 0; c < 3; ++c)
            for (std::size_t i = 0; i < av.size(); ++i)
                av.data(c)[i] = std::sqrt(ms->a2[d][i]) * Vfields[d].data(c)[i];
        VectorField cc = curl_curl(av);
        ms->wpc += cc;
    }

    // temporal corrector (unscaled): -(1/mu) P Pneq0 sum_xi a2 js^2 xi
    {
        VectorField acc(grid_);
        for (int d = 0; d < 6; ++d) {
            const auto xi = DirectionSet::get().xi(d);
            for (std::size_t i = 0; i < acc.size(); ++i) {
                const double s2 = ms->js[d][i] * ms->js[d][i];
                const double val = ms->a2[d][i] * s2;
                acc.data(0)[i] += val * xi[0];
                acc.data(1)[i] += val * xi[1];
                acc.data(2)[i] += val * xi[2];
            }
        }
        ms->wt = leray_neq0(acc);
        ms->wt *= -1.0 / jets_[q_next]->params().mu;
    }

    cache[j] = ms;
    return *cache[j];
}

std::shared_ptr<LevelSample> SchemeEngine::assemble(int q_next, long j) {
    const int q = q_next - 1;
    const double t0 = time_of(j);
    const MollySample& mm = molly(q_next, j - 1);
    const MollySample& m0 = molly(q_next, j);
    const MollySample& mp = molly(q_next, j + 1);
    const double dt2 = 2.0 * cfg_.dt;
    const double mu = jets_[q_next]->params().mu;

    const double ch0 = chi(q, t0);
    const double chm = chi(q, time_of(j - 1));
    const double chp = chi(q, time_of(j + 1));

    // perturbation parts at the center index
    VectorField wp(grid_);
    for (int d = 0; d < 6; ++d) {
        const auto xi = DirectionSet::get().xi(d);
        for (std::size_t i = 0; i < wp.size(); ++i) {
            const double a = std::sqrt(m0.a2[d][i]);
            const double val = a * m0.js[d][i];
            wp.data(0)[i] += val * xi[0];
            wp.data(1)[i] += val * xi[1];
            wp.data(2)[i] += val * xi[2];
        }
    }

    VectorField w = m0.wpc;
    w *= ch0;
    axpy(ch0 * ch0, m0.wt, w);

    auto out = std::make_shared<LevelSample>();
    out->t = t0;
    out->v = m0.v_l;
    out->v += w;

    // ---- stress assembly -----------------------------------------------
    SymTensorField R(grid_);

    // linear part: -R(Lap w) + R(chi D_t w^pc) + cross terms with v_l + z_l
    {
        VectorField lap = laplacian(w);
        SymTensorField rlap = inv_divergence(lap);
        R -= rlap;

        VectorField dwpc = mp.wpc;
        dwpc -= mm.wpc;
        dwpc *= ch0 / dt2;
        R += inv_divergence(dwpc);

        VectorField vzl = m0.v_l;
        vzl += m0.z_l;
        SymTensorField crossv = traceless_tensor_product(vzl, w);
        crossv *= 2.0;
        R += crossv;
    }

    // corrector part: 2 (wc+wt) (o) wp + (wc+wt) (o) (wc+wt), chi-scaled
    {
        VectorField A = m0.wpc;
        A -= wp;
        A *= ch0;  // chi w^c
        axpy(ch0 * ch0, m0.wt, A);
        VectorField wtp = wp;
        wtp *= ch0;  // chi w^p
        SymTensorField c1 = traceless_tensor_product(A, wtp);
        c1 *= 2.0;
        R += c1;
        SymTensorField c2 = traceless_tensor_product(A, A);
        R += c2;
    }

    // oscillation part
    {
        // space piece: R( chi^2 [ div(sum a2 (S - m) xi(x)xi)
        //                        - (1/mu) P Pneq0 (sum avg(a2) D_t(js^2) xi) ] )
        SymTensorField smean(grid_);
        for (int d = 0; d < 6; ++d) {
            ScalarField c(grid_);
            for (std::size_t i = 0; i < c.size(); ++i)
                c[i] = m0.a2[d][i] * (m0.js[d][i] * m0.js[d][i] - m0.moment[d]);
            acc_rank_one(smean, c, DirectionSet::get().xi(d), false);
        }
        VectorField brace = divergence(smean);

        VectorField dtpsi(grid_);
        for (int d = 0; d < 6; ++d) {
            const auto xi = DirectionSet::get().xi(d);
            for (std::size_t i = 0; i < dtpsi.size(); ++i) {
                const double avg_a2 = 0.5 * (mp.a2[d][i] + mm.a2[d][i]);
                const double dpsi =
                    (mp.js[d][i] * mp.js[d][i] - mm.js[d][i] * mm.js[d][i]) / dt2;
                const double val = avg_a2 * dpsi;
                dtpsi.data(0)[i] += val * xi[0];
                dtpsi.data(1)[i] += val * xi[1];
                dtpsi.data(2)[i] += val * xi[2];
            }
        }
        VectorField osc = brace;
        VectorField pj = leray_neq0(dtpsi);
        axpy(-1.0 / mu, pj, osc);
        osc *= ch0 * ch0;
        R += inv_divergence(osc);

        // time piece: -(chi^2/mu) R( P Pneq0 (sum avg(js^2) D_t(a2) xi) )
        VectorField dta(grid_);
        for (int d = 0; d < 6; ++d) {
            const auto xi = DirectionSet::get().xi(d);
            for (std::size_t i = 0; i < dta.size(); ++i) {
                const double avg_psi = 0.5 * (mp.js[d][i] * mp.js[d][i] +
                                              mm.js[d][i] * mm.js[d][i]);
                const double da = (mp.a2[d][i] - mm.a2[d][i]) / dt2;
                const double val = avg_psi * da;
                dta.data(0)[i] += val * xi[0];
                dta.data(1)[i] += val * xi[1];
                dta.data(2)[i] += val * xi[2];
            }
        }
        VectorField pj2 = leray_neq0(dta);
        pj2 *= -ch0 * ch0 / mu;
        R += inv_divergence(pj2);
    }

    // cross-support remainder: chi^2 ( wp (o) wp - sum a2 js^2 xi (x) xi ),
    // identically zero for disjoint tube supports
    {
        SymTensorField t1 = traceless_tensor_product(wp, wp);
        for (int d = 0; d < 6; ++d) {
            ScalarField c(grid_);
            for (std::size_t i = 0; i < c.size(); ++i)
                c[i] = -m0.a2[d][i] * m0.js[d][i] * m0.js[d][i];
            acc_rank_one(t1, c, DirectionSet::get().xi(d), true);
        }
        t1 *= ch0 * ch0;
        R += t1;
    }

    // mollification commutator
    {
        VectorField vzl = m0.v_l;
        vzl += m0.z_l;
        SymTensorField com = traceless_tensor_product(vzl, vzl);
        com -= m0.P_l;
        R += com;
    }

    // frequency-cut commutator
    {
        VectorField z1 = z_field(q_next, j);
        VectorField d = z1;
        d -= m0.z_l;
        SymTensorField c1 = traceless_tensor_product(out->v, d);
        c1 *= 2.0;
        R += c1;
        SymTensorField c2 = traceless_tensor_product(z1, z1);
        R += c2;
        SymTensorField c3 = traceless_tensor_product(m0.z_l, m0.z_l);
        R -= c3;
    }

    // variant B: cutoff remainder pieces
    if (cfg_.variant == Variant::B) {
        SymTensorField rl = m0.R_l;
        rl *= (1.0 - ch0 * ch0);
        R += rl;

        VectorField cut(grid_);
        const double avg_chi = 0.5 * (chp + chm);
        const double dchi = (chp - chm) / dt2;
        const double avg_chi2 = 0.5 * (chp * chp + chm * chm);
        const double dchi2 = (chp * chp - chm * chm) / dt2;
        VectorField dwpc = mp.wpc;
        dwpc -= mm.wpc;
        dwpc *= (avg_chi - ch0) / dt2;
        cut += dwpc;
        VectorField awpc = mp.wpc;
        awpc += mm.wpc;
        awpc *= 0.5 * dchi;
        cut += awpc;
        VectorField dwt = mp.wt;
        dwt -= mm.wt;
        dwt *= (avg_chi2 - ch0 * ch0) / dt2;
        cut += dwt;
        VectorField awt = mp.wt;
        awt += mm.wt;
        awt *= 0.5 * dchi2;
        cut += awt;
        R += inv_divergence(cut);
    }

    out->R = std::move(R);
    out->v_l2 = lp_norm(out->v, 2.0);
    out->r_l1 = l1_norm(out->R);
    {
        VectorField vz = out->v;
        VectorField zq1 = z_field(q_next, j);
        vz += zq1;
        out->vz_l2 = lp_norm(vz, 2.0);
    }

    // calibration of the universal constant slot
    {
        const double wl2 = lp_norm(w, 2.0);
        double scale;
        if (cfg_.variant == Variant::A) {
            scale = std::sqrt(cfg_.energy.e_sup() * cfg_.params.delta(q_next));
        } else {
            const double ml = (cfg_.L + cfg_.n_datum) * (cfg_.L + cfg_.n_datum);
            scale = std::sqrt(ml * cfg_.params.delta(q_next)) + std::sqrt(gamma_q(q, j));
        }
        m0_measured_ = std::max(m0_measured_, wl2 / std::max(scale, 1e-30));
    }
    return out;
}

StressNorms SchemeEngine::stress_norms(int q, long j) {
    // re-assemble the pieces separately for diagnostics (norms only)
    StressNorms out;
    if (q < 1) return out;
    const MollySample& mm = molly(q, j - 1);
    const MollySample& m0 = molly(q, j);
    const MollySample& mp = molly(q, j + 1);
    const double t0 = time_of(j);
    const double dt2 = 2.0 * cfg_.dt;
    const double mu = jets_[q]->params().mu;
    const double ch0 = chi(q - 1, t0);

    VectorField wp(grid_);
    for (int d = 0; d < 6; ++d) {
        const auto xi = DirectionSet::get().xi(d);
        for (std::size_t i = 0; i < wp.size(); ++i) {
            const double val = std::sqrt(m0.a2[d][i]) * m0.js[d][i];
            for (int c = 0; c < 3; ++c) wp.data(c)[i] += val * xi[c];
        }
    }
    VectorField w = m0.wpc;
    w *= ch0;
    axpy(ch0 * ch0, m0.wt, w);

    {
        VectorField lap = laplacian(w);
        VectorField dwpc = mp.wpc;
        dwpc -= mm.wpc;
        dwpc *= ch0 / dt2;
        VectorField vzl = m0.v_l;
        vzl += m0.z_l;
        SymTensorField lin = inv_divergence(dwpc);
        lin -= inv_divergence(lap);
        SymTensorField cr = traceless_tensor_product(vzl, w);
        cr *= 2.0;
        lin += cr;
        out.lin = l1_norm(lin);
    }
    {
        VectorField A = m0.wpc;
        A -= wp;
        A *= ch0;
        axpy(ch0 * ch0, m0.wt, A);
        VectorField wtp = wp;
        wtp *= ch0;
        SymTensorField c1 = traceless_tensor_product(A, wtp);
        c1 *= 2.0;
        SymTensorField c2 = traceless_tensor_product(A, A);
        c1 += c2;
        out.cor = l1_norm(c1);
    }
    {
        SymTensorField smean(grid_);
        for (int d = 0; d < 6; ++d) {
            ScalarField c(grid_);
            for (std::size_t i = 0; i < c.size(); ++i)
                c[i] = m0.a2[d][i] * (m0.js[d][i] * m0.js[d][i] - m0.moment[d]);
            acc_rank_one(smean, c, DirectionSet::get().xi(d), false);
        }
        VectorField brace = divergence(smean);
        VectorField dtpsi(grid_);
        for (int d = 0; d < 6; ++d) {
            const auto xi = DirectionSet::get().xi(d);
            for (std::size_t i = 0; i < dtpsi.size(); ++i) {
                const double avg_a2 = 0.5 * (mp.a2[d][i] + mm.a2[d][i]);
                const double dpsi =
                    (mp.js[d][i] * mp.js[d][i] - mm.js[d][i] * mm.js[d][i]) / dt2;
                const double val = avg_a2 * dpsi;
                for (int c = 0; c < 3; ++c) dtpsi.data(c)[i] += val * xi[c];
            }
        }
        VectorField osc = brace;
        VectorField pj = leray_neq0(dtpsi);
        axpy(-1.0 / mu, pj, osc);
        osc *= ch0 * ch0;
        out.osc_x = l1_norm(inv_divergence(osc));

        VectorField dta(grid_);
        for (int d = 0; d < 6; ++d) {
            const auto xi = DirectionSet::get().xi(d);
            for (std::size_t i = 0; i < dta.size(); ++i) {
                const double avg_psi =
                    0.5 * (mp.js[d][i] * mp.js[d][i] + mm.js[d][i] * mm.js[d][i]);
                const double da = (mp.a2[d][i] - mm.a2[d][i]) / dt2;
                const double val = avg_psi * da;
                for (int c = 0; c < 3; ++c) dta.data(c)[i] += val * xi[c];
            }
        }
        VectorField pj2 = leray_neq0(dta);
        pj2 *= -ch0 * ch0 / mu;
        out.osc_t = l1_norm(inv_divergence(pj2));
    }
    {
        VectorField vzl = m0.v_l;
        vzl += m0.z_l;
        SymTensorField com = traceless_tensor_product(vzl, vzl);
        com -= m0.P_l;
        out.com = l1_norm(com);
    }
    {
        const LevelSample& s = level(q, j);
        VectorField z1 = z_field(q, j);
        VectorField d = z1;
        d -= m0.z_l;
        SymTensorField c1 = traceless_tensor_product(s.v, d);
        c1 *= 2.0;
        SymTensorField c2 = traceless_tensor_product(z1, z1);
        c1 += c2;
        SymTensorField c3 = traceless_tensor_product(m0.z_l, m0.z_l);
        c1 -= c3;
        out.com1 = l1_norm(c1);
    }
    {
        SymTensorField t1 = traceless_tensor_product(wp, wp);
        for (int d = 0; d < 6; ++d) {
            ScalarField c(grid_);
            for (std::size_t i = 0; i < c.size(); ++i)
                c[i] = -m0.a2[d][i] * m0.js[d][i] * m0.js[d][i];
            acc_rank_one(t1, c, DirectionSet::get().xi(d), true);
        }
        t1 *= ch0 * ch0;
        out.cross = l1_norm(t1);
    }
    if (cfg_.variant == Variant::B) {
        SymTensorField rl = m0.R_l;
        rl *= (1.0 - ch0 * ch0);
        out.chi_rl = l1_norm(rl);
    }
    return out;
}

double SchemeEngine::cancellation_residual(int q_next, long j) {
    const MollySample& m0 = molly(q_next, j);
    // sum_xi a2_xi moment_xi xi(x)xi must equal rho Id - R_l pointwise
    SymTensorField acc(grid_);
    for (int d = 0; d < 6; ++d) {
        ScalarField c(grid_);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = m0.a2[d][i] * m0.moment[d];
        acc_rank_one(acc, c, DirectionSet::get().xi(d), false);
    }
    double worst = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < grid_.npoints(); ++i) {
        scale = std::max(scale, std::abs(m0.rho[i]));
        for (int comp = 0; comp < 6; ++comp) {
            const double target =
                (comp < 3 ? m0.rho[i] : 0.0) - m0.R_l.data(comp)[i];
            worst = std::max(worst, std::abs(acc.data(comp)[i] - target));
        }
    }
    return worst / std::max(scale, 1e-300);
}

}  // namespace wns
