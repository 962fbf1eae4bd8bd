#include "wns/norms.hpp"

#include <cmath>

namespace wns {

namespace {

double lp_of(const Grid3& g, const std::vector<double>& absvals, double p) {
    if (p == kInf) {
        double m = 0.0;
        for (double x : absvals) m = std::max(m, x);
        return m;
    }
    std::vector<double> tmp(absvals.size());
    for (std::size_t i = 0; i < absvals.size(); ++i) tmp[i] = std::pow(absvals[i], p);
    return std::pow(det_sum(tmp) * g.cell_volume(), 1.0 / p);
}

}  // namespace

double lp_norm(const ScalarField& f, double p) {
    std::vector<double> a(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) a[i] = std::abs(f[i]);
    return lp_of(f.grid(), a, p);
}

double lp_norm(const VectorField& f, double p) {
    std::vector<double> a(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double x = f.data(0)[i], y = f.data(1)[i], z = f.data(2)[i];
        a[i] = std::sqrt(x * x + y * y + z * z);
    }
    return lp_of(f.grid(), a, p);
}

double lp_norm(const SymTensorField& f, double p) {
    ScalarField fr;
    f.frobenius(fr);
    std::vector<double> a(fr.data(), fr.data() + fr.size());
    return lp_of(f.grid(), a, p);
}

double l2_norm(const VectorField& f) { return lp_norm(f, 2.0); }
double l2_norm(const SymTensorField& f) { return lp_norm(f, 2.0); }
double l1_norm(const SymTensorField& f) { return lp_norm(f, 1.0); }

double l2_norm_spectral(const VectorField& f) {
    const Grid3& g = f.grid();
    double total = 0.0;
    for (int c = 0; c < 3; ++c) {
        SpecBuf buf(g);
        ScalarField s(g);
        std::copy(f.comp(c).begin(), f.comp(c).end(), s.data());
        to_spectral(s, buf.data());
        std::vector<double> acc(g.nspec());
        const cplx* spec = buf.data();
        for_each_mode(g, [&](int kx, int, int, std::size_t m) {
            const double w = (kx == 0 || kx == g.n / 2) ? 1.0 : 2.0;
            acc[m] = w * std::norm(spec[m]);
        });
        total += det_sum(acc);
    }
    const double vol = kTwoPi * kTwoPi * kTwoPi;
    return std::sqrt(vol * total);
}

namespace {

double hs_of_spec(const Grid3& g, const cplx* spec, double s) {
    std::vector<double> acc(g.nspec(), 0.0);
    const int h = g.n / 2;
    for_each_mode(g, [&](int kx, int ky, int kz, std::size_t m) {
        if (kx == 0 && ky == 0 && kz == 0) return;
        if (kx >= h || std::abs(ky) >= h || std::abs(kz) >= h) return;
        const double k2 = double(kx) * kx + double(ky) * ky + double(kz) * kz;
        const double w = (kx == 0) ? 1.0 : 2.0;
        acc[m] = w * std::pow(k2, s) * std::norm(spec[m]);
    });
    const double vol = kTwoPi * kTwoPi * kTwoPi;
    return vol * det_sum(acc);
}

}  // namespace

double hs_norm(const ScalarField& f, double s) {
    SpecBuf buf(f.grid());
    to_spectral(f, buf.data());
    return std::sqrt(hs_of_spec(f.grid(), buf.data(), s));
}

double hs_norm(const VectorField& f, double s) {
    double tot = 0.0;
    for (int c = 0; c < 3; ++c) {
        ScalarField sc(f.grid());
        std::copy(f.comp(c).begin(), f.comp(c).end(), sc.data());
        const double v = hs_norm(sc, s);
        tot += v * v;
    }
    return std::sqrt(tot);
}

double wsp_norm(const VectorField& f, double s, double p) {
    VectorField g = bessel_potential(f, s);
    return lp_norm(g, p);
}

double grad_linf(const VectorField& f) {
    double m = 0.0;
    for (int c = 0; c < 3; ++c) {
        ScalarField sc(f.grid());
        std::copy(f.comp(c).begin(), f.comp(c).end(), sc.data());
        VectorField gr = gradient(sc);
        m = std::max(m, lp_norm(gr, kInf));
    }
    return m;
}

double cn_norm(const VectorField& f, int N) {
    if (N < 0) throw UnsupportedKind("cn_norm: N >= 0");
    // derivatives applied recursively; grid max per multi-index order
    double total = lp_norm(f, kInf);
    std::vector<VectorField> level;
    level.push_back(f);
    for (int ord = 1; ord <= N; ++ord) {
        std::vector<VectorField> next;
        for (const auto& v : level) {
            for (int d = 0; d < 3; ++d) {
                VectorField dv(v.grid());
                for (int c = 0; c < 3; ++c) {
                    ScalarField sc(v.grid());
                    std::copy(v.comp(c).begin(), v.comp(c).end(), sc.data());
                    VectorField gr = gradient(sc);
                    std::copy(gr.comp(d).begin(), gr.comp(d).end(), dv.data(c));
                }
                total += lp_norm(dv, kInf);
                next.push_back(std::move(dv));
            }
        }
        level = std::move(next);
    }
    return total;
}

}  // namespace wns
