#include "wns/field.hpp"

#include <algorithm>
#include <cmath>

namespace wns {

namespace {

// Pairwise deterministic summation in fixed chunks.
double det_sum_impl(const double* v, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    std::size_t half = n / 2;
    return det_sum_impl(v, half) + det_sum_impl(v + half, n - half);
}

template <class F>
inline void mode_map(const Grid3& g, F&& f) {
    const int n = g.n, h = n / 2;
    std::size_t idx = 0;
    for (int iz = 0; iz < n; ++iz) {
        const int kz = g.wavenumber(iz);
        for (int iy = 0; iy < n; ++iy) {
            const int ky = g.wavenumber(iy);
            for (int ix = 0; ix <= h; ++ix, ++idx) f(ix, ky, kz, idx);
        }
    }
}

inline bool in_band(const Grid3& g, int kx, int ky, int kz) {
    const int h = g.n / 2;
    return kx < h && ky > -h && ky < h && kz > -h && kz < h;
}

void check_grid(const Grid3& a, const Grid3& b) {
    if (a != b) throw GridMismatch("fields live on different grids");
}

}  // namespace

double det_sum(const double* v, std::size_t n) { return det_sum_impl(v, n); }
double det_sum(const std::vector<double>& v) { return det_sum_impl(v.data(), v.size()); }

double ScalarField::mean() const { return det_sum(val_) / double(val_.size()); }

double ScalarField::max_abs() const {
    double m = 0.0;
    for (double x : val_) m = std::max(m, std::abs(x));
    return m;
}

VectorField& VectorField::operator+=(const VectorField& o) {
    check_grid(grid_, o.grid_);
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < comp_[c].size(); ++i) comp_[c][i] += o.comp_[c][i];
    return *this;
}

VectorField& VectorField::operator-=(const VectorField& o) {
    check_grid(grid_, o.grid_);
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < comp_[c].size(); ++i) comp_[c][i] -= o.comp_[c][i];
    return *this;
}

VectorField& VectorField::operator*=(double s) {
    for (int c = 0; c < 3; ++c)
        for (double& x : comp_[c]) x *= s;
    return *this;
}

std::array<double, 3> VectorField::mean() const {
    std::array<double, 3> m{};
    for (int c = 0; c < 3; ++c) m[c] = det_sum(comp_[c]) / double(comp_[c].size());
    return m;
}

SymTensorField& SymTensorField::operator+=(const SymTensorField& o) {
    check_grid(grid_, o.grid_);
    for (int c = 0; c < 6; ++c)
        for (std::size_t i = 0; i < comp_[c].size(); ++i) comp_[c][i] += o.comp_[c][i];
    return *this;
}

SymTensorField& SymTensorField::operator-=(const SymTensorField& o) {
    check_grid(grid_, o.grid_);
    for (int c = 0; c < 6; ++c)
        for (std::size_t i = 0; i < comp_[c].size(); ++i) comp_[c][i] -= o.comp_[c][i];
    return *this;
}

SymTensorField& SymTensorField::operator*=(double s) {
    for (int c = 0; c < 6; ++c)
        for (double& x : comp_[c]) x *= s;
    return *this;
}

double SymTensorField::max_trace_abs() const {
    double m = 0.0;
    for (std::size_t i = 0; i < comp_[0].size(); ++i)
        m = std::max(m, std::abs(comp_[XX][i] + comp_[YY][i] + comp_[ZZ][i]));
    return m;
}

void SymTensorField::frobenius(ScalarField& out) const {
    if (out.grid() != grid_) out = ScalarField(grid_);
    for (std::size_t i = 0; i < comp_[0].size(); ++i) {
        double d = comp_[XX][i] * comp_[XX][i] + comp_[YY][i] * comp_[YY][i] +
                   comp_[ZZ][i] * comp_[ZZ][i] +
                   2.0 * (comp_[XY][i] * comp_[XY][i] + comp_[XZ][i] * comp_[XZ][i] +
                          comp_[YZ][i] * comp_[YZ][i]);
        out[i] = std::sqrt(d);
    }
}

std::array<double, 6> SymTensorField::mean() const {
    std::array<double, 6> m{};
    for (int c = 0; c < 6; ++c) m[c] = det_sum(comp_[c]) / double(comp_[c].size());
    return m;
}

void to_spectral(const ScalarField& f, cplx* spec) {
    Fft::get(f.grid()).forward(f.data(), spec);
}

void to_physical(const cplx* spec, ScalarField& f) {
    Fft::get(f.grid()).backward(spec, f.data());
}

void for_each_mode(const Grid3& g, const std::function<void(int, int, int, std::size_t)>& fn) {
    mode_map(g, fn);
}

// --- operator kernels --------------------------------------------------------

namespace {

// Transform nc components, apply fn(k, in[nc] -> out[mc]), transform back.
template <int NC, int MC, class F>
void spectral_op(const Grid3& g, const double* const in[NC], double* const out[MC], F&& fn) {
    const Fft& fft = Fft::get(g);
    std::array<std::unique_ptr<SpecBuf>, NC> sin;
    std::array<std::unique_ptr<SpecBuf>, MC> sout;
    for (int c = 0; c < NC; ++c) {
        sin[c] = std::make_unique<SpecBuf>(g);
        fft.forward(in[c], sin[c]->data());
    }
    for (int c = 0; c < MC; ++c) sout[c] = std::make_unique<SpecBuf>(g);
    std::array<cplx*, NC> pin;
    std::array<cplx*, MC> pout;
    for (int c = 0; c < NC; ++c) pin[c] = sin[c]->data();
    for (int c = 0; c < MC; ++c) pout[c] = sout[c]->data();

    mode_map(g, [&](int kx, int ky, int kz, std::size_t m) {
        std::array<cplx, NC> a;
        std::array<cplx, MC> b{};
        if (in_band(g, kx, ky, kz)) {
            for (int c = 0; c < NC; ++c) a[c] = pin[c][m];
            fn(kx, ky, kz, a, b);
        }
        for (int c = 0; c < MC; ++c) pout[c][m] = b[c];
    });
    for (int c = 0; c < MC; ++c) fft.backward(pout[c], out[c]);
}

}  // namespace

VectorField leray_project(const VectorField& v) {
    VectorField out(v.grid());
    const double* in[3] = {v.data(0), v.data(1), v.data(2)};
    double* ou[3] = {out.data(0), out.data(1), out.data(2)};
    spectral_op<3, 3>(v.grid(), in, ou,
                      [](int kx, int ky, int kz, const std::array<cplx, 3>& a, std::array<cplx, 3>& b) {
                          const double k2 = double(kx) * kx + double(ky) * ky + double(kz) * kz;
                          if (k2 == 0.0) { b = a; return; }
                          const cplx kd = double(kx) * a[0] + double(ky) * a[1] + double(kz) * a[2];
                          b[0] = a[0] - double(kx) * kd / k2;
                          b[1] = a[1] - double(ky) * kd / k2;
                          b[2] = a[2] - double(kz) * kd / k2;
                      });
    return out;
}

ScalarField spectral_filter(const ScalarField& f, FilterKind kind, double cutoff) {
    ScalarField out(f.grid());
    const double* in[1] = {f.data()};
    double* ou[1] = {out.data()};
    spectral_op<1, 1>(f.grid(), in, ou,
                      [&](int kx, int ky, int kz, const std::array<cplx, 1>& a, std::array<cplx, 1>& b) {
                          // frequency magnitude measured in the max norm, so
                          // LeqF(n/2) keeps every representable mode
                          const double kk = std::max({std::abs(double(kx)), std::abs(double(ky)), std::abs(double(kz))});
                          bool keep = true;
                          switch (kind) {
                              case FilterKind::LeqF: keep = kk <= cutoff; break;
                              case FilterKind::Neq0: keep = kk != 0.0; break;
                              case FilterKind::GeqK: keep = kk >= cutoff; break;
                          }
                          if (keep) b = a;
                      });
    return out;
}

VectorField spectral_filter(const VectorField& f, FilterKind kind, double cutoff) {
    VectorField out(f.grid());
    for (int c = 0; c < 3; ++c) {
        ScalarField s(f.grid());
        std::copy(f.comp(c).begin(), f.comp(c).end(), s.data());
        ScalarField r = spectral_filter(s, kind, cutoff);
        std::copy(r.data(), r.data() + r.size(), out.data(c));
    }
    return out;
}

SymTensorField spectral_filter(const SymTensorField& f, FilterKind kind, double cutoff) {
    SymTensorField out(f.grid());
    for (int c = 0; c < 6; ++c) {
        ScalarField s(f.grid());
        std::copy(f.comp(c).begin(), f.comp(c).end(), s.data());
        ScalarField r = spectral_filter(s, kind, cutoff);
        std::copy(r.data(), r.data() + r.size(), out.data(c));
    }
    return out;
}

VectorField heat_semigroup(const VectorField& u0, double t) {
    if (t < 0.0) throw NegativeTime("heat_semigroup needs t >= 0");
    VectorField out(u0.grid());
    const double* in[3] = {u0.data(0), u0.data(1), u0.data(2)};
    double* ou[3] = {out.data(0), out.data(1), out.data(2)};
    spectral_op<3, 3>(u0.grid(), in, ou,
                      [t](int kx, int ky, int kz, const std::array<cplx, 3>& a, std::array<cplx, 3>& b) {
                          const double k2 = double(kx) * kx + double(ky) * ky + double(kz) * kz;
                          const double w = std::exp(-k2 * t);
                          for (int c = 0; c < 3; ++c) b[c] = w * a[c];
                      });
    return out;
}

SymTensorField inv_divergence(const VectorField& v) {
    // mean must vanish for Delta^{-1}
    auto m = v.mean();
    double mm = std::sqrt(m[0] * m[0] + m[1] * m[1] + m[2] * m[2]);
    double scale = 0.0;
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < v.size(); ++i) scale = std::max(scale, std::abs(v.data(c)[i]));
    if (mm > 1e-12 * std::max(scale, 1e-300))
        throw NonZeroMean("inv_divergence requires a mean-zero field");

    SymTensorField out(v.grid());
    const double* in[3] = {v.data(0), v.data(1), v.data(2)};
    double* ou[6] = {out.data(0), out.data(1), out.data(2), out.data(3), out.data(4), out.data(5)};
    spectral_op<3, 6>(v.grid(), in, ou,
                      [](int kx, int ky, int kz, const std::array<cplx, 3>& a, std::array<cplx, 6>& b) {
                          const double k[3] = {double(kx), double(ky), double(kz)};
                          const double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
                          if (k2 == 0.0) return;
                          const cplx I(0.0, 1.0);
                          const cplx kdv = k[0] * a[0] + k[1] * a[1] + k[2] * a[2];
                          const cplx s = -I * kdv / k2;  // div Delta^{-1} v
                          auto entry = [&](int p, int q) {
                              cplx val = -I * (k[p] * a[q] + k[q] * a[p]) / k2;
                              double dpq = (p == q) ? 1.0 : 0.0;
                              val -= 0.5 * (dpq + k[p] * k[q] / k2) * s;
                              return val;
                          };
                          b[SymTensorField::XX] = entry(0, 0);
                          b[SymTensorField::YY] = entry(1, 1);
                          b[SymTensorField::ZZ] = entry(2, 2);
                          b[SymTensorField::XY] = entry(0, 1);
                          b[SymTensorField::XZ] = entry(0, 2);
                          b[SymTensorField::YZ] = entry(1, 2);
                      });
    return out;
}

VectorField gradient(const ScalarField& f) {
    VectorField out(f.grid());
    const double* in[1] = {f.data()};
    double* ou[3] = {out.data(0), out.data(1), out.data(2)};
    spectral_op<1, 3>(f.grid(), in, ou,
                      [](int kx, int ky, int kz, const std::array<cplx, 1>& a, std::array<cplx, 3>& b) {
                          const cplx I(0.0, 1.0);
                          b[0] = I * double(kx) * a[0];
                          b[1] = I * double(ky) * a[0];
                          b[2] = I * double(kz) * a[0];
                      });
    return out;
}

ScalarField divergence(const VectorField& v) {
    ScalarField out(v.grid());
    const double* in[3] = {v.data(0), v.data(1), v.data(2)};
    double* ou[1] = {out.data()};
    spectral_op<3, 1>(v.grid(), in, ou,
                      [](int kx, int ky, int kz, const std::array<cplx, 3>& a, std::array<cplx, 1>& b) {
                          const cplx I(0.0, 1.0);
                          b[0] = I * (double(kx) * a[0] + double(ky) * a[1] + double(kz) * a[2]);
                      });
    return out;
}

VectorField divergence(const SymTensorField& t) {
    VectorField out(t.grid());
    const double* in[6] = {t.data(0), t.data(1), t.data(2), t.data(3), t.data(4), t.data(5)};
    double* ou[3] = {out.data(0), out.data(1), out.data(2)};
    spectral_op<6, 3>(t.grid(), in, ou,
                      [](int kx, int ky, int kz, const std::array<cplx, 6>& a, std::array<cplx, 3>& b) {
                          const cplx I(0.0, 1.0);
                          const double k0 = kx, k1 = ky, k2 = kz;
                          // row i of div: sum_j ik_j T_ij
                          b[0] = I * (k0 * a[SymTensorField::XX] + k1 * a[SymTensorField::XY] + k2 * a[SymTensorField::XZ]);
                          b[1] = I * (k0 * a[SymTensorField::XY] + k1 * a[SymTensorField::YY] + k2 * a[SymTensorField::YZ]);
                          b[2] = I * (k0 * a[SymTensorField::XZ] + k1 * a[SymTensorField::YZ] + k2 * a[SymTensorField::ZZ]);
                      });
    return out;
}

VectorField curl(const VectorField& v) {
    VectorField out(v.grid());
    const double* in[3] = {v.data(0), v.data(1), v.data(2)};
    double* ou[3] = {out.data(0), out.data(1), out.data(2)};
    spectral_op<3, 3>(v.grid(), in, ou,
                      [](int kx, int ky, int kz, const std::array<cplx, 3>& a, std::array<cplx, 3>& b) {
                          const cplx I(0.0, 1.0);
                          const double k0 = kx, k1 = ky, k2 = kz;
                          b[0] = I * (k1 * a[2] - k2 * a[1]);
                          b[1] = I * (k2 * a[0] - k0 * a[2]);
                          b[2] = I * (k0 * a[1] - k1 * a[0]);
                      });
    return out;
}

VectorField curl_curl(const VectorField& v) {
    VectorField out(v.grid());
    const double* in[3] = {v.data(0), v.data(1), v.data(2)};
    double* ou[3] = {out.data(0), out.data(1), out.data(2)};
    spectral_op<3, 3>(v.grid(), in, ou,
                      [](int kx, int ky, int kz, const std::array<cplx, 3>& a, std::array<cplx, 3>& b) {
                          // curl curl = grad div - Laplacian
                          const double k[3] = {double(kx), double(ky), double(kz)};
                          const double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
                          const cplx kdv = k[0] * a[0] + k[1] * a[1] + k[2] * a[2];
                          for (int c = 0; c < 3; ++c) b[c] = k2 * a[c] - k[c] * kdv;
                      });
    return out;
}

VectorField laplacian(const VectorField& v) {
    VectorField out(v.grid());
    const double* in[3] = {v.data(0), v.data(1), v.data(2)};
    double* ou[3] = {out.data(0), out.data(1), out.data(2)};
    spectral_op<3, 3>(v.grid(), in, ou,
                      [](int kx, int ky, int kz, const std::array<cplx, 3>& a, std::array<cplx, 3>& b) {
                          const double k2 = double(kx) * kx + double(ky) * ky + double(kz) * kz;
                          for (int c = 0; c < 3; ++c) b[c] = -k2 * a[c];
                      });
    return out;
}

ScalarField bessel_potential(const ScalarField& f, double s) {
    ScalarField out(f.grid());
    const double* in[1] = {f.data()};
    double* ou[1] = {out.data()};
    spectral_op<1, 1>(f.grid(), in, ou,
                      [s](int kx, int ky, int kz, const std::array<cplx, 1>& a, std::array<cplx, 1>& b) {
                          const double k2 = double(kx) * kx + double(ky) * ky + double(kz) * kz;
                          b[0] = std::pow(1.0 + k2, s / 2.0) * a[0];
                      });
    return out;
}

VectorField bessel_potential(const VectorField& f, double s) {
    VectorField out(f.grid());
    for (int c = 0; c < 3; ++c) {
        ScalarField t(f.grid());
        std::copy(f.comp(c).begin(), f.comp(c).end(), t.data());
        ScalarField r = bessel_potential(t, s);
        std::copy(r.data(), r.data() + r.size(), out.data(c));
    }
    return out;
}

VectorField band_project(const VectorField& v) {
    VectorField out(v.grid());
    const double* in[3] = {v.data(0), v.data(1), v.data(2)};
    double* ou[3] = {out.data(0), out.data(1), out.data(2)};
    spectral_op<3, 3>(v.grid(), in, ou,
                      [](int, int, int, const std::array<cplx, 3>& a, std::array<cplx, 3>& b) { b = a; });
    return out;
}

SymTensorField traceless_tensor_product(const VectorField& f, const VectorField& g) {
    if (f.grid() != g.grid()) throw GridMismatch("traceless_tensor_product");
    SymTensorField out(f.grid());
    const std::size_t np = f.size();
    for (std::size_t i = 0; i < np; ++i) {
        const double fx = f.data(0)[i], fy = f.data(1)[i], fz = f.data(2)[i];
        const double gx = g.data(0)[i], gy = g.data(1)[i], gz = g.data(2)[i];
        const double tr3 = (fx * gx + fy * gy + fz * gz) / 3.0;
        out.data(SymTensorField::XX)[i] = fx * gx - tr3;
        out.data(SymTensorField::YY)[i] = fy * gy - tr3;
        out.data(SymTensorField::ZZ)[i] = fz * gz - tr3;
        out.data(SymTensorField::XY)[i] = 0.5 * (fx * gy + fy * gx);
        out.data(SymTensorField::XZ)[i] = 0.5 * (fx * gz + fz * gx);
        out.data(SymTensorField::YZ)[i] = 0.5 * (fy * gz + fz * gy);
    }
    return out;
}

SymTensorField sym_tensor_product(const VectorField& f, const VectorField& g) {
    if (f.grid() != g.grid()) throw GridMismatch("sym_tensor_product");
    SymTensorField out(f.grid());
    const std::size_t np = f.size();
    for (std::size_t i = 0; i < np; ++i) {
        const double fx = f.data(0)[i], fy = f.data(1)[i], fz = f.data(2)[i];
        const double gx = g.data(0)[i], gy = g.data(1)[i], gz = g.data(2)[i];
        out.data(SymTensorField::XX)[i] = fx * gx;
        out.data(SymTensorField::YY)[i] = fy * gy;
        out.data(SymTensorField::ZZ)[i] = fz * gz;
        out.data(SymTensorField::XY)[i] = 0.5 * (fx * gy + fy * gx);
        out.data(SymTensorField::XZ)[i] = 0.5 * (fx * gz + fz * gx);
        out.data(SymTensorField::YZ)[i] = 0.5 * (fy * gz + fz * gy);
    }
    return out;
}

SymTensorField traceless_tensor_product_dealiased(const VectorField& f, const VectorField& g) {
    SymTensorField raw = traceless_tensor_product(f, g);
    return spectral_filter(raw, FilterKind::LeqF, f.grid().dealias_cutoff());
}

void axpy(double a, const VectorField& x, VectorField& y) {
    if (x.grid() != y.grid()) throw GridMismatch("axpy");
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < x.size(); ++i) y.data(c)[i] += a * x.data(c)[i];
}

void axpy(double a, const SymTensorField& x, SymTensorField& y) {
    if (x.grid() != y.grid()) throw GridMismatch("axpy");
    for (int c = 0; c < 6; ++c)
        for (std::size_t i = 0; i < x.size(); ++i) y.data(c)[i] += a * x.data(c)[i];
}

double dot_l2(const VectorField& a, const VectorField& b) {
    if (a.grid() != b.grid()) throw GridMismatch("dot_l2");
    std::vector<double> prod(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        prod[i] = a.data(0)[i] * b.data(0)[i] + a.data(1)[i] * b.data(1)[i] + a.data(2)[i] * b.data(2)[i];
    return det_sum(prod) * a.grid().cell_volume();
}

double divergence_linf(const VectorField& v) {
    ScalarField d = divergence(v);
    return d.max_abs();
}

bool is_mean_zero(const VectorField& v, double rel_tol) {
    auto m = v.mean();
    double mm = std::sqrt(m[0] * m[0] + m[1] * m[1] + m[2] * m[2]);
    double scale = 1e-300;
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < v.size(); ++i) scale = std::max(scale, std::abs(v.data(c)[i]));
    return mm <= rel_tol * scale;
}

}  // namespace wns
