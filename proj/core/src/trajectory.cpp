#include "wns/trajectory.hpp"

#include <cmath>

namespace wns {

namespace {

double bump01(double s) {
    if (s <= 0.0 || s >= 1.0) return 0.0;
    return std::exp(-1.0 / (s * (1.0 - s)));
}

double bump_radial(double r) {  // support |r| < 1
    if (r >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - r * r));
}

}  // namespace

std::vector<double> causal_time_weights(double ell, double dt) {
    const std::size_t J = std::size_t(std::ceil(ell / dt - 1e-12));
    std::vector<double> w(std::max<std::size_t>(J, 1));
    double sum = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        w[i] = bump01((double(i) + 0.5) / double(w.size()));
        sum += w[i];
    }
    for (double& x : w) x /= sum;
    return w;
}

namespace {

// Radial Fourier transform B(rho) = 4 pi int r^2 phi(r) sinc(rho r) dr of
// the unit-mass bump of radius 1, tabulated once and shared by all widths
// (multiplier at width ell is B(k ell)).
struct BumpFtTable {
    static constexpr double rho_max = 512.0;
    std::vector<double> val;

    BumpFtTable() {
        const int nr = 1024;
        const double dr = 1.0 / nr;
        std::vector<double> rw(nr), rv(nr);
        double mass = 0.0;
        for (int i = 0; i < nr; ++i) {
            const double r = (i + 0.5) * dr;
            rv[i] = r;
            rw[i] = r * r * bump_radial(r) * dr;
            mass += rw[i];
        }
        for (double& x : rw) x /= mass;

        const int nt = 1 << 16;
        val.resize(nt + 1);
        for (int j = 0; j <= nt; ++j) {
            const double rho = rho_max * double(j) / nt;
            double acc = 0.0;
            for (int i = 0; i < nr; ++i) {
                const double x = rho * rv[i];
                const double sinc = (x < 1e-8) ? 1.0 - x * x / 6.0 : std::sin(x) / x;
                acc += rw[i] * sinc;
            }
            val[j] = acc;
        }
    }

    double eval(double rho) const {
        if (rho >= rho_max) return 0.0;
        const double x = rho / rho_max * double(val.size() - 1);
        const std::size_t j = std::size_t(x);
        if (j + 1 >= val.size()) return val.back();
        const double f = x - double(j);
        return val[j] * (1.0 - f) + val[j + 1] * f;
    }
};

const BumpFtTable& bump_ft() {
    static BumpFtTable t;
    return t;
}

}  // namespace

SpaceMollifier::SpaceMollifier(double ell) : ell_(ell) { bump_ft(); }

double SpaceMollifier::multiplier(double kmag) const { return bump_ft().eval(kmag * ell_); }

namespace {

template <class FieldT, int NC>
void apply_moll(const SpaceMollifier& m, const FieldT& in, FieldT& out) {
    const Grid3& g = in.grid();
    if (out.grid() != g) out = FieldT(g);
    const Fft& fft = Fft::get(g);
    SpecBuf buf(g);
    const int h = g.n / 2;
    for (int c = 0; c < NC; ++c) {
        fft.forward(in.data(c), buf.data());
        cplx* spec = buf.data();
        for_each_mode(g, [&](int kx, int ky, int kz, std::size_t idx) {
            if (kx >= h || std::abs(ky) >= h || std::abs(kz) >= h) { spec[idx] = 0.0; return; }
            const double kk = std::sqrt(double(kx) * kx + double(ky) * ky + double(kz) * kz);
            spec[idx] *= m.multiplier(kk);
        });
        fft.backward(buf.data(), out.data(c));
    }
}

}  // namespace

void SpaceMollifier::apply(const VectorField& in, VectorField& out) const {
    apply_moll<VectorField, 3>(*this, in, out);
}

void SpaceMollifier::apply(const SymTensorField& in, SymTensorField& out) const {
    apply_moll<SymTensorField, 6>(*this, in, out);
}

}  // namespace wns
