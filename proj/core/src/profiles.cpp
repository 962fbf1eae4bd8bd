#include "wns/profiles.hpp"

#include <cmath>

#include "wns/grid.hpp"

namespace wns {

namespace {

// the template bump exp(-1/(1-r^2)) and its radial derivatives
double bmp(double r) {
    const double u = 1.0 - r * r;
    if (u <= 0.0) return 0.0;
    return std::exp(-1.0 / u);
}

double bmp1(double r) {
    const double u = 1.0 - r * r;
    if (u <= 0.0) return 0.0;
    return bmp(r) * (-2.0 * r / (u * u));
}

double bmp2(double r) {
    const double u = 1.0 - r * r;
    if (u <= 0.0) return 0.0;
    const double e1 = -2.0 * r / (u * u);
    const double e2 = -2.0 / (u * u) - 8.0 * r * r / (u * u * u);
    return bmp(r) * (e1 * e1 + e2);
}

double bmp3(double r) {
    const double u = 1.0 - r * r;
    if (u <= 0.0) return 0.0;
    const double e1 = -2.0 * r / (u * u);
    const double e2 = -2.0 / (u * u) - 8.0 * r * r / (u * u * u);
    const double e3 = -24.0 * r / (u * u * u) - 48.0 * r * r * r / (u * u * u * u);
    return bmp(r) * (e1 * e1 * e1 + 3.0 * e1 * e2 + e3);
}

// unit transverse profile: t_phi = -(Lap bump) in 2D = -(b'' + b'/rho)
double tphi(double rho) {
    if (rho >= 1.0) return 0.0;
    if (rho < 1e-9) return -2.0 * bmp2(rho);  // b'/rho -> b''(0)
    return -(bmp2(rho) + bmp1(rho) / rho);
}

double tphi1(double rho) {  // d/drho
    if (rho >= 1.0) return 0.0;
    if (rho < 1e-9) return 0.0;  // even function
    return -(bmp3(rho) + (bmp2(rho) * rho - bmp1(rho)) / (rho * rho));
}

double wrap_pi(double s) {
    s = std::fmod(s, kTwoPi);
    if (s > M_PI) s -= kTwoPi;
    if (s < -M_PI) s += kTwoPi;
    return s;
}

double simpson01(double (*f)(double), double a, double b, int n) {
    // n even
    const double h = (b - a) / n;
    double acc = f(a) + f(b);
    for (int i = 1; i < n; ++i) acc += f(a + i * h) * ((i % 2) ? 4.0 : 2.0);
    return acc * h / 3.0;
}

double tpsi_sq(double s) { const double v = bmp1(s); return v * v; }
double tphi_sq_rho(double rho) { const double v = tphi(rho); return v * v * rho; }

}  // namespace

Profiles Profiles::bump() {
    Profiles p;
    p.kind_ = Kind::Bump;
    const double ipsi2 = simpson01(&tpsi_sq, -1.0, 1.0, 1 << 14);
    p.c_psi_ = std::sqrt(kTwoPi / ipsi2);
    const double iphi2 = kTwoPi * simpson01(&tphi_sq_rho, 0.0, 1.0, 1 << 14);
    p.c_phi_ = kTwoPi / std::sqrt(iphi2);
    return p;
}

Profiles Profiles::trig(int m_par, int m_perp) {
    if (m_par < 1 || m_perp < 1) throw Error("trig profiles need bandwidth >= 1");
    Profiles p;
    p.kind_ = Kind::Trig;
    p.m_par_ = m_par;
    p.m_perp_ = m_perp;

    // psi: derivative of the Fejer kernel, sine series, normalized so that
    // (1/2pi) int psi^2 = sum b_j^2 / 2 = 1
    p.psi_coef_.resize(m_par + 1, 0.0);
    double s2 = 0.0;
    for (int j = 1; j <= m_par; ++j) {
        p.psi_coef_[j] = -2.0 * j * (1.0 - double(j) / (m_par + 1));
        s2 += p.psi_coef_[j] * p.psi_coef_[j];
    }
    const double cn = std::sqrt(2.0 / s2);
    for (double& c : p.psi_coef_) c *= cn;

    // 2D window: Fejer kernel product; phi = -Lap(Phi)
    p.win_coef_.resize(m_perp + 1, 0.0);
    p.win_coef_[0] = 1.0;
    for (int j = 1; j <= m_perp; ++j) p.win_coef_[j] = 2.0 * (1.0 - double(j) / (m_perp + 1));

    // normalization via Parseval: phi_hat(j1,j2) = (j1^2+j2^2) W(j1) W(j2)
    auto what = [&](int j) {
        const int a = std::abs(j);
        if (a > m_perp) return 0.0;
        return (a == 0) ? p.win_coef_[0] : p.win_coef_[a] / 2.0;
    };
    double s = 0.0;
    for (int j1 = -m_perp; j1 <= m_perp; ++j1)
        for (int j2 = -m_perp; j2 <= m_perp; ++j2) {
            const double k2 = double(j1) * j1 + double(j2) * j2;
            const double c = k2 * what(j1) * what(j2);
            s += c * c;
        }
    p.trig_phi_scale_ = 1.0 / std::sqrt(s);
    return p;
}

double Profiles::window(double y) const {
    double acc = win_coef_[0];
    for (int j = 1; j <= m_perp_; ++j) acc += win_coef_[j] * std::cos(j * y);
    return acc;
}

double Profiles::window_d(double y) const {
    double acc = 0.0;
    for (int j = 1; j <= m_perp_; ++j) acc -= j * win_coef_[j] * std::sin(j * y);
    return acc;
}

double Profiles::window_dd(double y) const {
    double acc = 0.0;
    for (int j = 1; j <= m_perp_; ++j) acc -= double(j) * j * win_coef_[j] * std::cos(j * y);
    return acc;
}

double Profiles::window_ddd(double y) const {
    double acc = 0.0;
    for (int j = 1; j <= m_perp_; ++j) acc += double(j) * j * j * win_coef_[j] * std::sin(j * y);
    return acc;
}

double Profiles::psi(double s, double r_par) const {
    if (kind_ == Kind::Trig) {
        double acc = 0.0;
        for (int j = 1; j <= m_par_; ++j) acc += psi_coef_[j] * std::sin(j * s);
        return acc;
    }
    return c_psi_ / std::sqrt(r_par) * bmp1(wrap_pi(s) / r_par);
}

double Profiles::psi_prime(double s, double r_par) const {
    if (kind_ == Kind::Trig) {
        double acc = 0.0;
        for (int j = 1; j <= m_par_; ++j) acc += j * psi_coef_[j] * std::cos(j * s);
        return acc;
    }
    return c_psi_ / (r_par * std::sqrt(r_par)) * bmp2(wrap_pi(s) / r_par);
}

double Profiles::Phi(double y1, double y2, double r_perp) const {
    // the pair must satisfy phi = -r^2 Lap(Phi) so the corrector identity
    // W + Wc = curl curl V holds; for the trig kind Phi is the exact
    // zero-mean potential of phi
    if (kind_ == Kind::Trig)
        return trig_phi_scale_ / (r_perp * r_perp) * (window(y1) * window(y2) - 1.0);
    const double w1 = wrap_pi(y1), w2 = wrap_pi(y2);
    const double rho = std::sqrt(w1 * w1 + w2 * w2);
    return c_phi_ / r_perp * bmp(rho / r_perp);
}

double Profiles::Phi_d1(double y1, double y2, double r_perp) const {
    if (kind_ == Kind::Trig)
        return trig_phi_scale_ / (r_perp * r_perp) * window_d(y1) * window(y2);
    const double w1 = wrap_pi(y1), w2 = wrap_pi(y2);
    const double rho = std::sqrt(w1 * w1 + w2 * w2);
    if (rho < 1e-12) return 0.0;
    return c_phi_ / (r_perp * r_perp) * bmp1(rho / r_perp) * (w1 / rho);
}

double Profiles::Phi_d2(double y1, double y2, double r_perp) const {
    if (kind_ == Kind::Trig)
        return trig_phi_scale_ / (r_perp * r_perp) * window(y1) * window_d(y2);
    const double w1 = wrap_pi(y1), w2 = wrap_pi(y2);
    const double rho = std::sqrt(w1 * w1 + w2 * w2);
    if (rho < 1e-12) return 0.0;
    return c_phi_ / (r_perp * r_perp) * bmp1(rho / r_perp) * (w2 / rho);
}

double Profiles::phi(double y1, double y2, double r_perp) const {
    if (kind_ == Kind::Trig)
        return -trig_phi_scale_ * (window_dd(y1) * window(y2) + window(y1) * window_dd(y2));
    const double w1 = wrap_pi(y1), w2 = wrap_pi(y2);
    const double rho = std::sqrt(w1 * w1 + w2 * w2);
    return c_phi_ / r_perp * tphi(rho / r_perp);
}

double Profiles::phi_d1(double y1, double y2, double r_perp) const {
    if (kind_ == Kind::Trig)
        return -trig_phi_scale_ * (window_ddd(y1) * window(y2) + window_d(y1) * window_dd(y2));
    const double w1 = wrap_pi(y1), w2 = wrap_pi(y2);
    const double rho = std::sqrt(w1 * w1 + w2 * w2);
    if (rho < 1e-12) return 0.0;
    return c_phi_ / (r_perp * r_perp) * tphi1(rho / r_perp) * (w1 / rho);
}

double Profiles::phi_d2(double y1, double y2, double r_perp) const {
    if (kind_ == Kind::Trig)
        return -trig_phi_scale_ * (window_dd(y1) * window_d(y2) + window(y1) * window_ddd(y2));
    const double w1 = wrap_pi(y1), w2 = wrap_pi(y2);
    const double rho = std::sqrt(w1 * w1 + w2 * w2);
    if (rho < 1e-12) return 0.0;
    return c_phi_ / (r_perp * r_perp) * tphi1(rho / r_perp) * (w2 / rho);
}

double Profiles::support_perp(double r_perp) const {
    return kind_ == Kind::Bump ? r_perp : M_PI;
}

}  // namespace wns
