#pragma once

#include <vector>

#include "wns/errors.hpp"

namespace wns {

/// Jet profile pair: a 1D axial profile psi (mean zero) and a 2D transverse
/// pair (Phi, phi = -Lap Phi), normalized so that
///   (1/2pi)  int psi_{r_par}^2  = 1   over one period,
///   (1/4pi^2) int phi_{r_perp}^2 = 1.
///
/// Two kinds:
///  - Bump: the classical compactly supported template exp(-1/(1-|x|^2));
///    scaled copies concentrate on scale r (requires r < pi so the
///    periodization does not self-overlap). Supports are genuinely compact.
///  - Trig: band-limited (trigonometric polynomial) profiles built from
///    Fejer windows. They sample exactly on coarse grids (no aliasing up to
///    the stated bandwidth) but are not compactly supported; concentration
///    is set by the bandwidths, not by r, and the scaled evaluations ignore
///    the r arguments.
class Profiles {
public:
    enum class Kind { Bump, Trig };

    static Profiles bump();
    static Profiles trig(int m_par, int m_perp);

    Kind kind() const { return kind_; }
    int m_par() const { return m_par_; }
    int m_perp() const { return m_perp_; }

    // scaled profile values at periodic coordinates (radians)
    double psi(double s, double r_par) const;
    double psi_prime(double s, double r_par) const;  // d/ds
    double Phi(double y1, double y2, double r_perp) const;
    double Phi_d1(double y1, double y2, double r_perp) const;
    double Phi_d2(double y1, double y2, double r_perp) const;
    double phi(double y1, double y2, double r_perp) const;
    double phi_d1(double y1, double y2, double r_perp) const;
    double phi_d2(double y1, double y2, double r_perp) const;

    /// Max trig bandwidth per axis (0 for bump kind).
    int bandwidth_par() const { return kind_ == Kind::Trig ? m_par_ : 0; }
    int bandwidth_perp() const { return kind_ == Kind::Trig ? 2 * m_perp_ : 0; }

    /// Support radius of the scaled transverse profile (pi for trig kind).
    double support_perp(double r_perp) const;

private:
    Profiles() = default;
    Kind kind_ = Kind::Bump;
    int m_par_ = 0, m_perp_ = 0;
    double c_psi_ = 1.0;   // bump normalizations
    double c_phi_ = 1.0;
    std::vector<double> psi_coef_;   // trig: sin(j s) coefficients, j = 1..m
    std::vector<double> win_coef_;   // trig: cos(j y) window coefficients, j = 0..m
    double trig_phi_scale_ = 1.0;

    double window(double y) const;    // trig 2D factor
    double window_d(double y) const;
    double window_dd(double y) const;
    double window_ddd(double y) const;
};

}  // namespace wns
