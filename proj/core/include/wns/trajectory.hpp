#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "wns/errors.hpp"
#include "wns/field.hpp"
#include "wns/norms.hpp"

namespace wns {

/// Uniformly sampled time series of field values on [t_lo, t_hi].
template <class T>
class TimeTrajectory {
public:
    TimeTrajectory() = default;
    TimeTrajectory(double t_lo, double dt) : t_lo_(t_lo), dt_(dt) {}
    TimeTrajectory(double t_lo, double dt, std::vector<T> samples)
        : t_lo_(t_lo), dt_(dt), samples_(std::move(samples)) {}

    double t_lo() const { return t_lo_; }
    double dt() const { return dt_; }
    double t_hi() const { return t_lo_ + dt_ * (steps()); }
    std::size_t size() const { return samples_.size(); }
    long steps() const { return long(samples_.size()) - 1; }

    void push_back(T v) { samples_.push_back(std::move(v)); }
    T& at(std::size_t i) { return samples_[i]; }
    const T& at(std::size_t i) const { return samples_[i]; }
    double time(std::size_t i) const { return t_lo_ + dt_ * double(i); }

    std::size_t index_of(double t) const {
        double x = (t - t_lo_) / dt_;
        long i = std::lround(x);
        if (i < 0 || i >= long(samples_.size()) || std::abs(x - double(i)) > 1e-9)
            throw OutOfRange("time not on trajectory grid");
        return std::size_t(i);
    }

    const std::vector<T>& samples() const { return samples_; }
    std::vector<T>& samples() { return samples_; }

private:
    double t_lo_ = 0.0;
    double dt_ = 1.0;
    std::vector<T> samples_;
};

/// Causal time-mollifier weights: nodes t - i*dt, i = 1..J, bump profile on
/// (0,1), unit mass. J = ceil(ell/dt), so the window is exactly
/// representable on the grid.
std::vector<double> causal_time_weights(double ell, double dt);

/// Spectral multiplier of the radial space mollifier of radius ell
/// (unit-mass compact bump); m(0) = 1.
class SpaceMollifier {
public:
    explicit SpaceMollifier(double ell);
    double multiplier(double kmag) const;
    void apply(const VectorField& in, VectorField& out) const;
    void apply(const SymTensorField& in, SymTensorField& out) const;

private:
    double ell_;
};

/// One-sided space-time mollification. The input must reach back at least
/// ell before the first output time; output covers
/// [traj.t_lo + J*dt, traj.t_hi].
template <class T>
TimeTrajectory<T> mollify_onesided(const TimeTrajectory<T>& traj, double ell) {
    if (ell < traj.dt() - 1e-12) throw WindowTooShort("mollifier width below dt");
    const std::vector<double> w = causal_time_weights(ell, traj.dt());
    const std::size_t J = w.size();
    if (traj.size() < J + 1) throw WindowTooShort("trajectory shorter than mollifier history");
    SpaceMollifier moll(ell);

    TimeTrajectory<T> out(traj.t_lo() + double(J) * traj.dt(), traj.dt());
    for (std::size_t j = J; j < traj.size(); ++j) {
        T acc = traj.at(j - 1);
        acc *= w[0];
        for (std::size_t i = 2; i <= J; ++i) axpy(w[i - 1], traj.at(j - i), acc);
        T sm(acc.grid());
        moll.apply(acc, sm);
        out.push_back(std::move(sm));
    }
    return out;
}

/// Time-Hoelder seminorm sup_{s != t} ||f(s)-f(t)||/|t-s|^alpha plus the sup
/// norm, over all discrete sample pairs; base_norm supplies ||.||_E.
template <class T>
double holder_time_norm(const TimeTrajectory<T>& traj, double alpha,
                        const std::function<double(const T&)>& base_norm,
                        const std::function<double(const T&, const T&)>& diff_norm) {
    double sup = 0.0;
    for (std::size_t i = 0; i < traj.size(); ++i) sup = std::max(sup, base_norm(traj.at(i)));
    double semi = 0.0;
    for (std::size_t i = 0; i < traj.size(); ++i)
        for (std::size_t j = i + 1; j < traj.size(); ++j) {
            const double dtij = traj.dt() * double(j - i);
            semi = std::max(semi, diff_norm(traj.at(i), traj.at(j)) / std::pow(dtij, alpha));
        }
    return semi + sup;
}

}  // namespace wns
