#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "wns/errors.hpp"

namespace wns {

/// Iteration parameter ladder lambda_q = a^(b^q), delta_q =
/// lambda_1^{2 beta} lambda_q^{-2 beta}, with the mollification scale
/// ell_q = lambda_{q+1}^{-3 alpha/2} lambda_q^{-2}.
struct ParamSet {
    int a = 2;
    int b = 7;
    double alpha = 0.125;
    double beta = 0.01;
    // paper-regime a is too large for any float type; when log_a > 0 it
    // overrides a and the ladder is evaluated in log space
    double log_a = 0.0;
    enum class Regime { Paper, Desk };
    Regime regime = Regime::Desk;
    double m0 = 1.0;  // calibrated on the first perturbation sweep

    double ln_a() const { return log_a > 0.0 ? log_a : std::log(double(a)); }
    double log_lambda(int q) const { return std::pow(double(b), q) * ln_a(); }
    double lambda(int q) const {
        const double l = log_lambda(q);
        if (l > 700.0) return kBig;
        return std::exp(l);
    }
    double delta(int q) const {
        // delta_1 = 1 by construction
        return std::exp(2.0 * beta * (log_lambda(1) - log_lambda(q)));
    }
    double ell(int q) const {
        const double l = -1.5 * alpha * log_lambda(q + 1) - 2.0 * log_lambda(q);
        return std::exp(l);
    }
    double t_q(int q) const {
        double t = -2.0;
        for (int r = 1; r <= q; ++r) t += std::sqrt(delta(r));
        return t;
    }
    double f_cut(int q) const {
        const double l = alpha / 8.0 * log_lambda(q + 1);
        return l > 700.0 ? kBig : std::exp(l);
    }

    static constexpr double kBig = 1e300;
};

/// Prescribed kinetic energy profile e(t) on [0, 1], C^1, extended
/// backwards by e(t) = e(0).
struct EnergyProfile {
    double c0 = 4.0;
    double c1 = 0.0;
    std::vector<double> table;  // optional samples on [0,1], overrides affine
    double table_dt = 0.0;

    double e(double t) const {
        const double tc = std::max(t, 0.0);
        if (table.empty()) return c0 + c1 * tc;
        const double x = std::min(tc / table_dt, double(table.size() - 1));
        const std::size_t i = std::size_t(x);
        if (i + 1 >= table.size()) return table.back();
        const double f = x - double(i);
        return table[i] * (1.0 - f) + table[i + 1] * f;
    }
    double e_sup() const {
        if (table.empty()) return c0 + std::max(c1, 0.0);
        double m = 0.0;
        for (double v : table) m = std::max(m, v);
        return m;
    }
    double e_inf() const {
        if (table.empty()) return c0 + std::min(c1, 0.0);
        double m = table[0];
        for (double v : table) m = std::min(m, v);
        return m;
    }
    double de_sup() const {
        if (table.empty()) return std::abs(c1);
        double m = 0.0;
        for (std::size_t i = 1; i < table.size(); ++i)
            m = std::max(m, std::abs(table[i] - table[i - 1]) / table_dt);
        return m;
    }
};

struct LedgerLine {
    std::string name;
    bool pass;
    double lhs, rhs;  // asserted as lhs <= rhs (or exact divisibility, lhs == 0)
};

/// Evaluate every parameter inequality of the two iterations; in the paper
/// regime all lines must pass, the desk regime records failures.
std::vector<LedgerLine> validate_params(const ParamSet& p, const EnergyProfile* profile);

bool all_pass(const std::vector<LedgerLine>& lines);

}  // namespace wns
