#include "wns/jets.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "wns/norms.hpp"

namespace wns {

namespace {

Rat rat_abs(Rat a) { return a.num < 0 ? -a : a; }

// gcd lattice gap of two positive rationals
Rat rat_gcd(Rat a, Rat b) {
    a = rat_abs(a);
    b = rat_abs(b);
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const std::int64_t den = a.den * b.den;
    const std::int64_t g = std::gcd(a.num * b.den, b.num * a.den);
    return Rat(g, den);
}

Rat rat_mod_to_half(Rat c, Rat g) {
    // reduce c modulo g into [-g/2, g/2], return absolute value
    c = rat_abs(c);
    const std::int64_t q = (c.num * g.den) / (c.den * g.num);
    Rat r = c - Rat(q) * g;
    if (r + r == g || rat_abs(r + r).num * g.den > g.num * rat_abs(r + r).den) {
        // |r| > g/2
        Rat alt = rat_abs(r - g);
        if (alt.num * r.den < rat_abs(r).num * alt.den) r = alt;
    }
    return rat_abs(r);
}

RatVec3 rat_scale(const RatVec3& v, Rat s) { return {v[0] * s, v[1] * s, v[2] * s}; }

}  // namespace

double JetParams::support_separation() const {
    if (profiles.kind() != Profiles::Kind::Bump) return -1.0;  // no compact support
    const auto& ds = DirectionSet::get();
    const int cell = n_star * kappa;  // tubes per 2pi along each lattice axis
    const Rat h(1, cell);             // lattice step in units of 2pi

    // tube radius in x (units of 2pi): support |y| <= r_perp with
    // y = n_star kappa (x . A)  =>  radius r_perp / (2 pi n_star kappa)
    const double rho = r_perp / (kTwoPi * double(n_star) * double(kappa));

    double min_sep = 1e300;
    for (int d1 = 0; d1 < 6; ++d1)
        for (int d2 = d1 + 1; d2 < 6; ++d2) {
            const auto& f1 = ds.frame(d1);
            const auto& f2 = ds.frame(d2);
            // v = 25 (xi1 x xi2), integer vector
            RatVec3 cr = cross(f1.xi, f2.xi);
            std::array<std::int64_t, 3> v{};
            for (int i = 0; i < 3; ++i) {
                Rat q = cr[i] * Rat(25);
                if (q.den != 1) throw Error("direction cross product not integral at scale 25");
                v[i] = q.num;
            }
            const double vnorm = std::sqrt(double(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]));
            if (vnorm == 0.0) continue;  // parallel (not the case here)

            auto dot_v = [&](const RatVec3& a) {
                return a[0] * Rat(v[0]) + a[1] * Rat(v[1]) + a[2] * Rat(v[2]);
            };
            // lattice gap generators (in units of 2pi): whole-lattice term and
            // the four tube-lattice translations
            Rat g = Rat(std::gcd(std::gcd(std::abs(v[0]), std::abs(v[1])), std::abs(v[2])));
            for (const RatVec3* a : {&f1.a, &f1.b, &f2.a, &f2.b}) {
                Rat contrib = dot_v(rat_scale(*a, h));
                if (!contrib.is_zero()) g = rat_gcd(g, contrib);
            }
            // offset term: shifts are rational multiples of 2pi by
            // construction in assign_shifts
            RatVec3 da{};
            for (int i = 0; i < 3; ++i) {
                const double val = (shifts[d1][i] - shifts[d2][i]) / kTwoPi;
                // shifts are multiples of h/64 by construction; recover exactly
                const std::int64_t num = std::llround(val * double(cell) * 64.0);
                da[i] = Rat(num, std::int64_t(cell) * 64);
            }
            const Rat c0 = dot_v(da);
            const Rat rmin = rat_mod_to_half(c0, g);
            const double dist = kTwoPi * rmin.to_double() / vnorm;
            min_sep = std::min(min_sep, dist - 2.0 * rho * kTwoPi);
        }
    return min_sep;
}

namespace {

void assign_shifts(JetParams& p) {
    // place the six tube families at distinct sublattice offsets, searching
    // (deterministically) for the assignment with the largest certified
    // pairwise separation; offsets are multiples of h/64 so the certificate
    // stays in exact rational arithmetic.
    const int cell = p.n_star * p.kappa;
    const double base = kTwoPi / double(cell) / 64.0;
    std::uint64_t state = 0x9e3779b97f4a7c15ull;
    auto next = [&state]() {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        return int((state >> 33) % 64);
    };
    std::array<Vec3d, 6> best{};
    double best_sep = -1e300;
    const int tries = (p.profiles.kind() == Profiles::Kind::Bump) ? 4000 : 1;
    for (int attempt = 0; attempt < tries; ++attempt) {
        for (int d = 0; d < 6; ++d)
            p.shifts[d] = {base * next(), base * next(), base * next()};
        if (p.profiles.kind() != Profiles::Kind::Bump) return;
        const double sep = p.support_separation();
        if (sep > best_sep) {
            best_sep = sep;
            best = p.shifts;
        }
    }
    p.shifts = best;
    if (best_sep <= 0.0) throw Error("no admissible tube shifts found");
}

}  // namespace

JetParams JetParams::ladder(double lambda, const Profiles& prof) {
    JetParams p;
    p.lambda = lambda;
    p.r_par = std::pow(lambda, -4.0 / 7.0);
    p.r_perp = std::pow(lambda, -6.0 / 7.0);
    p.mu = std::pow(lambda, 9.0 / 7.0);
    const double k = lambda * p.r_perp;
    if (std::abs(k - std::round(k)) > 1e-9 || std::round(k) < 1.0)
        throw NonIntegerPeriod("lambda * r_perp not an integer for this lambda");
    p.kappa = int(std::round(k));
    p.n_star = DirectionSet::get().n_star();
    p.profiles = prof;
    assign_shifts(p);
    return p;
}

JetParams JetParams::custom(double lambda, double r_perp, double r_par, double mu,
                            const Profiles& prof, bool allow_underresolved) {
    JetParams p;
    p.lambda = lambda;
    p.r_perp = r_perp;
    p.r_par = r_par;
    p.mu = mu;
    const double k = lambda * r_perp;
    if (std::abs(k - std::round(k)) > 1e-9 || std::round(k) < 1.0)
        throw NonIntegerPeriod("lambda * r_perp not an integer");
    if (!(r_perp < r_par && r_par < 1.0)) throw Error("need r_perp < r_par < 1");
    p.kappa = int(std::round(k));
    p.n_star = DirectionSet::get().n_star();
    p.profiles = prof;
    p.allow_underresolved = allow_underresolved;
    assign_shifts(p);
    return p;
}

JetBasis::JetBasis(const Grid3& g, const JetParams& p) : grid_(g), params_(p) {
    const auto& ds = DirectionSet::get();
    const int n = g.n;
    if (n % p.kappa != 0)
        throw UnderResolved("grid size must be a multiple of lambda * r_perp");
    if (!p.allow_underresolved && n < 4 * p.n_star * int(std::round(p.lambda)))
        throw UnderResolved("grid too coarse for this jet frequency");

    for (int d = 0; d < 6; ++d) {
        const auto& f = ds.frame(d);
        DirTables& t = tabs_[d];
        auto int_weights = [&](const RatVec3& v, std::array<long, 3>& w) {
            for (int i = 0; i < 3; ++i) {
                Rat q = v[i] * Rat(p.n_star) * Rat(p.kappa);
                if (q.den != 1) throw Error("non-integer jet index weight");
                w[i] = long(q.num);
            }
        };
        int_weights(f.xi, t.ws);
        int_weights(f.a, t.wa);
        int_weights(f.b, t.wb);
        const double na = p.n_star * double(p.kappa);
        t.off_a = na * (p.shifts[d][0] * f.a[0].to_double() + p.shifts[d][1] * f.a[1].to_double() +
                        p.shifts[d][2] * f.a[2].to_double());
        t.off_b = na * (p.shifts[d][0] * f.b[0].to_double() + p.shifts[d][1] * f.b[1].to_double() +
                        p.shifts[d][2] * f.b[2].to_double());

        t.phi_tab.resize(std::size_t(n) * n);
        t.Phi_tab.resize(std::size_t(n) * n);
        t.Phi1_tab.resize(std::size_t(n) * n);
        t.Phi2_tab.resize(std::size_t(n) * n);
        for (int r1 = 0; r1 < n; ++r1)
            for (int r2 = 0; r2 < n; ++r2) {
                const double y1 = kTwoPi * r1 / n - t.off_a;
                const double y2 = kTwoPi * r2 / n - t.off_b;
                const std::size_t idx = std::size_t(r1) * n + r2;
                t.phi_tab[idx] = p.profiles.phi(y1, y2, p.r_perp);
                t.Phi_tab[idx] = p.profiles.Phi(y1, y2, p.r_perp);
                t.Phi1_tab[idx] = p.profiles.Phi_d1(y1, y2, p.r_perp);
                t.Phi2_tab[idx] = p.profiles.Phi_d2(y1, y2, p.r_perp);
            }
    }
}

void JetBasis::psi_tables(int dir, double t, std::vector<double>& psi_tab,
                          std::vector<double>& dpsi_tab) const {
    (void)dir;
    const int n = grid_.n;
    const double phase =
        std::fmod(double(params_.n_star) * double(params_.kappa) * params_.mu * t, kTwoPi);
    psi_tab.resize(n);
    dpsi_tab.resize(n);
    for (int r = 0; r < n; ++r) {
        const double s = kTwoPi * r / n + phase;
        psi_tab[r] = params_.profiles.psi(s, params_.r_par);
        dpsi_tab[r] = params_.profiles.psi_prime(s, params_.r_par);
    }
}

JetBasis::Sample JetBasis::eval(int dir, double t) const {
    const auto& ds = DirectionSet::get();
    const int n = grid_.n;
    const DirTables& tb = tabs_[dir];
    std::vector<double> psi_tab, dpsi_tab;
    psi_tables(dir, t, psi_tab, dpsi_tab);

    Sample out{VectorField(grid_), VectorField(grid_), VectorField(grid_), 0.0};
    const auto xi = ds.xi(dir);
    const double vscale = 1.0 / (double(params_.n_star) * params_.n_star * params_.lambda *
                                 params_.lambda);

    std::vector<double> slab_mean(n, 0.0);
    auto modn = [n](long v) { long r = v % n; return r < 0 ? r + n : r; };

    for (int iz = 0; iz < n; ++iz) {
        double acc = 0.0;
        for (int iy = 0; iy < n; ++iy) {
            const long base_s = iz * tb.ws[2] + iy * tb.ws[1];
            const long base_a = iz * tb.wa[2] + iy * tb.wa[1];
            const long base_b = iz * tb.wb[2] + iy * tb.wb[1];
            std::size_t idx = grid_.idx(0, iy, iz);
            for (int ix = 0; ix < n; ++ix, ++idx) {
                const long is = modn(base_s + ix * tb.ws[0]);
                const long ia = modn(base_a + ix * tb.wa[0]);
                const long ib = modn(base_b + ix * tb.wb[0]);
                const double ps = psi_tab[is];
                const std::size_t yidx = std::size_t(ia) * n + ib;
                const double ph = tb.phi_tab[yidx];
                const double Ph = tb.Phi_tab[yidx];
                const double w = ps * ph;
                const double v = vscale * ps * Ph;
                const double p2 = w * w;
                out.W.data(0)[idx] = xi[0] * w;
                out.W.data(1)[idx] = xi[1] * w;
                out.W.data(2)[idx] = xi[2] * w;
                out.V.data(0)[idx] = xi[0] * v;
                out.V.data(1)[idx] = xi[1] * v;
                out.V.data(2)[idx] = xi[2] * v;
                out.Psi.data(0)[idx] = xi[0] * p2;
                out.Psi.data(1)[idx] = xi[1] * p2;
                out.Psi.data(2)[idx] = xi[2] * p2;
                acc += p2;
            }
        }
        slab_mean[iz] = acc;
    }
    out.mean_psi2phi2 = det_sum(slab_mean) / double(grid_.npoints());
    return out;
}

VectorField JetBasis::eval_corrector(int dir, double t) const {
    const auto& ds = DirectionSet::get();
    const int n = grid_.n;
    const DirTables& tb = tabs_[dir];
    std::vector<double> psi_tab, dpsi_tab;
    psi_tables(dir, t, psi_tab, dpsi_tab);

    VectorField out(grid_);
    const auto A = ds.axis_a(dir);
    const auto B = ds.axis_b(dir);
    const double scale = params_.r_perp * params_.r_perp;
    auto modn = [n](long v) { long r = v % n; return r < 0 ? r + n : r; };

    for (int iz = 0; iz < n; ++iz)
        for (int iy = 0; iy < n; ++iy) {
            const long base_s = iz * tb.ws[2] + iy * tb.ws[1];
            const long base_a = iz * tb.wa[2] + iy * tb.wa[1];
            const long base_b = iz * tb.wb[2] + iy * tb.wb[1];
            std::size_t idx = grid_.idx(0, iy, iz);
            for (int ix = 0; ix < n; ++ix, ++idx) {
                const long is = modn(base_s + ix * tb.ws[0]);
                const long ia = modn(base_a + ix * tb.wa[0]);
                const long ib = modn(base_b + ix * tb.wb[0]);
                const double dps = dpsi_tab[is];
                const std::size_t yidx = std::size_t(ia) * n + ib;
                const double p1 = tb.Phi1_tab[yidx];
                const double p2 = tb.Phi2_tab[yidx];
                for (int c = 0; c < 3; ++c)
                    out.data(c)[idx] = scale * dps * (p1 * A[c] + p2 * B[c]);
            }
        }
    return out;
}

double JetBasis::measured_moment(int dir, double t) const {
    const int n = grid_.n;
    const DirTables& tb = tabs_[dir];
    std::vector<double> psi_tab, dpsi_tab;
    psi_tables(dir, t, psi_tab, dpsi_tab);
    std::vector<double> slab(n, 0.0);
    auto modn = [n](long v) { long r = v % n; return r < 0 ? r + n : r; };
    for (int iz = 0; iz < n; ++iz) {
        double acc = 0.0;
        for (int iy = 0; iy < n; ++iy) {
            const long base_s = iz * tb.ws[2] + iy * tb.ws[1];
            const long base_a = iz * tb.wa[2] + iy * tb.wa[1];
            const long base_b = iz * tb.wb[2] + iy * tb.wb[1];
            for (int ix = 0; ix < n; ++ix) {
                const long is = modn(base_s + ix * tb.ws[0]);
                const long ia = modn(base_a + ix * tb.wa[0]);
                const long ib = modn(base_b + ix * tb.wb[0]);
                const double w = psi_tab[is] * tb.phi_tab[std::size_t(ia) * n + ib];
                acc += w * w;
            }
        }
        slab[iz] = acc;
    }
    return det_sum(slab) / double(grid_.npoints());
}

JetPointValue jet_point_eval(const JetParams& p, int dir, double t, const Vec3d& x) {
    const auto& ds = DirectionSet::get();
    const auto xi = ds.xi(dir);
    const auto A = ds.axis_a(dir);
    const auto B = ds.axis_b(dir);
    const double na = double(p.n_star) * p.kappa;
    const Vec3d xs{x[0] - p.shifts[dir][0], x[1] - p.shifts[dir][1], x[2] - p.shifts[dir][2]};
    const double s = na * (x[0] * xi[0] + x[1] * xi[1] + x[2] * xi[2]) +
                     double(p.n_star) * p.r_perp * p.lambda * p.mu * t;
    const double y1 = na * (xs[0] * A[0] + xs[1] * A[1] + xs[2] * A[2]);
    const double y2 = na * (xs[0] * B[0] + xs[1] * B[1] + xs[2] * B[2]);

    const double ps = p.profiles.psi(s, p.r_par);
    const double dps = p.profiles.psi_prime(s, p.r_par);
    const double ph = p.profiles.phi(y1, y2, p.r_perp);
    const double Ph = p.profiles.Phi(y1, y2, p.r_perp);
    const double P1 = p.profiles.Phi_d1(y1, y2, p.r_perp);
    const double P2 = p.profiles.Phi_d2(y1, y2, p.r_perp);

    JetPointValue out;
    const double vscale = 1.0 / (double(p.n_star) * p.n_star * p.lambda * p.lambda);
    const double cscale = p.r_perp * p.r_perp;
    for (int c = 0; c < 3; ++c) {
        out.W[c] = xi[c] * ps * ph;
        out.V[c] = vscale * xi[c] * ps * Ph;
        out.Wc[c] = cscale * dps * (P1 * A[c] + P2 * B[c]);
    }
    return out;
}

// --- factorized continuum quadrature ----------------------------------------

namespace {

template <class F>
double quad_period_1d(F&& f, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = f(kTwoPi * i / n);
    return det_sum(v) * (kTwoPi / n);
}

template <class F>
double max_period_1d(F&& f, int n) {
    double m = 0.0;
    for (int i = 0; i < n; ++i) m = std::max(m, std::abs(f(kTwoPi * i / n)));
    return m;
}

template <class F>
double quad_period_2d(F&& f, int n) {
    std::vector<double> rows(n);
    for (int i = 0; i < n; ++i) {
        std::vector<double> v(n);
        for (int j = 0; j < n; ++j) v[j] = f(kTwoPi * i / n, kTwoPi * j / n);
        rows[i] = det_sum(v);
    }
    return det_sum(rows) * (kTwoPi / n) * (kTwoPi / n);
}

template <class F>
double max_period_2d(F&& f, int n) {
    double m = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m = std::max(m, std::abs(f(kTwoPi * i / n, kTwoPi * j / n)));
    return m;
}

}  // namespace

namespace {

// support-resolving quadrature for the compact bump kind: nodes on the
// concentration interval only (the profile vanishes outside)
template <class F>
double quad_support_1d(F&& f, double r, int n) {
    std::vector<double> v(n);
    const double h = 2.0 * r / n;
    for (int i = 0; i < n; ++i) v[i] = f(-r + (i + 0.5) * h);
    return det_sum(v) * h;
}

template <class F>
double max_support_1d(F&& f, double r, int n) {
    double m = 0.0;
    for (int i = 0; i < n; ++i) m = std::max(m, std::abs(f(-r + (i + 0.5) * 2.0 * r / n)));
    return m;
}

template <class F>
double quad_radial_2d(F&& f, double r, int n) {
    // integral over R^2 of a radial profile supported in |y| <= r
    std::vector<double> v(n);
    const double h = r / n;
    for (int i = 0; i < n; ++i) {
        const double rho = (i + 0.5) * h;
        v[i] = f(rho) * rho;
    }
    return kTwoPi * det_sum(v) * h;
}

}  // namespace

double JetQuadrature::psi_lp(double p_exp, int dt_order, int dx_order) const {
    // d_t^M grad^N psi_(xi): each space derivative contributes n* kappa, each
    // time derivative n* kappa mu, and a profile derivative of order N+M.
    const double sfac = double(p.n_star) * p.kappa;
    const double factor = std::pow(sfac, dx_order) * std::pow(sfac * p.mu, dt_order);
    const int order = dt_order + dx_order;
    auto prof = [&](double s) {
        if (order == 0) return p.profiles.psi(s, p.r_par);
        if (order == 1) return p.profiles.psi_prime(s, p.r_par);
        const double h = 1e-5 * p.r_par;  // fine FD for the rare second order
        return (p.profiles.psi_prime(s + h, p.r_par) - p.profiles.psi_prime(s - h, p.r_par)) /
               (2.0 * h);
    };
    const bool bump = p.profiles.kind() == Profiles::Kind::Bump;
    if (p_exp == kInf)
        return factor * (bump ? max_support_1d(prof, p.r_par, n1d) : max_period_1d(prof, n1d));
    auto pf = [&](double s) { return std::pow(std::abs(prof(s)), p_exp); };
    const double ip = bump ? quad_support_1d(pf, p.r_par, n1d) : quad_period_1d(pf, n1d);
    // L^p over T^3: the two transverse directions contribute (2pi)^2
    return factor * std::pow(kTwoPi * kTwoPi * ip, 1.0 / p_exp);
}

double JetQuadrature::phi_lp(double p_exp, int dx_order) const {
    const double sfac = double(p.n_star) * p.kappa;
    const double factor = std::pow(sfac, dx_order);
    if (p.profiles.kind() == Profiles::Kind::Bump) {
        auto prof = [&](double rho) {
            if (dx_order == 0) return p.profiles.phi(rho, 0.0, p.r_perp);
            const double d1 = p.profiles.phi_d1(rho, 0.0, p.r_perp);
            const double d2 = p.profiles.phi_d2(rho, 0.0, p.r_perp);
            return std::sqrt(d1 * d1 + d2 * d2);
        };
        if (p_exp == kInf) return factor * max_support_1d(prof, p.r_perp, n1d);
        const double ip = quad_radial_2d(
            [&](double rho) { return std::pow(std::abs(prof(rho)), p_exp); }, p.r_perp, n1d);
        return factor * std::pow(kTwoPi * ip, 1.0 / p_exp);
    }
    auto prof = [&](double y1, double y2) {
        if (dx_order == 0) return p.profiles.phi(y1, y2, p.r_perp);
        const double d1 = p.profiles.phi_d1(y1, y2, p.r_perp);
        const double d2 = p.profiles.phi_d2(y1, y2, p.r_perp);
        return std::sqrt(d1 * d1 + d2 * d2);
    };
    if (p_exp == kInf) return factor * max_period_2d(prof, n2d);
    const double ip =
        quad_period_2d([&](double a, double b) { return std::pow(std::abs(prof(a, b)), p_exp); },
                       n2d);
    return factor * std::pow(kTwoPi * ip, 1.0 / p_exp);
}

double JetQuadrature::w_lp(double p_exp) const {
    if (p_exp == kInf) {
        const double mpsi =
            p.profiles.kind() == Profiles::Kind::Bump
                ? max_support_1d([&](double s) { return p.profiles.psi(s, p.r_par); }, p.r_par, n1d)
                : max_period_1d([&](double s) { return p.profiles.psi(s, p.r_par); }, n1d);
        const double mphi =
            p.profiles.kind() == Profiles::Kind::Bump
                ? max_support_1d([&](double rho) { return p.profiles.phi(rho, 0.0, p.r_perp); },
                                 p.r_perp, n1d)
                : max_period_2d([&](double a, double b) { return p.profiles.phi(a, b, p.r_perp); },
                                n2d);
        return mpsi * mphi;
    }
    auto pf1 = [&](double s) { return std::pow(std::abs(p.profiles.psi(s, p.r_par)), p_exp); };
    const double i1 = p.profiles.kind() == Profiles::Kind::Bump
                          ? quad_support_1d(pf1, p.r_par, n1d)
                          : quad_period_1d(pf1, n1d);
    double i2;
    if (p.profiles.kind() == Profiles::Kind::Bump) {
        i2 = quad_radial_2d(
            [&](double rho) { return std::pow(std::abs(p.profiles.phi(rho, 0.0, p.r_perp)), p_exp); },
            p.r_perp, n1d);
    } else {
        i2 = quad_period_2d(
            [&](double a, double b) {
                return std::pow(std::abs(p.profiles.phi(a, b, p.r_perp)), p_exp);
            },
            n2d);
    }
    return std::pow(i1 * i2, 1.0 / p_exp);
}

double JetQuadrature::mean_psi2() const {
    auto f = [&](double s) { const double v = p.profiles.psi(s, p.r_par); return v * v; };
    const double i = p.profiles.kind() == Profiles::Kind::Bump ? quad_support_1d(f, p.r_par, n1d)
                                                               : quad_period_1d(f, n1d);
    return i / kTwoPi;
}

double JetQuadrature::mean_phi2() const {
    if (p.profiles.kind() == Profiles::Kind::Bump) {
        return quad_radial_2d(
                   [&](double rho) { const double v = p.profiles.phi(rho, 0.0, p.r_perp); return v * v; },
                   p.r_perp, n1d) /
               (kTwoPi * kTwoPi);
    }
    return quad_period_2d(
               [&](double a, double b) { const double v = p.profiles.phi(a, b, p.r_perp); return v * v; },
               n2d) /
           (kTwoPi * kTwoPi);
}

double JetQuadrature::mean_psi() const {
    auto f = [&](double s) { return p.profiles.psi(s, p.r_par); };
    const double i = p.profiles.kind() == Profiles::Kind::Bump ? quad_support_1d(f, p.r_par, n1d)
                                                               : quad_period_1d(f, n1d);
    return i / kTwoPi;
}

double JetQuadrature::mean_phi() const {
    if (p.profiles.kind() == Profiles::Kind::Bump) {
        return quad_radial_2d([&](double rho) { return p.profiles.phi(rho, 0.0, p.r_perp); },
                              p.r_perp, n1d) /
               (kTwoPi * kTwoPi);
    }
    return quad_period_2d([&](double a, double b) { return p.profiles.phi(a, b, p.r_perp); }, n2d) /
           (kTwoPi * kTwoPi);
}

std::vector<JetBoundsRow> check_jet_bounds(const std::vector<JetParams>& params_list) {
    if (params_list.size() < 2) throw Error("check_jet_bounds needs at least two scales");
    std::vector<JetBoundsRow> rows;
    for (const auto& p : params_list) {
        JetQuadrature q{p};
        const double rl = p.r_perp, rp = p.r_par, la = p.lambda, mu = p.mu;
        for (double pe : {1.0, 2.0, kInf}) {
            const double pinv = (pe == kInf) ? 0.0 : 1.0 / pe;
            for (int N = 0; N <= 1; ++N)
                for (int M = 0; M <= 1; ++M) {
                    const double meas = q.psi_lp(pe, M, N);
                    const double pred = std::pow(rp, pinv - 0.5) * std::pow(rl * la / rp, N) *
                                        std::pow(rl * la * mu / rp, M);
                    rows.push_back({"psi", pe, N, M, la, meas, pred, meas / pred});
                }
            for (int N = 0; N <= 1; ++N) {
                const double meas = q.phi_lp(pe, N);
                const double pred = std::pow(rl, 2.0 * pinv - 1.0) * std::pow(la, N);
                rows.push_back({"phi", pe, N, 0, la, meas, pred, meas / pred});
            }
            {
                const double meas = q.w_lp(pe);
                const double pred = std::pow(rl, 2.0 * pinv - 1.0) * std::pow(rp, pinv - 0.5);
                rows.push_back({"W", pe, 0, 0, la, meas, pred, meas / pred});
            }
        }
    }
    return rows;
}

double jet_bounds_worst_spread(const std::vector<JetBoundsRow>& rows) {
    double worst = 1.0;
    for (const auto& a : rows)
        for (const auto& b : rows) {
            if (a.quantity != b.quantity || a.p != b.p || a.N != b.N || a.M != b.M) continue;
            if (b.ratio > 0.0) worst = std::max(worst, a.ratio / b.ratio);
        }
    return worst;
}

std::string jet_bounds_to_json(const std::vector<JetBoundsRow>& rows) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        os << (i ? ",\n" : "\n") << "  {\"quantity\":\"" << r.quantity << "\",\"p\":"
           << (r.p == kInf ? -1.0 : r.p) << ",\"N\":" << r.N << ",\"M\":" << r.M
           << ",\"lambda\":" << r.lambda << ",\"measured\":" << r.measured
           << ",\"predicted_scale\":" << r.predicted_scale << ",\"ratio\":" << r.ratio << "}";
    }
    os << "\n]\n";
    return os.str();
}

}  // namespace wns
