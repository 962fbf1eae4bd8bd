#include "wns/noise.hpp"

#include <algorithm>
#include <cmath>

namespace wns {

namespace {

void solenoidal_basis(const int k[3], double e1[3], double e2[3]) {
    // deterministic orthonormal basis of the plane orthogonal to k
    const double kk[3] = {double(k[0]), double(k[1]), double(k[2])};
    const double kn = std::sqrt(kk[0] * kk[0] + kk[1] * kk[1] + kk[2] * kk[2]);
    int least = 0;
    for (int c = 1; c < 3; ++c)
        if (std::abs(kk[c]) < std::abs(kk[least])) least = c;
    double a[3] = {0.0, 0.0, 0.0};
    a[least] = 1.0;
    // e1 = normalize(k x a)
    double v[3] = {kk[1] * a[2] - kk[2] * a[1], kk[2] * a[0] - kk[0] * a[2],
                   kk[0] * a[1] - kk[1] * a[0]};
    const double vn = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    for (int c = 0; c < 3; ++c) e1[c] = v[c] / vn;
    // e2 = normalize(k x e1)
    double w[3] = {kk[1] * e1[2] - kk[2] * e1[1], kk[2] * e1[0] - kk[0] * e1[2],
                   kk[0] * e1[1] - kk[1] * e1[0]};
    for (int c = 0; c < 3; ++c) e2[c] = w[c] / kn;
}

bool half_space(int kx, int ky, int kz) {
    if (kx != 0) return kx > 0;
    if (ky != 0) return ky > 0;
    return kz > 0;
}

double mode_k2(const NoiseMode& m) {
    return double(m.k[0]) * m.k[0] + double(m.k[1]) * m.k[1] + double(m.k[2]) * m.k[2];
}

}  // namespace

NoiseSpec NoiseSpec::power_law(int kmax, double s_g, double scale) {
    NoiseSpec spec;
    for (int kx = -kmax; kx <= kmax; ++kx)
        for (int ky = -kmax; ky <= kmax; ++ky)
            for (int kz = -kmax; kz <= kmax; ++kz) {
                if (!half_space(kx, ky, kz)) continue;
                NoiseMode m{};
                m.k[0] = kx; m.k[1] = ky; m.k[2] = kz;
                const double kk = std::sqrt(mode_k2(m));
                m.g = scale * std::pow(kk, -s_g);
                solenoidal_basis(m.k, m.e1, m.e2);
                spec.modes.push_back(m);
            }
    for (const auto& m : spec.modes) spec.c_g += 4.0 * std::pow(kTwoPi, 3) * m.g * m.g;
    return spec;
}

NoiseSpec NoiseSpec::single_mode(int kx, int ky, int kz, double g) {
    if (!half_space(kx, ky, kz)) { kx = -kx; ky = -ky; kz = -kz; }
    NoiseSpec spec;
    NoiseMode m{};
    m.k[0] = kx; m.k[1] = ky; m.k[2] = kz;
    m.g = g;
    solenoidal_basis(m.k, m.e1, m.e2);
    spec.modes.push_back(m);
    spec.c_g = 4.0 * std::pow(kTwoPi, 3) * g * g;
    return spec;
}

NoiseSpec NoiseSpec::zero() { return NoiseSpec{}; }

double NoiseSpec::sobolev_constant(double sigma) const {
    double acc = 0.0;
    for (const auto& m : modes) {
        const double k2 = mode_k2(m);
        acc += 2.0 * std::pow(k2, -(3.0 + sigma) / 2.0);  // both half-space signs
    }
    return std::max(1.0, std::sqrt(acc) * std::pow(kTwoPi, -1.5));
}

double SparseField::l2_norm(const NoiseSpec& spec) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < coef.size(); ++i)
        acc += std::norm(coef[i][0]) + std::norm(coef[i][1]);
    (void)spec;
    return std::sqrt(2.0 * std::pow(kTwoPi, 3) * acc);
}

double SparseField::hs_norm(const NoiseSpec& spec, double s) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < coef.size(); ++i) {
        const double k2 = mode_k2(spec.modes[i]);
        acc += std::pow(k2, s) * (std::norm(coef[i][0]) + std::norm(coef[i][1]));
    }
    return std::sqrt(2.0 * std::pow(kTwoPi, 3) * acc);
}

double SparseField::l2_dist(const SparseField& other, const NoiseSpec& spec) const {
    (void)spec;
    double acc = 0.0;
    for (std::size_t i = 0; i < coef.size(); ++i)
        acc += std::norm(coef[i][0] - other.coef[i][0]) + std::norm(coef[i][1] - other.coef[i][1]);
    return std::sqrt(2.0 * std::pow(kTwoPi, 3) * acc);
}

SparseField SparseField::filtered(const NoiseSpec& spec, double f) const {
    SparseField out = *this;
    for (std::size_t i = 0; i < coef.size(); ++i) {
        const auto& m = spec.modes[i];
        const double kinf = std::max({std::abs(double(m.k[0])), std::abs(double(m.k[1])),
                                      std::abs(double(m.k[2]))});
        if (kinf > f) out.coef[i] = {cplx(0.0), cplx(0.0)};
    }
    return out;
}

std::size_t StokesTraj::index_of(double t) const {
    const double x = (t - t0) / dt;
    const long i = std::lround(x);
    if (i < 0 || i >= long(samples.size()) || std::abs(x - double(i)) > 1e-9)
        throw OutOfRange("time not on stokes trajectory grid");
    return std::size_t(i);
}

StokesTraj simulate_stokes(const NoiseSpec& spec, double dt, std::size_t nsteps,
                           std::uint64_t seed, const SparseField* z0, std::size_t step_offset) {
    StokesTraj traj;
    traj.t0 = 0.0;
    traj.dt = dt;
    SparseField cur;
    cur.coef.assign(spec.modes.size(), {cplx(0.0), cplx(0.0)});
    if (z0) {
        if (z0->coef.size() != spec.modes.size())
            throw NotDivergenceFree("initial sparse field does not match the mode set");
        cur = *z0;
    }
    traj.samples.push_back(cur);
    for (std::size_t j = 1; j <= nsteps; ++j) {
        for (std::size_t i = 0; i < spec.modes.size(); ++i) {
            const auto& m = spec.modes[i];
            const double k2 = mode_k2(m);
            const double decay = std::exp(-k2 * dt);
            const double sig = m.g * std::sqrt((1.0 - decay * decay) / (2.0 * k2));
            for (int dir = 0; dir < 2; ++dir) {
                const NormalPair eta =
                    normal_pair(seed, i * 2 + dir, step_offset + j);
                cur.coef[i][dir] = decay * cur.coef[i][dir] +
                                   sig * cplx(eta.a, eta.b) / std::sqrt(2.0);
            }
        }
        traj.samples.push_back(cur);
    }
    return traj;
}

VectorField materialize(const SparseField& f, const NoiseSpec& spec, const Grid3& g) {
    VectorField out(g);
    const Fft& fft = Fft::get(g);
    SpecBuf buf(g);
    const int n = g.n, h = n / 2;
    for (int c = 0; c < 3; ++c) {
        std::fill(buf.vec().begin(), buf.vec().end(), cplx(0.0));
        for (std::size_t i = 0; i < spec.modes.size(); ++i) {
            const auto& m = spec.modes[i];
            if (std::abs(m.k[0]) >= h || std::abs(m.k[1]) >= h || std::abs(m.k[2]) >= h)
                throw GridMismatch("noise mode beyond grid band");
            const cplx v = f.coef[i][0] * m.e1[c] + f.coef[i][1] * m.e2[c];
            auto put = [&](int kx, int ky, int kz, cplx val) {
                if (kx < 0) return;  // r2c stores kx >= 0 only
                const int iy = ky >= 0 ? ky : ky + n;
                const int iz = kz >= 0 ? kz : kz + n;
                buf.data()[(std::size_t(iz) * n + iy) * (h + 1) + kx] = val;
            };
            put(m.k[0], m.k[1], m.k[2], v);
            put(-m.k[0], -m.k[1], -m.k[2], std::conj(v));
        }
        fft.backward(buf.data(), out.data(c));
    }
    return out;
}

StoppingParams StoppingParams::variant_a(double c_s, double delta, double a, double b,
                                         double beta) {
    StoppingParams p;
    p.c_s = c_s;
    p.delta = delta;
    p.thr_h = 1.0 / c_s;
    p.thr_holder = 1.0 / c_s;
    p.thr_l2 = std::pow(a, beta * b - b * b * beta) / std::sqrt(12.0);
    p.cap = 1.0;
    return p;
}

StoppingParams StoppingParams::variant_b(double c_s, double delta, double L) {
    StoppingParams p;
    p.c_s = c_s;
    p.delta = delta;
    p.thr_h = L / c_s;
    p.thr_holder = L / c_s;
    p.thr_l2 = kInf;
    p.cap = L;
    return p;
}

StoppingRecord stopping_time(const StokesTraj& traj, const NoiseSpec& spec,
                             const StoppingParams& params, Variant variant) {
    StoppingRecord rec;
    const double alpha = 0.5 - 2.0 * params.delta;
    const double s_h = 1.0 - params.delta;
    double holder_semi = 0.0, sup_l2 = 0.0;
    for (std::size_t j = 0; j < traj.samples.size(); ++j) {
        const double t = traj.t0 + traj.dt * double(j);
        const SparseField& z = traj.samples[j];
        const double norm_h = z.hs_norm(spec, s_h);
        const double norm_l2 = z.l2_norm(spec);
        sup_l2 = std::max(sup_l2, norm_l2);
        for (std::size_t i = 0; i < j; ++i) {
            const double dtij = traj.dt * double(j - i);
            holder_semi = std::max(holder_semi,
                                   z.l2_dist(traj.samples[i], spec) / std::pow(dtij, alpha));
        }
        const double norm_holder = holder_semi + sup_l2;
        rec.norm_h = norm_h;
        rec.norm_holder = norm_holder;
        rec.norm_l2 = norm_l2;
        if (t >= params.cap) {
            rec.time = params.cap;
            rec.fired = "cap";
            return rec;
        }
        if (norm_h >= params.thr_h) { rec.time = t; rec.fired = "H"; return rec; }
        if (norm_holder >= params.thr_holder) { rec.time = t; rec.fired = "holder"; return rec; }
        if (variant == Variant::A && norm_l2 >= params.thr_l2) {
            rec.time = t;
            rec.fired = "L2";
            return rec;
        }
    }
    rec.time = std::min(params.cap, traj.t_hi());
    rec.fired = "cap";
    return rec;
}

StokesTraj restart_shift(const StokesTraj& traj, const NoiseSpec& spec, double T) {
    const std::size_t jT = traj.index_of(T);
    StokesTraj out;
    out.t0 = 0.0;
    out.dt = traj.dt;
    const SparseField& zT = traj.samples[jT];
    for (std::size_t j = jT; j < traj.samples.size(); ++j) {
        const double t = traj.dt * double(j - jT);
        SparseField f = traj.samples[j];
        for (std::size_t i = 0; i < spec.modes.size(); ++i) {
            const double k2 = mode_k2(spec.modes[i]);
            const double decay = std::exp(-k2 * t);
            f.coef[i][0] -= decay * zT.coef[i][0];
            f.coef[i][1] -= decay * zT.coef[i][1];
        }
        out.samples.push_back(std::move(f));
    }
    return out;
}

}  // namespace wns
