#pragma once

#include <array>
#include <functional>
#include <vector>

#include "wns/errors.hpp"
#include "wns/fft.hpp"
#include "wns/grid.hpp"

namespace wns {

/// Deterministic pairwise sum, independent of threading and call pattern.
double det_sum(const double* v, std::size_t n);
double det_sum(const std::vector<double>& v);

// ---------------------------------------------------------------------------
// Fields are stored as real point values on the grid. Spectral operators
// transform on demand; every spectral operator projects onto the band
// |k_i| <= n/2 - 1 so repeated transforms are loss-free and real.
// ---------------------------------------------------------------------------

class ScalarField {
public:
    ScalarField() = default;
    explicit ScalarField(const Grid3& g, double fill = 0.0) : grid_(g), val_(g.npoints(), fill) {}

    const Grid3& grid() const { return grid_; }
    double* data() { return val_.data(); }
    const double* data() const { return val_.data(); }
    double& operator[](std::size_t i) { return val_[i]; }
    double operator[](std::size_t i) const { return val_[i]; }
    std::size_t size() const { return val_.size(); }
    bool empty() const { return val_.empty(); }

    double mean() const;
    double max_abs() const;

private:
    Grid3 grid_;
    std::vector<double> val_;
};

class VectorField {
public:
    VectorField() = default;
    explicit VectorField(const Grid3& g) : grid_(g) {
        for (auto& c : comp_) c.assign(g.npoints(), 0.0);
    }

    const Grid3& grid() const { return grid_; }
    double* data(int c) { return comp_[c].data(); }
    const double* data(int c) const { return comp_[c].data(); }
    std::vector<double>& comp(int c) { return comp_[c]; }
    const std::vector<double>& comp(int c) const { return comp_[c]; }
    std::size_t size() const { return comp_[0].size(); }
    bool empty() const { return comp_[0].empty(); }

    VectorField& operator+=(const VectorField& o);
    VectorField& operator-=(const VectorField& o);
    VectorField& operator*=(double s);

    std::array<double, 3> mean() const;

private:
    Grid3 grid_;
    std::array<std::vector<double>, 3> comp_;
};

/// Symmetric 3x3 tensor field; six stored components in the order
/// xx, yy, zz, xy, xz, yz. Symmetry is exact by storage.
class SymTensorField {
public:
    static constexpr int XX = 0, YY = 1, ZZ = 2, XY = 3, XZ = 4, YZ = 5;

    SymTensorField() = default;
    explicit SymTensorField(const Grid3& g) : grid_(g) {
        for (auto& c : comp_) c.assign(g.npoints(), 0.0);
    }

    const Grid3& grid() const { return grid_; }
    double* data(int c) { return comp_[c].data(); }
    const double* data(int c) const { return comp_[c].data(); }
    std::vector<double>& comp(int c) { return comp_[c]; }
    const std::vector<double>& comp(int c) const { return comp_[c]; }
    std::size_t size() const { return comp_[0].size(); }
    bool empty() const { return comp_[0].empty(); }

    SymTensorField& operator+=(const SymTensorField& o);
    SymTensorField& operator-=(const SymTensorField& o);
    SymTensorField& operator*=(double s);

    double max_trace_abs() const;
    /// Pointwise Frobenius norm |R(x)| written into out.
    void frobenius(ScalarField& out) const;
    std::array<double, 6> mean() const;

private:
    Grid3 grid_;
    std::array<std::vector<double>, 6> comp_;
};

// --- spectral transforms ----------------------------------------------------

void to_spectral(const ScalarField& f, cplx* spec);
void to_physical(const cplx* spec, ScalarField& f);

/// Iterate the r2c half-spectrum; fn(kx,ky,kz,index). Conjugate weight for
/// Parseval-type sums is 2 for kx>0 planes, 1 otherwise.
void for_each_mode(const Grid3& g, const std::function<void(int, int, int, std::size_t)>& fn);

// --- linear spectral operators (all band-projected) -------------------------

enum class FilterKind { LeqF, Neq0, GeqK };

VectorField leray_project(const VectorField& v);
ScalarField spectral_filter(const ScalarField& f, FilterKind kind, double cutoff = 0.0);
VectorField spectral_filter(const VectorField& f, FilterKind kind, double cutoff = 0.0);
SymTensorField spectral_filter(const SymTensorField& f, FilterKind kind, double cutoff = 0.0);

/// e^{t Laplacian}; t >= 0.
VectorField heat_semigroup(const VectorField& u0, double t);

/// Right inverse of div producing a symmetric trace-free tensor potential.
/// Requires a mean-zero input (relative tolerance 1e-12).
SymTensorField inv_divergence(const VectorField& v);

VectorField gradient(const ScalarField& f);
ScalarField divergence(const VectorField& v);
VectorField divergence(const SymTensorField& t);
VectorField curl(const VectorField& v);
VectorField curl_curl(const VectorField& v);
VectorField laplacian(const VectorField& v);
/// Fractional multiplier (I - Laplacian)^{s/2}.
ScalarField bessel_potential(const ScalarField& f, double s);
VectorField bessel_potential(const VectorField& f, double s);

/// Band projection alone (zero Nyquist planes); fields produced by raw
/// pointwise products carry content there.
VectorField band_project(const VectorField& v);

// --- pointwise algebra -------------------------------------------------------

/// traceless symmetrized product: (f Ó g)_ij = (f_i g_j + f_j g_i)/2 - delta_ij (f.g)/3.
SymTensorField traceless_tensor_product(const VectorField& f, const VectorField& g);
/// plain symmetric product without trace removal.
SymTensorField sym_tensor_product(const VectorField& f, const VectorField& g);
/// dealiased variant of traceless_tensor_product: truncated at the grid's
/// dealias cutoff after the pointwise product.
SymTensorField traceless_tensor_product_dealiased(const VectorField& f, const VectorField& g);

void axpy(double a, const VectorField& x, VectorField& y);    // y += a x
void axpy(double a, const SymTensorField& x, SymTensorField& y);

double dot_l2(const VectorField& a, const VectorField& b);    // integral a.b dx

// --- diagnostics -------------------------------------------------------------

double divergence_linf(const VectorField& v);
bool is_mean_zero(const VectorField& v, double rel_tol = 1e-12);

}  // namespace wns
