#pragma once

#include <complex>
#include <memory>
#include <utility>
#include <vector>

#include "wns/grid.hpp"

namespace wns {

using cplx = std::complex<double>;

/// Cached FFTW r2c/c2r plans for one grid size. Plans use FFTW_ESTIMATE so
/// the chosen algorithm, and therefore the output bit pattern, does not
/// depend on runtime timing.
class Fft {
public:
    explicit Fft(const Grid3& g);
    ~Fft();
    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;

    const Grid3& grid() const { return grid_; }

    /// physical (n^3 doubles) -> spectral (n*n*(n/2+1) complex), normalized
    /// so coefficients are Fourier coefficients: f(x) = sum_k c_k e^{ikx}.
    void forward(const double* phys, cplx* spec) const;
    /// spectral -> physical. The input buffer is preserved.
    void backward(const cplx* spec, double* phys) const;

    /// Shared per-grid instance.
    static const Fft& get(const Grid3& g);

private:
    Grid3 grid_;
    void* plan_fwd_ = nullptr;
    void* plan_bwd_ = nullptr;
    mutable std::vector<double> work_real_;
    mutable std::vector<cplx> work_spec_;
};

/// Reusable spectral scratch buffers, one pool per grid size.
class SpecPool {
public:
    explicit SpecPool(const Grid3& g) : grid_(g) {}
    std::vector<cplx> take();
    void give(std::vector<cplx>&& b);
    static SpecPool& get(const Grid3& g);

private:
    Grid3 grid_;
    std::vector<std::vector<cplx>> free_;
};

/// RAII loan of one spectral buffer.
class SpecBuf {
public:
    explicit SpecBuf(const Grid3& g) : pool_(SpecPool::get(g)), buf_(pool_.take()) {}
    ~SpecBuf() { pool_.give(std::move(buf_)); }
    SpecBuf(const SpecBuf&) = delete;
    SpecBuf& operator=(const SpecBuf&) = delete;
    cplx* data() { return buf_.data(); }
    const cplx* data() const { return buf_.data(); }
    std::vector<cplx>& vec() { return buf_; }

private:
    SpecPool& pool_;
    std::vector<cplx> buf_;
};

}  // namespace wns
