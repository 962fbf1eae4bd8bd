#include "wns/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>

namespace wns {

Fft::Fft(const Grid3& g) : grid_(g) {
    const int n = g.n;
    work_real_.resize(g.npoints());
    work_spec_.resize(g.nspec());
    // FFTW destroys the input of c2r transforms; plan on private work
    // buffers and copy in/out so caller data stays intact.
    plan_fwd_ = fftw_plan_dft_r2c_3d(n, n, n, work_real_.data(),
                                     reinterpret_cast<fftw_complex*>(work_spec_.data()),
                                     FFTW_ESTIMATE);
    plan_bwd_ = fftw_plan_dft_c2r_3d(n, n, n,
                                     reinterpret_cast<fftw_complex*>(work_spec_.data()),
                                     work_real_.data(), FFTW_ESTIMATE);
}

Fft::~Fft() {
    if (plan_fwd_) fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
    if (plan_bwd_) fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
}

void Fft::forward(const double* phys, cplx* spec) const {
    std::memcpy(work_real_.data(), phys, sizeof(double) * grid_.npoints());
    fftw_execute_dft_r2c(static_cast<fftw_plan>(plan_fwd_), work_real_.data(),
                         reinterpret_cast<fftw_complex*>(work_spec_.data()));
    const double scale = 1.0 / double(grid_.npoints());
    for (std::size_t i = 0; i < grid_.nspec(); ++i) spec[i] = work_spec_[i] * scale;
}

void Fft::backward(const cplx* spec, double* phys) const {
    std::memcpy(work_spec_.data(), spec, sizeof(cplx) * grid_.nspec());
    fftw_execute_dft_c2r(static_cast<fftw_plan>(plan_bwd_),
                         reinterpret_cast<fftw_complex*>(work_spec_.data()),
                         work_real_.data());
    std::memcpy(phys, work_real_.data(), sizeof(double) * grid_.npoints());
}

const Fft& Fft::get(const Grid3& g) {
    static std::map<int, std::unique_ptr<Fft>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(g.n);
    if (it == cache.end()) it = cache.emplace(g.n, std::make_unique<Fft>(g)).first;
    return *it->second;
}

std::vector<cplx> SpecPool::take() {
    if (free_.empty()) return std::vector<cplx>(grid_.nspec());
    std::vector<cplx> b = std::move(free_.back());
    free_.pop_back();
    return b;
}

void SpecPool::give(std::vector<cplx>&& b) {
    if (b.size() == grid_.nspec()) free_.push_back(std::move(b));
}

SpecPool& SpecPool::get(const Grid3& g) {
    static std::map<int, std::unique_ptr<SpecPool>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(g.n);
    if (it == cache.end()) it = cache.emplace(g.n, std::make_unique<SpecPool>(g)).first;
    return *it->second;
}

}  // namespace wns
