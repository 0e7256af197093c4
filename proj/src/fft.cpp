#include "wavelab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace wavelab {
namespace {

// One cached in-place plan pair per size. Plans are created under a lock;
// fftw_execute_dft on caller-owned buffers is thread-safe.
struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

PlanPair& plans_for(std::size_t n) {
    static std::map<std::size_t, PlanPair> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    fftw_complex* buf = fftw_alloc_complex(n);
    PlanPair p;
    // FFTW_ESTIMATE keeps plan selection deterministic run to run.
    p.fwd = fftw_plan_dft_1d(int(n), buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
    p.bwd = fftw_plan_dft_1d(int(n), buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    fftw_free(buf);
    return cache.emplace(n, p).first->second;
}

}  // namespace

cvec fft(const ComplexField& f) {
    const std::size_t n = f.size();
    cvec out = f.v;
    auto* buf = reinterpret_cast<fftw_complex*>(out.data());
    fftw_execute_dft(plans_for(n).fwd, buf, buf);
    const double inv = 1.0 / double(n);
    for (auto& c : out) c *= inv;
    return out;
}

ComplexField ifft(const PeriodicGrid& g, const cvec& coeffs) {
    if (coeffs.size() != g.n) throw Error("coefficient count does not match grid");
    ComplexField out(g, coeffs);
    auto* buf = reinterpret_cast<fftw_complex*>(out.v.data());
    fftw_execute_dft(plans_for(g.n).bwd, buf, buf);
    return out;
}

}  // namespace wavelab
