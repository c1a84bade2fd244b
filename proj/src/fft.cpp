#include "pseudopath/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <map>
#include <mutex>

namespace pseudopath {

namespace {

// Plans are cached per (size, direction) together with the buffer they were
// planned on; callers' data is copied through that buffer. FFTW planning is
// not thread safe, hence the lock around cache access.
struct CachedPlan {
    fftw_plan plan = nullptr;
    fftw_complex* buf = nullptr;
};

std::mutex cache_mutex;
std::map<std::pair<std::size_t, int>, CachedPlan>& plan_cache() {
    static std::map<std::pair<std::size_t, int>, CachedPlan> cache;
    return cache;
}

void run_transform(std::vector<std::complex<double>>& data, int sign) {
    const std::size_t n = data.size();
    CachedPlan entry;
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto& slot = plan_cache()[{n, sign}];
        if (!slot.plan) {
            slot.buf = fftw_alloc_complex(n);
            slot.plan = fftw_plan_dft_1d(static_cast<int>(n), slot.buf, slot.buf, sign,
                                         FFTW_ESTIMATE);
        }
        entry = slot;
        std::memcpy(static_cast<void*>(entry.buf), static_cast<const void*>(data.data()),
                    n * sizeof(fftw_complex));
        fftw_execute(entry.plan);
        std::memcpy(static_cast<void*>(data.data()), static_cast<const void*>(entry.buf),
                    n * sizeof(fftw_complex));
    }
}

} // namespace

void fft_forward(std::vector<std::complex<double>>& data) {
    run_transform(data, FFTW_FORWARD);
}

void fft_inverse(std::vector<std::complex<double>>& data) {
    run_transform(data, FFTW_BACKWARD);
    const double inv = 1.0 / static_cast<double>(data.size());
    for (auto& v : data) v *= inv;
}

double fft_omega(std::size_t m, std::size_t n, double dx) {
    const double dk = 2.0 * M_PI / (static_cast<double>(n) * dx);
    const auto half = n / 2;
    if (m < half + (n % 2)) return dk * static_cast<double>(m);
    return dk * (static_cast<double>(m) - static_cast<double>(n));
}

} // namespace pseudopath
