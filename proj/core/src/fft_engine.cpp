#include "fft_engine.hpp"

#include <fftw3.h>

#include <cstdlib>
#include <map>
#include <mutex>

namespace mnv::detail {
namespace {

std::mutex planner_mutex;

struct PlanKey {
    int n1, n2, sign;
    bool operator<(const PlanKey& o) const {
        return std::tie(n1, n2, sign) < std::tie(o.n1, o.n2, o.sign);
    }
};

// Plans are created once per (shape, direction) with FFTW_UNALIGNED so they
// can be executed on any caller buffer via the new-array interface.
fftw_plan get_plan(int n1, int n2, int sign) {
    static std::map<PlanKey, fftw_plan> cache;
    static bool threads_ready = false;
    std::lock_guard<std::mutex> lock(planner_mutex);
    if (!threads_ready) {
#ifdef MNV_HAVE_FFTW_THREADS
        if (const char* env = std::getenv("MNVSURF_THREADS")) {
            const int n = std::atoi(env);
            if (n > 1) {
                fftw_init_threads();
                fftw_plan_with_nthreads(n);
            }
        }
#endif
        threads_ready = true;
    }
    const PlanKey key{n1, n2, sign};
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<std::complex<double>> scratch(static_cast<std::size_t>(n1) * n2);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan p = fftw_plan_dft_2d(n1, n2, buf, buf, sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    cache.emplace(key, p);
    return p;
}

void execute(const std::complex<double>* in, std::complex<double>* out, int n1,
             int n2, int sign) {
    fftw_plan p = get_plan(n1, n2, sign);
    // in-place plan; copy when the caller wants out-of-place
    if (in != out) {
        const std::size_t n = static_cast<std::size_t>(n1) * n2;
        std::copy(in, in + n, out);
    }
    auto* buf = reinterpret_cast<fftw_complex*>(out);
    fftw_execute_dft(p, buf, buf);
}

}  // namespace

void fft2_forward(const std::complex<double>* in, std::complex<double>* out,
                  int n1, int n2) {
    execute(in, out, n1, n2, FFTW_FORWARD);
}

void fft2_backward(const std::complex<double>* in, std::complex<double>* out,
                   int n1, int n2) {
    execute(in, out, n1, n2, FFTW_BACKWARD);
}

void fft1_forward(const std::complex<double>* in, std::complex<double>* out,
                  int n) {
    execute(in, out, 1, n, FFTW_FORWARD);
}

void fft1_backward(const std::complex<double>* in, std::complex<double>* out,
                   int n) {
    execute(in, out, 1, n, FFTW_BACKWARD);
}

}  // namespace mnv::detail
