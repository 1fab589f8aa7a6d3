#include "wigsim/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

#include "wigsim/errors.hpp"

namespace wigsim {

namespace {

// FFTW plan creation is not thread safe; executing a cached plan on a
// caller-supplied array via fftw_execute_dft is.  Plans are created with
// FFTW_UNALIGNED so they accept std::vector storage of any alignment, and
// FFTW_ESTIMATE keeps planning deterministic.
class PlanCache {
public:
    fftw_plan get(int n, int sign) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto key = std::make_pair(n, sign);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        std::vector<std::complex<double>> scratch(n);
        fftw_plan p = fftw_plan_dft_1d(
            n, reinterpret_cast<fftw_complex*>(scratch.data()),
            reinterpret_cast<fftw_complex*>(scratch.data()), sign,
            FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (!p) throw NumericalError("fft: plan creation failed");
        plans_.emplace(key, p);
        return p;
    }

private:
    std::mutex mutex_;
    std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

void run(std::vector<std::complex<double>>& a, int sign) {
    fftw_plan p = cache().get(static_cast<int>(a.size()), sign);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(a.data()),
                     reinterpret_cast<fftw_complex*>(a.data()));
}

}  // namespace

void fft_forward(std::vector<std::complex<double>>& a) { run(a, FFTW_FORWARD); }
void fft_backward(std::vector<std::complex<double>>& a) { run(a, FFTW_BACKWARD); }

}  // namespace wigsim
