#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <utility>

#include <Eigen/Core>
#include <fftw3.h>

namespace geohydro::detail {

// Cache of complex-to-complex plans keyed by (n, direction). Plans are built
// with FFTW_ESTIMATE | FFTW_UNALIGNED so that they are deterministic and valid
// for any buffer passed to fftw_execute_dft, which is thread-safe.
class FftPlanCache {
 public:
  static FftPlanCache& instance() {
    static FftPlanCache cache;
    return cache;
  }

  fftw_plan plan(std::size_t n, int sign) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto key = std::make_pair(n, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second.get();
    auto* in = fftw_alloc_complex(n);
    auto* out = fftw_alloc_complex(n);
    fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), in, out, sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(in);
    fftw_free(out);
    plans_.emplace(key, PlanHandle(p));
    return p;
  }

  FftPlanCache(const FftPlanCache&) = delete;
  FftPlanCache& operator=(const FftPlanCache&) = delete;

 private:
  FftPlanCache() = default;

  struct PlanDeleter {
    void operator()(fftw_plan_s* p) const { fftw_destroy_plan(p); }
  };
  using PlanHandle = std::unique_ptr<fftw_plan_s, PlanDeleter>;

  std::mutex mutex_;
  std::map<std::pair<std::size_t, int>, PlanHandle> plans_;
};

inline Eigen::ArrayXcd execute(const Eigen::ArrayXcd& in, int sign) {
  const auto n = static_cast<std::size_t>(in.size());
  fftw_plan p = FftPlanCache::instance().plan(n, sign);
  Eigen::ArrayXcd src = in;
  Eigen::ArrayXcd out(in.size());
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(src.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

}  // namespace geohydro::detail

namespace geohydro {

/// Forward DFT, unnormalized: c_k = sum_j f_j e^{-2 pi i jk/n}.
inline Eigen::ArrayXcd fft(const Eigen::ArrayXcd& f) {
  return detail::execute(f, FFTW_FORWARD);
}

/// Inverse DFT including the 1/n factor, so ifft(fft(f)) == f.
inline Eigen::ArrayXcd ifft(const Eigen::ArrayXcd& c) {
  Eigen::ArrayXcd out = detail::execute(c, FFTW_BACKWARD);
  out /= static_cast<double>(c.size());
  return out;
}

}  // namespace geohydro
