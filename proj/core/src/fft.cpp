#include <fftw3.h>

#include <map>
#include <mutex>

#include "lacs/transforms.hpp"

namespace lacs {
namespace {

// FFTW planning is not thread-safe; execution on fresh arrays is. Plans are
// created once per size and reused through fftw_execute_dft.
struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [n, p] : plans_) {
      fftw_destroy_plan(p.forward);
      fftw_destroy_plan(p.backward);
    }
  }

  PlanPair get(int n) {
    std::lock_guard lock(mutex_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;
    const auto count = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
    auto* in = fftw_alloc_complex(count);
    auto* out = fftw_alloc_complex(count);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    PlanPair p{fftw_plan_dft_2d(n, n, in, out, FFTW_FORWARD, flags),
               fftw_plan_dft_2d(n, n, in, out, FFTW_BACKWARD, flags)};
    fftw_free(in);
    fftw_free(out);
    plans_.emplace(n, p);
    return p;
  }

 private:
  std::mutex mutex_;
  std::map<int, PlanPair> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

// Circular shift by (s, s) into dst. For even n this swaps quadrants.
void circshift(const ComplexMatrix& src, ComplexMatrix& dst, int s) {
  const int n = static_cast<int>(src.rows());
  if (2 * s == n) {
    dst.topLeftCorner(s, s) = src.bottomRightCorner(s, s);
    dst.bottomRightCorner(s, s) = src.topLeftCorner(s, s);
    dst.topRightCorner(s, s) = src.bottomLeftCorner(s, s);
    dst.bottomLeftCorner(s, s) = src.topRightCorner(s, s);
    return;
  }
  for (int c = 0; c < n; ++c) {
    const int sc = (c + s) % n;
    for (int r = 0; r < n; ++r) dst(r, c) = src((r + s) % n, sc);
  }
}

ComplexMatrix centered_transform(const ComplexMatrix& src, bool forward) {
  const int n = static_cast<int>(src.rows());
  if (src.cols() != n) throw Error(ErrorCode::NonSquareImage, "centered FFT needs a square grid");
  const int half = n / 2;

  // ifftshift into the work buffer, transform, fftshift back out.
  ComplexMatrix shifted(n, n);
  circshift(src, shifted, half);
  ComplexMatrix spectrum(n, n);
  const PlanPair plans = plan_cache().get(n);
  fftw_execute_dft(forward ? plans.forward : plans.backward,
                   reinterpret_cast<fftw_complex*>(shifted.data()),
                   reinterpret_cast<fftw_complex*>(spectrum.data()));
  spectrum *= 1.0 / n;
  circshift(spectrum, shifted, n - half);
  return shifted;
}

}  // namespace

ComplexMatrix fft2c(const ComplexMatrix& image) { return centered_transform(image, true); }

ComplexMatrix ifft2c(const ComplexMatrix& kspace) { return centered_transform(kspace, false); }

KSpace fft2_centered(const Image& img) { return KSpace(fft2c(img.as_complex())); }

ComplexMatrix ifft2_centered(const KSpace& k) { return ifft2c(k.grid()); }

}  // namespace lacs
