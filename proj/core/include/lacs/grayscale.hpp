#pragma once

#include "lacs/transforms.hpp"

namespace lacs {

/// Running estimate of the intensity ratio c in X = c X0.
struct ScaleEstimate {
  double c = 1.0;
  int rounds_seen = 0;
  int imaginary_warnings = 0;  // rounds whose ratio had |Im| > 1% of its modulus
};

struct GscOptions {
  bool modulus_sum = false;
};

/// c' = Re(sum Y / sum Y0) over the sampled entries, folded into the running
/// mean c = c'/i + c (i-1)/i. Throws ZeroReferenceEnergy when sum |Y0| is 0
/// and DimensionMismatch when the line sets differ. A non-finite c' leaves
/// the estimate unchanged.
ScaleEstimate gsc_update(const Measurements& y, const Measurements& y0, ScaleEstimate est,
                         const GscOptions& options = {});

}  // namespace lacs
