#include <algorithm>

#include "lacs/sampling.hpp"

namespace lacs {

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

void SamplerState::set_gamma(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw Error(ErrorCode::InvalidConfig, "gamma must lie in [0, 1]");
  gamma_ = gamma;
}

std::vector<int> draw_lines(const LinePdf& pdf, int k, SamplerState& state) {
  const int n = state.acquired().n();
  if (pdf.n() != n) throw Error(ErrorCode::DimensionMismatch, "pdf size differs from sampler grid");
  if (k < 0) throw Error(ErrorCode::NotEnoughLines, "negative line count");
  const int remaining = n - static_cast<int>(state.acquired().size());
  if (k > remaining) {
    throw Error(ErrorCode::NotEnoughLines,
                "requested " + std::to_string(k) + " lines, " + std::to_string(remaining) + " left");
  }

  std::vector<double> mass(static_cast<std::size_t>(n), 0.0);
  for (int row = 0; row < n; ++row) {
    if (!state.acquired().contains(line_of_row(n, row))) mass[static_cast<std::size_t>(row)] = pdf.at_row(row);
  }

  std::vector<int> drawn;
  drawn.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    double total = 0.0;
    for (double m : mass) total += m;
    if (!(total > 0.0)) {
      for (int row = 0; row < n; ++row) {
        const int ky = line_of_row(n, row);
        const bool taken = state.acquired().contains(ky) || std::find(drawn.begin(), drawn.end(), ky) != drawn.end();
        mass[static_cast<std::size_t>(row)] = taken ? 0.0 : 1.0;
      }
      total = 0.0;
      for (double m : mass) total += m;
    }
    const double target = uniform01(state.rng()) * total;
    double cumulative = 0.0;
    int chosen = -1;
    for (int row = 0; row < n; ++row) {
      const double m = mass[static_cast<std::size_t>(row)];
      if (m <= 0.0) continue;
      chosen = row;
      cumulative += m;
      if (target < cumulative) break;
    }
    mass[static_cast<std::size_t>(chosen)] = 0.0;
    drawn.push_back(line_of_row(n, chosen));
  }
  state.mark_acquired(drawn);
  return drawn;
}

}  // namespace lacs
