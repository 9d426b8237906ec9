#include <array>
#include <cmath>
#include <numbers>

#include "lacs/bench.hpp"

namespace lacs {
namespace {

struct Ellipse {
  double value;
  double a;
  double b;
  double x0;
  double y0;
  double phi_deg;
};

// Modified Shepp-Logan (Toft) parameters.
constexpr std::array<Ellipse, 10> kSheppLogan{{
    {1.0, 0.69, 0.92, 0.0, 0.0, 0.0},
    {-0.8, 0.6624, 0.8740, 0.0, -0.0184, 0.0},
    {-0.2, 0.1100, 0.3100, 0.22, 0.0, -18.0},
    {-0.2, 0.1600, 0.4100, -0.22, 0.0, 18.0},
    {0.1, 0.2100, 0.2500, 0.0, 0.35, 0.0},
    {0.1, 0.0460, 0.0460, 0.0, 0.1, 0.0},
    {0.1, 0.0460, 0.0460, 0.0, -0.1, 0.0},
    {0.1, 0.0460, 0.0230, -0.08, -0.605, 0.0},
    {0.1, 0.0230, 0.0230, 0.0, -0.606, 0.0},
    {0.1, 0.0230, 0.0460, 0.06, -0.605, 0.0},
}};

double x_of_col(int n, int col) { return (2.0 * col + 1.0 - n) / n; }
double y_of_row(int n, int row) { return (n - 2.0 * row - 1.0) / n; }

bool inside(const Ellipse& e, double x, double y) {
  const double phi = e.phi_deg * std::numbers::pi / 180.0;
  const double dx = x - e.x0;
  const double dy = y - e.y0;
  const double u = dx * std::cos(phi) + dy * std::sin(phi);
  const double v = -dx * std::sin(phi) + dy * std::cos(phi);
  return (u * u) / (e.a * e.a) + (v * v) / (e.b * e.b) <= 1.0;
}

}  // namespace

Tumor PhantomSpec::default_tumor(int n, double intensity) {
  return Tumor{0.66 * n, 0.44 * n, 1.5 * n / 32.0, 0.3 * intensity};
}

ImagePair shepp_logan(const PhantomSpec& spec) {
  const int n = spec.n;
  if (n < 1) throw Error(ErrorCode::InvalidConfig, "phantom size must be positive");
  RealMatrix ref = RealMatrix::Zero(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const double x = x_of_col(n, c);
      const double y = y_of_row(n, r);
      double value = 0.0;
      for (const auto& e : kSheppLogan) {
        if (inside(e, x, y)) value += e.value;
      }
      ref(r, c) = spec.intensity * value;
    }
  }
  RealMatrix follow = ref;
  if (spec.tumor) {
    const Tumor& t = *spec.tumor;
    if (t.radius < 0.0 || t.row - t.radius < 0.0 || t.col - t.radius < 0.0 || t.row + t.radius > n - 1 ||
        t.col + t.radius > n - 1) {
      throw Error(ErrorCode::TumorOutOfBounds, "tumor does not fit inside the grid");
    }
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        const double d2 = (r - t.row) * (r - t.row) + (c - t.col) * (c - t.col);
        if (d2 <= t.radius * t.radius) follow(r, c) += t.delta;
      }
    }
  }
  return ImagePair{Image(std::move(ref)), Image(std::move(follow))};
}

ImagePair brain_standin(int n, double intensity) {
  if (n < 8) throw Error(ErrorCode::InvalidConfig, "brain stand-in needs n >= 8");
  const Ellipse skull_outer{0.9, 0.86, 0.94, 0.0, 0.0, 0.0};
  const Ellipse skull_inner{0.0, 0.79, 0.87, 0.0, 0.0, 0.0};
  const Ellipse ventricle_l{0.0, 0.07, 0.22, -0.11, 0.06, -15.0};
  const Ellipse ventricle_r{0.0, 0.07, 0.22, 0.11, 0.06, 15.0};

  RealMatrix ref = RealMatrix::Zero(n, n);
  RealMatrix follow = RealMatrix::Zero(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const double x = x_of_col(n, c);
      const double y = y_of_row(n, r);
      double value = 0.0;
      if (inside(skull_inner, x, y)) {
        const double rho = std::hypot(x / skull_inner.a, y / skull_inner.b);
        const double theta = std::atan2(y, x);
        if (rho < 0.55) {
          value = 0.62;
        } else {
          value = 0.42 + 0.12 * std::cos(9.0 * theta + 3.0 * rho) * std::sin(18.0 * rho);
        }
        if (inside(ventricle_l, x, y) || inside(ventricle_r, x, y)) value = 0.12;
      } else if (inside(skull_outer, x, y)) {
        value = skull_outer.value;
      }
      ref(r, c) = intensity * value;
      const double lx = x - 0.32;
      const double ly = y + 0.28;
      const double lesion = 0.3 * std::exp(-(lx * lx + ly * ly) / (2.0 * 0.05 * 0.05));
      follow(r, c) = intensity * (value + (value > 0.0 && value < 0.8 ? lesion : 0.0));
    }
  }
  return ImagePair{Image(std::move(ref)), Image(std::move(follow))};
}

}  // namespace lacs
