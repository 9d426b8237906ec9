#include <cmath>
#include <ostream>

#include "lacs/sampling.hpp"

namespace lacs {

LinePdf pdf_vd(int n, double p) {
  if (n < 1) throw Error(ErrorCode::InvalidPdf, "grid size must be positive");
  if (!(p >= 0.0)) throw Error(ErrorCode::InvalidPdf, "exponent must be >= 0");
  std::vector<double> w(static_cast<std::size_t>(n));
  for (int row = 0; row < n; ++row) {
    const int ky = line_of_row(n, row);
    const double base = std::max(0.0, 1.0 - 2.0 * std::abs(ky) / n);
    w[static_cast<std::size_t>(row)] = std::pow(base, p);
  }
  return LinePdf::from_weights(std::move(w));
}

LinePdf pdf_vds(int n, double p, double C) {
  if (n < 1) throw Error(ErrorCode::InvalidPdf, "grid size must be positive");
  if (!(p >= 0.0)) throw Error(ErrorCode::InvalidPdf, "exponent must be >= 0");
  if (!(C > 0.0)) throw Error(ErrorCode::InvalidPdf, "cap must be > 0");
  std::vector<double> w(static_cast<std::size_t>(n), 0.0);
  for (int row = 0; row < n; ++row) {
    const int ky = line_of_row(n, row);
    double total = 0.0;
    for (int col = 0; col < n; ++col) {
      const int kx = line_of_row(n, col);
      const double r2 = static_cast<double>(kx) * kx + static_cast<double>(ky) * ky;
      total += r2 == 0.0 ? C : std::min(C, std::pow(r2, -p));
    }
    w[static_cast<std::size_t>(row)] = total;
  }
  return LinePdf::from_weights(std::move(w));
}

LinePdf pdf_r(const KSpace& reference) {
  const int n = reference.size();
  std::vector<double> w(static_cast<std::size_t>(n));
  for (int row = 0; row < n; ++row) {
    w[static_cast<std::size_t>(row)] = reference.grid().row(row).cwiseAbs().sum();
  }
  double total = 0.0;
  for (double v : w) total += v;
  if (!(total > 0.0)) throw Error(ErrorCode::AllZeroReference, "reference k-space is identically zero");
  return LinePdf::from_weights(std::move(w));
}

LinePdf pdf_nd(const ComplexMatrix& estimate_kspace, const ComplexMatrix& truth_proxy) {
  if (estimate_kspace.rows() != truth_proxy.rows() || estimate_kspace.cols() != truth_proxy.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "f_ND spectra differ in shape");
  }
  const auto n = estimate_kspace.rows();
  std::vector<double> w(static_cast<std::size_t>(n), 0.0);
  double total = 0.0;
  for (Eigen::Index r = 0; r < n; ++r) {
    double line_sum = 0.0;
    for (Eigen::Index c = 0; c < estimate_kspace.cols(); ++c) {
      const Complex a = estimate_kspace(r, c);
      const Complex b = truth_proxy(r, c);
      const double den = std::abs(a) + std::abs(b);
      if (den > 0.0) line_sum += std::abs(a - b) / den;
    }
    w[static_cast<std::size_t>(r)] = line_sum;
    total += line_sum;
  }
  if (!(total > 0.0)) return LinePdf::uniform(static_cast<int>(n));
  return LinePdf::from_weights(std::move(w));
}

ComplexMatrix nd_truth_proxy(const ComplexMatrix& reference_kspace, const Measurements& y) {
  ComplexMatrix proxy = reference_kspace;
  for (std::size_t i = 0; i < y.lines.size(); ++i) {
    proxy.row(row_of_line(y.n, y.lines[i])) = y.rows.row(static_cast<Eigen::Index>(i));
  }
  return proxy;
}

LinePdf mix_pdf(const LinePdf& adaptive, const LinePdf& variable, double gamma) {
  if (adaptive.n() != variable.n()) throw Error(ErrorCode::DimensionMismatch, "pdf sizes differ");
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw Error(ErrorCode::InvalidPdf, "gamma must lie in [0, 1]");
  if (gamma == 0.0) return variable;
  if (gamma == 1.0) return adaptive;
  std::vector<double> mixed(static_cast<std::size_t>(adaptive.n()));
  for (int row = 0; row < adaptive.n(); ++row) {
    mixed[static_cast<std::size_t>(row)] = gamma * adaptive.at_row(row) + (1.0 - gamma) * variable.at_row(row);
  }
  return LinePdf::from_probabilities(std::move(mixed));
}

double update_gamma(std::span<const double> w2) {
  if (w2.empty()) return 0.0;
  double total = 0.0;
  for (double w : w2) total += w;
  return total / static_cast<double>(w2.size());
}

double update_gamma(const RealMatrix& w2) {
  return update_gamma(std::span<const double>(w2.data(), static_cast<std::size_t>(w2.size())));
}

void write_pdf_csv(std::ostream& out, const LinePdf& pdf) {
  const auto old_precision = out.precision(17);
  out << "k_y,prob\n";
  for (int row = 0; row < pdf.n(); ++row) out << line_of_row(pdf.n(), row) << ',' << pdf.at_row(row) << '\n';
  out.precision(old_precision);
}

}  // namespace lacs
