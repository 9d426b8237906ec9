#include "lacs/types.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace lacs {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonSquareImage: return "NonSquareImage";
    case ErrorCode::NonFinitePixel: return "NonFinitePixel";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonPowerOfTwoSize: return "NonPowerOfTwoSize";
    case ErrorCode::InvalidLine: return "InvalidLine";
    case ErrorCode::InvalidPdf: return "InvalidPdf";
    case ErrorCode::EtaOutOfRange: return "EtaOutOfRange";
    case ErrorCode::TooFewLinesPerRound: return "TooFewLinesPerRound";
    case ErrorCode::UnknownCase: return "UnknownCase";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::AllZeroReference: return "AllZeroReference";
    case ErrorCode::GridTooLarge: return "GridTooLarge";
    case ErrorCode::SingularDesign: return "SingularDesign";
    case ErrorCode::NotEnoughLines: return "NotEnoughLines";
    case ErrorCode::EmptyMask: return "EmptyMask";
    case ErrorCode::Diverged: return "Diverged";
    case ErrorCode::ZeroReferenceEnergy: return "ZeroReferenceEnergy";
    case ErrorCode::ZeroTruth: return "ZeroTruth";
    case ErrorCode::TumorOutOfBounds: return "TumorOutOfBounds";
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Image::Image(RealMatrix pixels) : pixels_(std::move(pixels)) {
  if (pixels_.rows() != pixels_.cols() || pixels_.rows() == 0) {
    throw Error(ErrorCode::NonSquareImage, std::to_string(pixels_.rows()) + "x" +
                                               std::to_string(pixels_.cols()));
  }
  if (!pixels_.allFinite()) throw Error(ErrorCode::NonFinitePixel, "image contains NaN or Inf");
}

Image Image::zeros(int n) { return Image(RealMatrix::Zero(n, n)); }

Image Image::constant(int n, double value) { return Image(RealMatrix::Constant(n, n, value)); }

KSpace::KSpace(ComplexMatrix grid) : grid_(std::move(grid)) {
  if (grid_.rows() != grid_.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "k-space grid must be square");
  }
}

SamplingMask::SamplingMask(int n, std::vector<int> lines) : n_(n) {
  lines_.reserve(lines.size());
  for (int ky : lines) add(ky);
}

SamplingMask SamplingMask::full(int n) {
  SamplingMask mask(n);
  mask.lines_.resize(static_cast<std::size_t>(n));
  std::iota(mask.lines_.begin(), mask.lines_.end(), min_line(n));
  return mask;
}

bool SamplingMask::contains(int ky) const {
  return std::binary_search(lines_.begin(), lines_.end(), ky);
}

void SamplingMask::add(int ky) {
  if (ky < min_line(n_) || ky > max_line(n_)) {
    throw Error(ErrorCode::InvalidLine, "line " + std::to_string(ky) + " outside grid of size " +
                                            std::to_string(n_));
  }
  auto it = std::lower_bound(lines_.begin(), lines_.end(), ky);
  if (it != lines_.end() && *it == ky) {
    throw Error(ErrorCode::InvalidLine, "line " + std::to_string(ky) + " already in mask");
  }
  lines_.insert(it, ky);
}

void SamplingMask::add(std::span<const int> lines) {
  for (int ky : lines) add(ky);
}

LinePdf LinePdf::from_weights(std::vector<double> weights) {
  if (weights.empty()) throw Error(ErrorCode::InvalidPdf, "empty weight vector");
  double total = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) throw Error(ErrorCode::InvalidPdf, "weights must be finite and >= 0");
    total += w;
  }
  if (!(total > 0.0)) throw Error(ErrorCode::InvalidPdf, "weights sum to zero");
  for (double& w : weights) w /= total;
  return LinePdf(std::move(weights));
}

LinePdf LinePdf::uniform(int n) {
  return LinePdf(std::vector<double>(static_cast<std::size_t>(n), 1.0 / n));
}

LinePdf LinePdf::from_probabilities(std::vector<double> prob) {
  double total = 0.0;
  for (double q : prob) {
    if (!std::isfinite(q) || q < 0.0) throw Error(ErrorCode::InvalidPdf, "probabilities must be >= 0");
    total += q;
  }
  if (prob.empty() || std::abs(total - 1.0) > 1e-9) {
    throw Error(ErrorCode::InvalidPdf, "probabilities sum to " + std::to_string(total));
  }
  return LinePdf(std::move(prob));
}

double LinePdf::sum() const { return std::accumulate(prob_.begin(), prob_.end(), 0.0); }

}  // namespace lacs
