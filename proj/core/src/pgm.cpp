#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <string>

#include "lacs/bench.hpp"

namespace lacs {
namespace {

std::string next_token(std::istream& in) {
  std::string token;
  char ch = 0;
  while (in.get(ch)) {
    if (ch == '#') {
      std::string skipped;
      std::getline(in, skipped);
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      token.push_back(ch);
      break;
    }
  }
  while (in.get(ch) && !std::isspace(static_cast<unsigned char>(ch))) token.push_back(ch);
  return token;
}

int parse_positive(const std::string& token, const char* what) {
  try {
    std::size_t used = 0;
    const int value = std::stoi(token, &used);
    if (used == token.size() && value > 0) return value;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::UnsupportedFormat, std::string("bad PGM ") + what + ": '" + token + "'");
}

}  // namespace

Image load_image(const std::filesystem::path& path, double scale) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  const std::string magic = next_token(in);
  if (magic != "P5") throw Error(ErrorCode::UnsupportedFormat, "expected binary PGM (P5), got '" + magic + "'");
  const int width = parse_positive(next_token(in), "width");
  const int height = parse_positive(next_token(in), "height");
  const int maxval = parse_positive(next_token(in), "maxval");
  if (maxval > 65535) throw Error(ErrorCode::UnsupportedFormat, "maxval above 65535");
  if (width != height) {
    throw Error(ErrorCode::NonSquareImage, std::to_string(height) + "x" + std::to_string(width));
  }
  const int bytes = maxval < 256 ? 1 : 2;
  std::string raw(static_cast<std::size_t>(width) * height * bytes, '\0');
  if (!in.read(raw.data(), static_cast<std::streamsize>(raw.size()))) {
    throw Error(ErrorCode::IoError, "truncated pixel data in " + path.string());
  }
  RealMatrix pixels(height, width);
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) {
      const std::size_t at = (static_cast<std::size_t>(r) * width + c) * bytes;
      unsigned value = static_cast<unsigned char>(raw[at]);
      if (bytes == 2) value = (value << 8) | static_cast<unsigned char>(raw[at + 1]);
      pixels(r, c) = value / scale;
    }
  }
  return Image(std::move(pixels));
}

void save_image(const Image& img, const std::filesystem::path& path, double scale) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  const int n = img.size();
  out << "P5\n" << n << ' ' << n << "\n65535\n";
  std::string raw(static_cast<std::size_t>(n) * n * 2, '\0');
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const double v = std::clamp(std::round(img(r, c) * scale), 0.0, 65535.0);
      const auto q = static_cast<unsigned>(v);
      const std::size_t at = (static_cast<std::size_t>(r) * n + c) * 2;
      raw[at] = static_cast<char>((q >> 8) & 0xFF);
      raw[at + 1] = static_cast<char>(q & 0xFF);
    }
  }
  out.write(raw.data(), static_cast<std::streamsize>(raw.size()));
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

}  // namespace lacs
