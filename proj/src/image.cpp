#include "rdhei/image.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <limits>
#include <stdexcept>
#include <string>
#include <system_error>

#include "rdhei/error.hpp"

namespace rdhei {

GrayImage::GrayImage(int width, int height, std::uint8_t fill) : width_(width), height_(height) {
  if (width <= 0 || height <= 0) {
    throw ParameterError("image dimensions must be positive");
  }
  pixels_.assign(static_cast<std::size_t>(width) * height, fill);
}

GrayImage::GrayImage(int width, int height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  if (width <= 0 || height <= 0) {
    throw ParameterError("image dimensions must be positive");
  }
  if (pixels_.size() != static_cast<std::size_t>(width) * height) {
    throw ParameterError("pixel count does not match width x height");
  }
}

std::uint8_t GrayImage::at(int r, int c) const {
  if (r < 0 || r >= height_ || c < 0 || c >= width_) {
    throw std::out_of_range("pixel (" + std::to_string(r) + ", " + std::to_string(c) +
                            ") outside " + std::to_string(height_) + "x" + std::to_string(width_));
  }
  return (*this)(r, c);
}

std::string Psnr::str() const {
  if (infinite_) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", db_);
  return buf;
}

namespace {

// Tokenizer over a PGM header. Comments run from '#' to end of line and may
// appear between any two tokens.
class HeaderReader {
 public:
  explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      const auto ch = bytes_[pos_];
      if (ch == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
      } else if (std::isspace(ch)) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  long number(const char* what) {
    skip_space_and_comments();
    if (pos_ >= bytes_.size()) throw FormatError(std::string("truncated header: missing ") + what);
    if (!std::isdigit(bytes_[pos_])) {
      throw FormatError(std::string("malformed header: expected ") + what);
    }
    long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > std::numeric_limits<int>::max()) {
        throw FormatError(std::string("header value too large: ") + what);
      }
      ++pos_;
    }
    if (pos_ < bytes_.size() && !std::isspace(bytes_[pos_]) && bytes_[pos_] != '#') {
      throw FormatError(std::string("malformed header: junk after ") + what);
    }
    return value;
  }

  std::size_t pos() const { return pos_; }
  void set_pos(std::size_t p) { pos_ = p; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

GrayImage read_pgm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5')) {
    throw FormatError("not a PGM file (expected P2 or P5 magic)");
  }
  const bool binary = bytes[1] == '5';
  if (bytes.size() > 2 && !std::isspace(bytes[2]) && bytes[2] != '#') {
    throw FormatError("malformed magic number");
  }
  HeaderReader reader(bytes);
  reader.set_pos(2);
  const long width = reader.number("width");
  const long height = reader.number("height");
  const long maxval = reader.number("maxval");
  if (width <= 0 || height <= 0) throw FormatError("image dimensions must be positive");
  if (maxval != 255) {
    throw FormatError("maxval " + std::to_string(maxval) + " unsupported (only 255)");
  }
  const auto count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  std::vector<std::uint8_t> pixels;

  if (binary) {
    // Exactly one whitespace byte separates maxval from the raster.
    std::size_t start = reader.pos();
    if (start >= bytes.size()) throw FormatError("truncated pixel data");
    ++start;
    if (bytes.size() - start < count) throw FormatError("truncated pixel data");
    pixels.assign(bytes.begin() + static_cast<std::ptrdiff_t>(start),
                  bytes.begin() + static_cast<std::ptrdiff_t>(start + count));
  } else {
    pixels.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
      long v = 0;
      try {
        v = reader.number("pixel value");
      } catch (const FormatError&) {
        throw FormatError("truncated or malformed pixel data at sample " + std::to_string(i));
      }
      if (v > maxval) throw FormatError("pixel value exceeds maxval");
      pixels.push_back(static_cast<std::uint8_t>(v));
    }
  }
  return GrayImage(static_cast<int>(width), static_cast<int>(height), std::move(pixels));
}

GrayImage read_pgm(std::string_view bytes) {
  return read_pgm(std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>(bytes.data()),
                                                bytes.size()));
}

std::vector<std::uint8_t> write_pgm(const GrayImage& img) {
  const std::string header =
      "P5\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), img.pixels().begin(), img.pixels().end());
  return out;
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

void write_file_atomic(const std::filesystem::path& path, std::string_view text) {
  write_file_atomic(path, std::span<const std::uint8_t>(
                              reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

GrayImage load_pgm(const std::filesystem::path& path) { return read_pgm(read_file(path)); }

void save_pgm(const std::filesystem::path& path, const GrayImage& img) {
  write_file_atomic(path, write_pgm(img));
}

Psnr psnr(const GrayImage& a, const GrayImage& b) {
  if (a.dims() != b.dims()) throw ParameterError("psnr: image dimensions differ");
  std::uint64_t sse = 0;
  const auto pa = a.pixels();
  const auto pb = b.pixels();
  for (std::size_t i = 0; i < pa.size(); ++i) {
    const int d = int(pa[i]) - int(pb[i]);
    sse += static_cast<std::uint64_t>(d * d);
  }
  if (sse == 0) return Psnr::infinite();
  const double mse = static_cast<double>(sse) / static_cast<double>(pa.size());
  return Psnr::decibels(10.0 * std::log10(255.0 * 255.0 / mse));
}

Histogram histogram(const GrayImage& img) {
  Histogram counts{};
  for (auto v : img.pixels()) ++counts[v];
  return counts;
}

}  // namespace rdhei
