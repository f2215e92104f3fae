#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace rdhei {

/// Image extent in rows (P) and columns (Q).
struct Dims {
  int rows = 0;
  int cols = 0;

  bool operator==(const Dims&) const = default;
};

/// 8-bit grayscale raster stored row-major.
class GrayImage {
 public:
  GrayImage() = default;
  GrayImage(int width, int height, std::uint8_t fill = 0);
  GrayImage(int width, int height, std::vector<std::uint8_t> pixels);

  int width() const { return width_; }
  int height() const { return height_; }
  Dims dims() const { return {height_, width_}; }
  std::size_t size() const { return pixels_.size(); }
  bool empty() const { return pixels_.empty(); }

  std::uint8_t operator()(int r, int c) const {
    return pixels_[static_cast<std::size_t>(r) * width_ + c];
  }
  std::uint8_t& operator()(int r, int c) {
    return pixels_[static_cast<std::size_t>(r) * width_ + c];
  }

  /// Bounds-checked access; throws std::out_of_range.
  std::uint8_t at(int r, int c) const;

  std::span<const std::uint8_t> pixels() const { return pixels_; }
  std::span<std::uint8_t> pixels() { return pixels_; }

  bool operator==(const GrayImage&) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> pixels_;
};

using Histogram = std::array<std::uint64_t, 256>;

/// Peak signal-to-noise ratio against an 8-bit peak. Identical images carry
/// a dedicated infinite marker rather than an overflowed double.
class Psnr {
 public:
  static Psnr infinite() { return Psnr(true, 0.0); }
  static Psnr decibels(double db) { return Psnr(false, db); }

  bool is_infinite() const { return infinite_; }
  /// Finite value in dB; meaningless when is_infinite().
  double db() const { return db_; }
  /// "inf" or the dB value with two decimals.
  std::string str() const;

  bool operator==(const Psnr&) const = default;

 private:
  Psnr(bool inf, double db) : infinite_(inf), db_(db) {}
  bool infinite_;
  double db_;
};

/// Parses binary (P5) or ASCII (P2) PGM with maxval 255.
/// Throws FormatError on malformed input.
GrayImage read_pgm(std::span<const std::uint8_t> bytes);
GrayImage read_pgm(std::string_view bytes);

/// Emits "P5\n<w> <h>\n255\n" followed by the raw raster.
std::vector<std::uint8_t> write_pgm(const GrayImage& img);

GrayImage load_pgm(const std::filesystem::path& path);
/// Writes through a temporary sibling file and renames it into place.
void save_pgm(const std::filesystem::path& path, const GrayImage& img);

Psnr psnr(const GrayImage& a, const GrayImage& b);
Histogram histogram(const GrayImage& img);

/// Whole-file helpers shared by the CLI and bench.
std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);
void write_file_atomic(const std::filesystem::path& path, std::string_view text);

}  // namespace rdhei
