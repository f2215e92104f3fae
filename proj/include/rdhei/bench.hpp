#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rdhei/image.hpp"
#include "rdhei/msb_codec.hpp"
#include "rdhei/stream_crypto.hpp"

namespace rdhei {

struct ImageReport {
  std::string id;
  int n_white = 1;
  int n_black = 1;
  std::uint64_t ec = 0;
  Psnr psnr = Psnr::infinite();
  std::uint64_t white_hir = 0;
  std::uint64_t white_mer = 0;
  std::uint64_t black_hir = 0;
  std::uint64_t black_mer = 0;
  /// Pixels whose recovered MSB differs from the original.
  std::uint64_t deformed_msbs = 0;

  bool lossless() const { return psnr.is_infinite(); }
  bool operator==(const ImageReport&) const = default;
};

/// Thrown when the extracted payload differs from the embedded one.
class ExtractionMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Full-capacity pseudorandom payload: keystream(k_d, "bench-payload") bits.
BitVector default_payload(const DataKey& key, std::size_t bits);

/// encrypt -> embed -> extract -> reconstruct. Throws ExtractionMismatch if
/// the payload does not survive; payload defaults to default_payload().
ImageReport evaluate_image(const GrayImage& img, std::string id, const ImageKey& k_e, const DataKey& k_d,
                           const EmbedParams& params,
                           std::optional<std::span<const std::uint8_t>> payload = std::nullopt);

struct SweepPoint {
  int n_white = 1;
  int n_black = 1;
  double mean_ec = 0.0;
  std::uint64_t failures = 0;
  double failure_rate = 0.0;
};

struct SweepResult {
  std::size_t corpus_size = 0;
  std::size_t skipped = 0;
  std::vector<std::string> skipped_files;
  std::vector<SweepPoint> points;
  std::vector<ImageReport> reports;  ///< grid-point major, images sorted by id
};

using Grid = std::vector<std::pair<int, int>>;

/// Parses "1,1;2,3;3,6".
Grid parse_grid(std::string_view text);

/// Evaluates every *.pgm/*.pnm file of `corpus_dir` at every grid point.
/// Unreadable files are skipped and listed. Images are processed on up to
/// `threads` workers (0 = hardware concurrency); results do not depend on it.
SweepResult sweep(const std::filesystem::path& corpus_dir, const Grid& grid, const ImageKey& k_e,
                  const DataKey& k_d, std::span<const std::uint8_t> seed, unsigned threads = 0);

/// Same, over images already in memory.
SweepResult sweep(const std::vector<std::pair<std::string, GrayImage>>& corpus, const Grid& grid,
                  const ImageKey& k_e, const DataKey& k_d, std::span<const std::uint8_t> seed,
                  unsigned threads = 0);

/// id,n_w,n_b,ec,psnr,white_hir,white_mer,black_hir,black_mer,deformed_msbs
std::string reports_csv(std::span<const ImageReport> reports);
std::string reports_json(std::span<const ImageReport> reports);
std::vector<ImageReport> reports_from_json(std::string_view text);

/// n_w,n_b,mean_ec,failures,corpus_size,failure_rate
std::string sweep_csv(const SweepResult& result);
std::string sweep_json(const SweepResult& result);

}  // namespace rdhei
