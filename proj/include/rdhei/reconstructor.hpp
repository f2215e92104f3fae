#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rdhei/image.hpp"
#include "rdhei/lattice.hpp"
#include "rdhei/msb_codec.hpp"
#include "rdhei/predictors.hpp"
#include "rdhei/stream_crypto.hpp"

namespace rdhei {

enum class RiskClass { HiR, MeR, LoR, VLoR };

std::string_view to_string(RiskClass risk);

/// HiR below 16n, MeR below 32n, LoR below 64n, VLoR otherwise.
RiskClass risk_class(std::uint64_t margin, int n);

/// Sum of |p - prediction| over the subset pixels.
std::uint64_t integrate_errors(const GrayImage& img, std::span<const std::uint32_t> indices, Predictor p);

/// The decrypted subset and its MSB-complemented alternative, with their
/// integrated prediction errors.
struct CandidatePair {
  std::vector<std::uint8_t> as_is;
  std::vector<std::uint8_t> flipped;
  std::uint64_t errors_as_is = 0;
  std::uint64_t errors_flipped = 0;
};

/// Evaluates both candidates of a subset against the current image state.
/// `img` is left unchanged.
CandidatePair make_candidates(const GrayImage& img, std::span<const std::uint32_t> indices, Predictor p);

struct Decision {
  bool flipped = false;
  std::uint64_t margin = 0;
};

/// Smaller integrated error wins; ties keep the as-is candidate.
Decision decide(std::uint64_t errors_as_is, std::uint64_t errors_flipped);
inline Decision decide(const CandidatePair& pair) { return decide(pair.errors_as_is, pair.errors_flipped); }

struct SubsetRisk {
  TargetClass phase = TargetClass::Black;
  std::uint32_t index = 0;
  std::uint64_t margin = 0;
  RiskClass risk = RiskClass::HiR;
  bool flipped = false;
};

struct RiskCounts {
  std::uint64_t hir = 0;
  std::uint64_t mer = 0;
  std::uint64_t lor = 0;
  std::uint64_t vlor = 0;

  void add(RiskClass risk);
  std::uint64_t total() const { return hir + mer + lor + vlor; }
  bool operator==(const RiskCounts&) const = default;
};

struct RiskReport {
  std::vector<SubsetRisk> subsets;  ///< black phase first, then white, each in plan order
  RiskCounts white;
  RiskCounts black;

  const RiskCounts& counts(TargetClass cls) const { return cls == TargetClass::White ? white : black; }
};

struct Reconstruction {
  GrayImage image;
  RiskReport report;
};

/// Recovers the original image from a marked encrypted image with the image
/// key alone: decrypt, then settle every black subset with BCP over the
/// (exact) reference pixels, then every white subset with WPP over the
/// recovered black pixels.
///
/// Parameters are trusted; mismatched n_white/n_black/seed produce garbage
/// rather than an error since the marked image carries no header.
Reconstruction reconstruct(const GrayImage& marked, const ImageKey& key, const EmbedParams& params);

/// Reconstruction stages on an already decrypted image; modifies `img`.
RiskReport resolve_subsets(GrayImage& img, const LatticePlan& plan);

/// {"white": {...counts}, "black": {...}, "subsets": [...]}.
std::string risk_report_json(const RiskReport& report);
/// Per-subset rows: phase,subset,margin,risk,flipped.
std::string risk_report_csv(const RiskReport& report);
/// Aggregate rows: phase,HiR,MeR,LoR,VLoR (black first).
std::string risk_summary_csv(const RiskReport& report);

}  // namespace rdhei
