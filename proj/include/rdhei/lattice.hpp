#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rdhei/image.hpp"

namespace rdhei {

/// Chess-board role of a pixel. The two outermost rows and columns on each
/// side are Border; interior pixels with (r+c) odd are white targets, even/even
/// are black references and odd/odd are black targets.
enum class Role { WhiteTarget, BlackTarget, BlackReference, Border };

enum class TargetClass { White, Black };

std::string_view to_string(Role role);
std::string_view to_string(TargetClass cls);

inline constexpr int kMaxIntegration = 16;

/// Throws std::out_of_range when (r, c) lies outside `dims`.
Role role_of(int r, int c, Dims dims);

/// Interior (non-border) target counts in raster order.
struct TargetCounts {
  std::size_t white = 0;
  std::size_t black = 0;
  std::size_t reference = 0;
};
TargetCounts count_roles(Dims dims);

/// Default public scramble seed: the ASCII bytes of "rdhei/scramble/v1".
std::vector<std::uint8_t> default_scramble_seed();
/// Parses an even-length hex string into bytes; throws ParameterError.
std::vector<std::uint8_t> parse_hex_bytes(std::string_view hex);
std::string to_hex(std::span<const std::uint8_t> bytes);

/// Index groups of one target class: `groups` holds J runs of exactly N
/// linear pixel indices; `leftover` the final (count mod N) indices, which
/// never carry data.
struct SubsetView {
  std::vector<std::span<const std::uint32_t>> groups;
  std::span<const std::uint32_t> leftover;
};

/// Scrambled, grouped ordering of the target pixels of an image geometry.
///
/// Each class is enumerated in raster order and shuffled with Fisher-Yates
/// driven by a ScrambleGenerator seeded with
///   seed || "scramble/W" or "scramble/B" || le32(rows) || le32(cols).
/// The seed is public so the data hider and the image recipient derive the
/// same groups without sharing any secret.
class LatticePlan {
 public:
  LatticePlan(Dims dims, int n_white, int n_black, std::span<const std::uint8_t> seed);

  Dims dims() const { return dims_; }
  int n_white() const { return n_white_; }
  int n_black() const { return n_black_; }
  int integration(TargetClass cls) const { return cls == TargetClass::White ? n_white_ : n_black_; }

  const std::vector<std::uint32_t>& order(TargetClass cls) const {
    return cls == TargetClass::White ? white_order_ : black_order_;
  }
  std::size_t subset_count(TargetClass cls) const { return order(cls).size() / integration(cls); }
  /// Group j of the class, N consecutive entries of the scrambled order.
  std::span<const std::uint32_t> group(TargetClass cls, std::size_t j) const;
  SubsetView subsets(TargetClass cls) const;

 private:
  Dims dims_;
  int n_white_;
  int n_black_;
  std::vector<std::uint32_t> white_order_;
  std::vector<std::uint32_t> black_order_;
};

/// Throws ParameterError for rows/cols < 5 or N outside [1, 16].
LatticePlan build_plan(Dims dims, int n_white, int n_black, std::span<const std::uint8_t> seed);

}  // namespace rdhei
