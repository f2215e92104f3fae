#include "rdhei/lattice.hpp"

#include <stdexcept>

#include "rdhei/error.hpp"
#include "rdhei/stream_crypto.hpp"

namespace rdhei {

std::string_view to_string(Role role) {
  switch (role) {
    case Role::WhiteTarget: return "white-target";
    case Role::BlackTarget: return "black-target";
    case Role::BlackReference: return "black-reference";
    case Role::Border: return "border";
  }
  return "?";
}

std::string_view to_string(TargetClass cls) { return cls == TargetClass::White ? "white" : "black"; }

Role role_of(int r, int c, Dims dims) {
  if (r < 0 || r >= dims.rows || c < 0 || c >= dims.cols) {
    throw std::out_of_range("role_of: index outside image");
  }
  if (r < 2 || r > dims.rows - 3 || c < 2 || c > dims.cols - 3) return Role::Border;
  if ((r + c) % 2 == 1) return Role::WhiteTarget;
  return (r % 2 == 0) ? Role::BlackReference : Role::BlackTarget;
}

TargetCounts count_roles(Dims dims) {
  TargetCounts counts;
  for (int r = 2; r <= dims.rows - 3; ++r) {
    for (int c = 2; c <= dims.cols - 3; ++c) {
      switch (role_of(r, c, dims)) {
        case Role::WhiteTarget: ++counts.white; break;
        case Role::BlackTarget: ++counts.black; break;
        case Role::BlackReference: ++counts.reference; break;
        case Role::Border: break;
      }
    }
  }
  return counts;
}

std::vector<std::uint8_t> default_scramble_seed() {
  constexpr std::string_view text = "rdhei/scramble/v1";
  return {text.begin(), text.end()};
}

std::vector<std::uint8_t> parse_hex_bytes(std::string_view hex) {
  if (hex.size() % 2 != 0) throw ParameterError("hex string must have even length");
  auto nibble = [](char ch) {
    if (ch >= '0' && ch <= '9') return ch - '0';
    if (ch >= 'a' && ch <= 'f') return ch - 'a' + 10;
    if (ch >= 'A' && ch <= 'F') return ch - 'A' + 10;
    throw ParameterError("invalid hex digit");
  };
  std::vector<std::uint8_t> out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<std::uint8_t>(nibble(hex[2 * i]) << 4 | nibble(hex[2 * i + 1]));
  }
  return out;
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  for (auto b : bytes) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 0xf]);
  }
  return out;
}

namespace {

std::vector<std::uint8_t> class_seed(std::span<const std::uint8_t> seed, std::string_view tag, Dims dims) {
  std::vector<std::uint8_t> bytes(seed.begin(), seed.end());
  bytes.insert(bytes.end(), tag.begin(), tag.end());
  for (std::uint32_t v : {static_cast<std::uint32_t>(dims.rows), static_cast<std::uint32_t>(dims.cols)}) {
    for (int k = 0; k < 4; ++k) bytes.push_back(static_cast<std::uint8_t>(v >> (8 * k)));
  }
  return bytes;
}

}  // namespace

LatticePlan::LatticePlan(Dims dims, int n_white, int n_black, std::span<const std::uint8_t> seed)
    : dims_(dims), n_white_(n_white), n_black_(n_black) {
  if (dims.rows < 5 || dims.cols < 5) throw ParameterError("image must be at least 5x5");
  if (n_white < 1 || n_white > kMaxIntegration || n_black < 1 || n_black > kMaxIntegration) {
    throw ParameterError("integration parameters must lie in [1, 16]");
  }
  for (int r = 2; r <= dims.rows - 3; ++r) {
    for (int c = 2; c <= dims.cols - 3; ++c) {
      const auto idx = static_cast<std::uint32_t>(r * dims.cols + c);
      switch (role_of(r, c, dims)) {
        case Role::WhiteTarget: white_order_.push_back(idx); break;
        case Role::BlackTarget: black_order_.push_back(idx); break;
        default: break;
      }
    }
  }
  ScrambleGenerator white_gen(class_seed(seed, "scramble/W", dims));
  shuffle(std::span<std::uint32_t>(white_order_), white_gen);
  ScrambleGenerator black_gen(class_seed(seed, "scramble/B", dims));
  shuffle(std::span<std::uint32_t>(black_order_), black_gen);
}

std::span<const std::uint32_t> LatticePlan::group(TargetClass cls, std::size_t j) const {
  if (j >= subset_count(cls)) throw std::out_of_range("subset index out of range");
  const auto n = static_cast<std::size_t>(integration(cls));
  return std::span<const std::uint32_t>(order(cls)).subspan(j * n, n);
}

SubsetView LatticePlan::subsets(TargetClass cls) const {
  SubsetView view;
  const auto j_count = subset_count(cls);
  view.groups.reserve(j_count);
  for (std::size_t j = 0; j < j_count; ++j) view.groups.push_back(group(cls, j));
  const auto used = j_count * static_cast<std::size_t>(integration(cls));
  view.leftover = std::span<const std::uint32_t>(order(cls)).subspan(used);
  return view;
}

LatticePlan build_plan(Dims dims, int n_white, int n_black, std::span<const std::uint8_t> seed) {
  return LatticePlan(dims, n_white, n_black, seed);
}

}  // namespace rdhei
