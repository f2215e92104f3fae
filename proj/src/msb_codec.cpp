#include "rdhei/msb_codec.hpp"

#include <string>

#include "rdhei/error.hpp"

namespace rdhei {

namespace {

void check_n(int n) {
  if (n < 1 || n > kMaxIntegration) throw ParameterError("integration parameter must lie in [1, 16]");
}

std::uint32_t full_mask(int n) { return (std::uint32_t{1} << n) - 1; }
std::uint32_t half(int n) { return std::uint32_t{1} << (n - 1); }

std::uint32_t mark_value(std::uint32_t integrated, int bit, int n) {
  return embed_bit(shrink(integrated, n), bit, n);
}

constexpr TargetClass kPhases[] = {TargetClass::White, TargetClass::Black};

}  // namespace

std::uint32_t integrate(std::span<const std::uint8_t> bits) {
  check_n(static_cast<int>(bits.size()));
  std::uint32_t v = 0;
  for (auto b : bits) v = (v << 1) | (b & 1u);
  return v;
}

std::vector<std::uint8_t> disintegrate(std::uint32_t value, int n) {
  check_n(n);
  if (value > full_mask(n)) throw ParameterError("integrated value out of range");
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) bits[k] = static_cast<std::uint8_t>((value >> (n - 1 - k)) & 1u);
  return bits;
}

std::uint32_t shrink(std::uint32_t value, int n) {
  check_n(n);
  if (value > full_mask(n)) throw ParameterError("integrated value out of range");
  return value >= half(n) ? full_mask(n) - value : value;
}

std::uint32_t embed_bit(std::uint32_t shrunk, int bit, int n) {
  check_n(n);
  if (shrunk >= half(n)) throw ParameterError("embed_bit: value not shrunk");
  if (bit != 0 && bit != 1) throw ParameterError("embed_bit: data bit must be 0 or 1");
  return bit == 1 ? full_mask(n) - shrunk : shrunk;
}

int extract_bit(std::uint32_t value, int n) {
  check_n(n);
  return value >= half(n) ? 1 : 0;
}

std::vector<std::uint8_t> mark_features(std::span<const std::uint8_t> features, int n,
                                        std::span<const std::uint8_t> data_bits) {
  check_n(n);
  const std::size_t runs = features.size() / static_cast<std::size_t>(n);
  if (data_bits.size() != runs) throw ParameterError("mark_features: one data bit per run required");
  std::vector<std::uint8_t> out(features.begin(), features.end());
  for (std::size_t j = 0; j < runs; ++j) {
    const auto run = features.subspan(j * n, n);
    const auto marked = disintegrate(mark_value(integrate(run), data_bits[j], n), n);
    std::copy(marked.begin(), marked.end(), out.begin() + static_cast<std::ptrdiff_t>(j * n));
  }
  return out;
}

std::uint64_t capacity(Dims dims, int n_white, int n_black) {
  if (dims.rows < 5 || dims.cols < 5) throw ParameterError("image must be at least 5x5");
  check_n(n_white);
  check_n(n_black);
  // Interior spans rows/cols 2 .. size-3.
  const std::uint64_t ir = static_cast<std::uint64_t>(dims.rows - 4);
  const std::uint64_t ic = static_cast<std::uint64_t>(dims.cols - 4);
  const std::uint64_t interior = ir * ic;
  // Row 2 and column 2 are even, so the interior starts on a reference pixel;
  // white pixels are the odd-parity half of the interior.
  const std::uint64_t white = interior / 2;
  const std::uint64_t black = (ir / 2) * (ic / 2);
  return white / static_cast<std::uint64_t>(n_white) + black / static_cast<std::uint64_t>(n_black);
}

GrayImage embed(const GrayImage& encrypted, std::span<const std::uint8_t> payload, const DataKey& key,
                const EmbedParams& params) {
  const auto plan = params.plan(encrypted.dims());
  const auto ec = capacity(encrypted.dims(), params.n_white, params.n_black);
  if (payload.size() > ec) {
    throw CapacityError("payload of " + std::to_string(payload.size()) + " bits exceeds capacity of " +
                        std::to_string(ec) + " bits");
  }
  BitVector bits = xor_payload(payload, key);
  bits.resize(static_cast<std::size_t>(ec), 0);

  GrayImage marked = encrypted;
  auto px = marked.pixels();
  std::size_t next_bit = 0;
  for (auto cls : kPhases) {
    const int n = plan.integration(cls);
    for (std::size_t j = 0; j < plan.subset_count(cls); ++j) {
      const auto group = plan.group(cls, j);
      std::uint32_t v = 0;
      for (auto idx : group) v = (v << 1) | (px[idx] >> 7);
      const std::uint32_t m = mark_value(v, bits[next_bit++], n);
      for (int k = 0; k < n; ++k) {
        const auto msb = static_cast<std::uint8_t>(((m >> (n - 1 - k)) & 1u) << 7);
        auto& p = px[group[k]];
        p = static_cast<std::uint8_t>((p & 0x7f) | msb);
      }
    }
  }
  return marked;
}

BitVector extract(const GrayImage& marked, const DataKey& key, const EmbedParams& params,
                  std::size_t payload_len) {
  const auto ec = capacity(marked.dims(), params.n_white, params.n_black);
  if (payload_len > ec) {
    throw CapacityError("requested " + std::to_string(payload_len) + " bits but capacity is " +
                        std::to_string(ec) + " bits");
  }
  if (payload_len == 0) return {};
  const auto plan = params.plan(marked.dims());
  const auto px = marked.pixels();
  BitVector bits;
  bits.reserve(payload_len);
  for (auto cls : kPhases) {
    const int n = plan.integration(cls);
    for (std::size_t j = 0; j < plan.subset_count(cls) && bits.size() < payload_len; ++j) {
      std::uint32_t v = 0;
      for (auto idx : plan.group(cls, j)) v = (v << 1) | (px[idx] >> 7);
      bits.push_back(static_cast<std::uint8_t>(extract_bit(v, n)));
    }
  }
  return xor_payload(bits, key);
}

}  // namespace rdhei
