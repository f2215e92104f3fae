#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rdhei/image.hpp"

namespace rdhei {

/// One bit per element, each 0 or 1.
using BitVector = std::vector<std::uint8_t>;

/// 128-bit secret.
struct Key128 {
  std::array<std::uint8_t, 16> bytes{};

  /// Accepts exactly 32 hex digits; throws KeyFormatError otherwise.
  static Key128 from_hex(std::string_view hex);
  /// Accepts exactly 16 raw bytes (key file contents).
  static Key128 from_bytes(std::span<const std::uint8_t> raw);
  std::string hex() const;

  bool operator==(const Key128&) const = default;
};

// Distinct types for the two roles so that data-hider code cannot be handed
// the image key and vice versa.
struct ImageKey {
  Key128 key;
};
struct DataKey {
  Key128 key;
};

inline constexpr std::string_view kImageTag = "img";
inline constexpr std::string_view kPayloadTag = "payload";

/// FNV-1a 64-bit, continuing from `state`.
std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes,
                      std::uint64_t state = 0xcbf29ce484222325ULL);
std::uint64_t fnv1a64(std::string_view text, std::uint64_t state = 0xcbf29ce484222325ULL);

/// AES-128 of a single block (ECB, no padding).
std::array<std::uint8_t, 16> aes128_block(const Key128& key, const std::array<std::uint8_t, 16>& block);

/// AES-128-CTR keystream. Counter block i is
///   big-endian(fnv1a64(tag)) || big-endian(i)
/// so distinct tags occupy disjoint counter spaces. `offset` is a byte offset
/// into the stream, making the generator seekable.
std::vector<std::uint8_t> keystream(const Key128& key, std::string_view tag, std::size_t length,
                                    std::uint64_t offset = 0);

/// In-place XOR of `data` with `stream` (lengths must match).
void xor_bytes(std::span<std::uint8_t> data, std::span<const std::uint8_t> stream);

/// pixels[i] ^= keystream(key, tag)[i].
GrayImage xor_image(const GrayImage& img, const Key128& key, std::string_view tag = kImageTag);
/// Test hook: XOR against an explicit stream of img.size() bytes.
GrayImage xor_image(const GrayImage& img, std::span<const std::uint8_t> stream);

inline GrayImage encrypt_image(const GrayImage& img, const ImageKey& k) { return xor_image(img, k.key); }
inline GrayImage decrypt_image(const GrayImage& img, const ImageKey& k) { return xor_image(img, k.key); }

/// Bytes expand MSB-first.
BitVector bytes_to_bits(std::span<const std::uint8_t> bytes);
/// Packs MSB-first; the final byte is zero-padded.
std::vector<std::uint8_t> bits_to_bytes(std::span<const std::uint8_t> bits);

/// bits[i] ^= bit i of keystream(k_d, "payload"), bits taken MSB-first.
BitVector xor_payload(std::span<const std::uint8_t> bits, const DataKey& key);

/// Public, non-cryptographic generator driving the target-pixel scramble.
/// State is seeded with fnv1a64(seed) and advanced by splitmix64.
class ScrambleGenerator {
 public:
  explicit ScrambleGenerator(std::span<const std::uint8_t> seed);
  explicit ScrambleGenerator(std::uint64_t state) : state_(state) {}

  std::uint64_t next();
  /// Uniform in [0, bound) by rejection: draws r until r >= (2^64 - bound) mod bound,
  /// then returns r mod bound. bound must be nonzero.
  std::uint64_t below(std::uint64_t bound);

  std::uint64_t state() const { return state_; }

 private:
  std::uint64_t state_;
};

/// Fisher-Yates: for i = n-1 down to 1, swap(v[i], v[gen.below(i+1)]).
template <typename T>
void shuffle(std::span<T> v, ScrambleGenerator& gen) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(gen.below(i));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace rdhei
