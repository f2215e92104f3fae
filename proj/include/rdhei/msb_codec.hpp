#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rdhei/image.hpp"
#include "rdhei/lattice.hpp"
#include "rdhei/stream_crypto.hpp"

namespace rdhei {

/// Integration parameters and public scramble seed shared by every party.
struct EmbedParams {
  int n_white = 1;
  int n_black = 1;
  std::vector<std::uint8_t> seed = default_scramble_seed();

  LatticePlan plan(Dims dims) const { return build_plan(dims, n_white, n_black, seed); }
};

// Integrated-MSB primitives. `n` is the integration parameter, 1 <= n <= 16.
// Feature vectors are big-endian: bits[0] carries weight 2^(n-1).

std::uint32_t integrate(std::span<const std::uint8_t> bits);
std::vector<std::uint8_t> disintegrate(std::uint32_t value, int n);

/// Folds the upper half of [0, 2^n) onto the lower half by 1's complement.
std::uint32_t shrink(std::uint32_t value, int n);
/// Complements `shrunk` when bit == 1. Requires shrunk < 2^(n-1).
std::uint32_t embed_bit(std::uint32_t shrunk, int bit, int n);
/// 1 iff value >= 2^(n-1).
int extract_bit(std::uint32_t value, int n);

/// Marks consecutive runs of `n` features, one data bit per run, and
/// returns the marked feature stream. Trailing features that do not fill a
/// run are returned unchanged. Requires data_bits.size() == features.size() / n.
std::vector<std::uint8_t> mark_features(std::span<const std::uint8_t> features, int n,
                                        std::span<const std::uint8_t> data_bits);

/// Bits carried by an image of these dimensions:
/// floor(white targets / n_white) + floor(black targets / n_black).
std::uint64_t capacity(Dims dims, int n_white, int n_black);

/// Embeds `payload` into an encrypted image. The payload is encrypted under
/// k_d and zero-padded to capacity; white subsets take the first J_W bits,
/// black subsets the rest. Only MSBs of grouped target pixels change.
/// Throws CapacityError when payload exceeds capacity.
GrayImage embed(const GrayImage& encrypted, std::span<const std::uint8_t> payload, const DataKey& key,
                const EmbedParams& params);

/// Reads the first `payload_len` embedded bits and decrypts them under k_d.
/// Throws CapacityError when payload_len exceeds capacity.
BitVector extract(const GrayImage& marked, const DataKey& key, const EmbedParams& params,
                  std::size_t payload_len);

}  // namespace rdhei
