#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "rdhei/image.hpp"
#include "rdhei/stream_crypto.hpp"

namespace rdhei::testing {

inline GrayImage constant_image(int w, int h, std::uint8_t v) { return GrayImage(w, h, v); }

/// p(r, c) = (offset + a*r + b*c) mod 256, kept in range by choosing small slopes.
inline GrayImage gradient_image(int w, int h, int a = 1, int b = 1, int offset = 0) {
  GrayImage img(w, h);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) img(r, c) = static_cast<std::uint8_t>((offset + a * r + b * c) & 0xff);
  }
  return img;
}

inline GrayImage noise_image(int w, int h, std::mt19937_64& rng) {
  GrayImage img(w, h);
  std::uniform_int_distribution<int> dist(0, 255);
  for (auto& p : img.pixels()) p = static_cast<std::uint8_t>(dist(rng));
  return img;
}

inline Key128 random_key(std::mt19937_64& rng) {
  Key128 k;
  for (auto& b : k.bytes) b = static_cast<std::uint8_t>(rng());
  return k;
}

inline BitVector random_bits(std::size_t n, std::mt19937_64& rng) {
  BitVector bits(n);
  for (auto& b : bits) b = static_cast<std::uint8_t>(rng() & 1);
  return bits;
}

}  // namespace rdhei::testing
