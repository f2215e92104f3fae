#include "rdhei/stream_crypto.hpp"

#include <openssl/evp.h>

#include <memory>
#include <stdexcept>

#include "rdhei/error.hpp"

namespace rdhei {

namespace {

int hex_value(char ch) {
  if (ch >= '0' && ch <= '9') return ch - '0';
  if (ch >= 'a' && ch <= 'f') return ch - 'a' + 10;
  if (ch >= 'A' && ch <= 'F') return ch - 'A' + 10;
  return -1;
}

void store_be64(std::uint8_t* out, std::uint64_t v) {
  for (int i = 7; i >= 0; --i) {
    out[i] = static_cast<std::uint8_t>(v & 0xff);
    v >>= 8;
  }
}

struct CipherCtxDeleter {
  void operator()(EVP_CIPHER_CTX* ctx) const { EVP_CIPHER_CTX_free(ctx); }
};
using CipherCtx = std::unique_ptr<EVP_CIPHER_CTX, CipherCtxDeleter>;

CipherCtx make_ecb_context(const Key128& key) {
  CipherCtx ctx(EVP_CIPHER_CTX_new());
  if (!ctx || EVP_EncryptInit_ex(ctx.get(), EVP_aes_128_ecb(), nullptr, key.bytes.data(), nullptr) != 1) {
    throw std::runtime_error("AES-128 initialisation failed");
  }
  EVP_CIPHER_CTX_set_padding(ctx.get(), 0);
  return ctx;
}

void ecb_encrypt(EVP_CIPHER_CTX* ctx, const std::uint8_t* in, std::uint8_t* out, std::size_t len) {
  int written = 0;
  if (EVP_EncryptUpdate(ctx, out, &written, in, static_cast<int>(len)) != 1 ||
      static_cast<std::size_t>(written) != len) {
    throw std::runtime_error("AES-128 block encryption failed");
  }
}

}  // namespace

Key128 Key128::from_hex(std::string_view hex) {
  if (hex.size() != 32) {
    throw KeyFormatError("key must be 32 hex characters, got " + std::to_string(hex.size()));
  }
  Key128 k;
  for (std::size_t i = 0; i < 16; ++i) {
    const int hi = hex_value(hex[2 * i]);
    const int lo = hex_value(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) throw KeyFormatError("key contains non-hex characters");
    k.bytes[i] = static_cast<std::uint8_t>(hi << 4 | lo);
  }
  return k;
}

Key128 Key128::from_bytes(std::span<const std::uint8_t> raw) {
  if (raw.size() != 16) {
    throw KeyFormatError("key file must hold exactly 16 bytes, got " + std::to_string(raw.size()));
  }
  Key128 k;
  std::copy(raw.begin(), raw.end(), k.bytes.begin());
  return k;
}

std::string Key128::hex() const {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve(32);
  for (auto b : bytes) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 0xf]);
  }
  return out;
}

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes, std::uint64_t state) {
  for (auto b : bytes) {
    state ^= b;
    state *= 0x100000001b3ULL;
  }
  return state;
}

std::uint64_t fnv1a64(std::string_view text, std::uint64_t state) {
  return fnv1a64(std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>(text.data()),
                                               text.size()),
                 state);
}

std::array<std::uint8_t, 16> aes128_block(const Key128& key, const std::array<std::uint8_t, 16>& block) {
  auto ctx = make_ecb_context(key);
  std::array<std::uint8_t, 16> out{};
  ecb_encrypt(ctx.get(), block.data(), out.data(), 16);
  return out;
}

std::vector<std::uint8_t> keystream(const Key128& key, std::string_view tag, std::size_t length,
                                    std::uint64_t offset) {
  std::vector<std::uint8_t> out(length);
  if (length == 0) return out;

  const std::uint64_t nonce = fnv1a64(tag);
  const std::uint64_t first_block = offset / 16;
  const std::size_t skip = static_cast<std::size_t>(offset % 16);
  const std::size_t nblocks = (skip + length + 15) / 16;

  std::vector<std::uint8_t> counters(nblocks * 16);
  for (std::size_t b = 0; b < nblocks; ++b) {
    store_be64(&counters[b * 16], nonce);
    store_be64(&counters[b * 16 + 8], first_block + b);
  }
  std::vector<std::uint8_t> blocks(counters.size());
  auto ctx = make_ecb_context(key);
  ecb_encrypt(ctx.get(), counters.data(), blocks.data(), blocks.size());
  std::copy_n(blocks.begin() + static_cast<std::ptrdiff_t>(skip), length, out.begin());
  return out;
}

void xor_bytes(std::span<std::uint8_t> data, std::span<const std::uint8_t> stream) {
  if (data.size() != stream.size()) throw ParameterError("xor_bytes: length mismatch");
  for (std::size_t i = 0; i < data.size(); ++i) data[i] ^= stream[i];
}

GrayImage xor_image(const GrayImage& img, std::span<const std::uint8_t> stream) {
  GrayImage out = img;
  xor_bytes(out.pixels(), stream);
  return out;
}

GrayImage xor_image(const GrayImage& img, const Key128& key, std::string_view tag) {
  return xor_image(img, keystream(key, tag, img.size()));
}

BitVector bytes_to_bits(std::span<const std::uint8_t> bytes) {
  BitVector bits;
  bits.reserve(bytes.size() * 8);
  for (auto b : bytes) {
    for (int k = 7; k >= 0; --k) bits.push_back(static_cast<std::uint8_t>((b >> k) & 1));
  }
  return bits;
}

std::vector<std::uint8_t> bits_to_bytes(std::span<const std::uint8_t> bits) {
  std::vector<std::uint8_t> bytes((bits.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] & 1) bytes[i / 8] |= static_cast<std::uint8_t>(0x80 >> (i % 8));
  }
  return bytes;
}

BitVector xor_payload(std::span<const std::uint8_t> bits, const DataKey& key) {
  const auto stream = keystream(key.key, kPayloadTag, (bits.size() + 7) / 8);
  BitVector out(bits.begin(), bits.end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<std::uint8_t>((out[i] ^ (stream[i / 8] >> (7 - i % 8))) & 1);
  }
  return out;
}

ScrambleGenerator::ScrambleGenerator(std::span<const std::uint8_t> seed) : state_(fnv1a64(seed)) {}

std::uint64_t ScrambleGenerator::next() {
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t ScrambleGenerator::below(std::uint64_t bound) {
  if (bound == 0) throw ParameterError("ScrambleGenerator::below: zero bound");
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = next();
    if (r >= threshold) return r % bound;
  }
}

}  // namespace rdhei
