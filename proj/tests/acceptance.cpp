// Acceptance suite: one PASS/FAIL/SKIP line per criterion, nonzero exit on
// any FAIL. Criterion 6 needs the USC-SIPI test images; point RDHEI_SIPI_DIR
// at a directory holding lena, f16 (or airplane), peppers and baboon (or
// mandrill) as PGM files.

#include <sys/wait.h>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include "rdhei/bench.hpp"
#include "rdhei/image.hpp"
#include "rdhei/lattice.hpp"
#include "rdhei/msb_codec.hpp"
#include "rdhei/predictors.hpp"
#include "rdhei/reconstructor.hpp"
#include "rdhei/stream_crypto.hpp"

using namespace rdhei;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

enum class Outcome { Pass, Fail, Skip };

struct Check {
  Outcome outcome = Outcome::Pass;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && outcome != Outcome::Fail) {
      outcome = Outcome::Fail;
      detail = what;
    }
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Key128 random_key(std::mt19937_64& rng) {
  Key128 k;
  for (auto& b : k.bytes) b = static_cast<std::uint8_t>(rng());
  return k;
}

BitVector random_bits(std::size_t n, std::mt19937_64& rng) {
  BitVector bits(n);
  for (auto& b : bits) b = static_cast<std::uint8_t>(rng() & 1);
  return bits;
}

GrayImage gradient(int w, int h, int a, int b, int offset) {
  GrayImage img(w, h);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) img(r, c) = static_cast<std::uint8_t>(std::clamp(offset + a * r + b * c, 0, 255));
  }
  return img;
}

std::uint64_t deformed_msbs(const GrayImage& a, const GrayImage& b) {
  std::uint64_t n = 0;
  for (std::size_t i = 0; i < a.size(); ++i) n += ((a.pixels()[i] ^ b.pixels()[i]) & 0x80) != 0;
  return n;
}

// ---------------------------------------------------------------------------

Check capacity_table() {
  Check chk;
  struct Row {
    int nw, nb;
    std::uint64_t ec;
  };
  const Row rows[] = {{1, 1, 193548}, {1, 2, 161290}, {2, 2, 96774}, {2, 3, 86021}, {2, 4, 80645}, {3, 5, 55913}};
  for (const auto& row : rows) {
    const auto t0 = Clock::now();
    const auto ec = capacity({512, 512}, row.nw, row.nb);
    const double dt = seconds_since(t0);
    chk.require(ec == row.ec, "capacity {" + std::to_string(row.nw) + "," + std::to_string(row.nb) +
                                  "} = " + std::to_string(ec) + ", expected " + std::to_string(row.ec));
    chk.require(dt < 1e-3, "capacity took " + std::to_string(dt * 1e3) + " ms");
  }
  return chk;
}

Check worked_example() {
  Check chk;
  const std::vector<std::uint8_t> features{0, 1, 1, 0, 0, 0, 1, 0, 0, 1, 1, 1, 0, 1,
                                           0, 0, 1, 0, 1, 1, 0, 0, 0, 1, 1, 0, 1};
  const std::vector<std::uint8_t> data{1, 1, 0, 1, 0, 0, 1, 0, 1};
  std::vector<std::uint32_t> integrated, shrunk, marked;
  std::vector<std::uint8_t> extracted;
  for (std::size_t j = 0; j < 9; ++j) {
    integrated.push_back(integrate(std::span<const std::uint8_t>(features).subspan(j * 3, 3)));
    shrunk.push_back(shrink(integrated.back(), 3));
    marked.push_back(embed_bit(shrunk.back(), data[j], 3));
    extracted.push_back(static_cast<std::uint8_t>(extract_bit(marked.back(), 3)));
  }
  chk.require(integrated == std::vector<std::uint32_t>{3, 0, 4, 7, 2, 2, 6, 1, 5}, "integrate mismatch");
  chk.require(shrunk == std::vector<std::uint32_t>{3, 0, 3, 0, 2, 2, 1, 1, 2}, "shrink mismatch");
  chk.require(marked == std::vector<std::uint32_t>{4, 7, 3, 7, 2, 2, 6, 1, 5}, "embed mismatch");
  chk.require(extracted == data, "extract_bit mismatch");
  return chk;
}

Check codec_exhaustive() {
  Check chk;
  const auto t0 = Clock::now();
  for (int n = 1; n <= 8; ++n) {
    const std::uint32_t size = 1u << n;
    for (std::uint32_t v = 0; v < size; ++v) {
      std::vector<std::uint8_t> bits(n);
      for (int k = 0; k < n; ++k) bits[k] = static_cast<std::uint8_t>((v >> (n - 1 - k)) & 1);
      std::vector<std::uint8_t> comp = bits;
      for (auto& b : comp) b ^= 1;
      const auto iv = integrate(bits);
      chk.require(iv == v, "integrate is not the big-endian value");
      chk.require(disintegrate(iv, n) == bits, "disintegrate(integrate) != id");
      const auto s = shrink(v, n);
      chk.require(s < size / 2, "shrink out of range");
      chk.require(s == shrink(size - 1 - v, n), "shrink not complement-symmetric");
      for (int d : {0, 1}) {
        const auto m = embed_bit(s, d, n);
        chk.require(extract_bit(m, n) == d, "extract_bit(embed_bit) != d");
        const auto mb = disintegrate(m, n);
        chk.require(mb == bits || mb == comp, "marked vector not in {F, ~F}");
      }
    }
  }
  chk.require(seconds_since(t0) < 10.0, "exhaustive oracle too slow");
  return chk;
}

Check end_to_end_roundtrip() {
  Check chk;
  std::mt19937_64 rng(20240601);
  const auto t0 = Clock::now();
  int ok = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int w = 8 + static_cast<int>(rng() % 57);
    const int h = 8 + static_cast<int>(rng() % 57);
    GrayImage img;
    switch (trial % 3) {
      case 0: img = GrayImage(w, h, static_cast<std::uint8_t>(rng())); break;
      case 1: img = gradient(w, h, static_cast<int>(rng() % 4), static_cast<int>(rng() % 4), static_cast<int>(rng() % 40)); break;
      default: {
        img = GrayImage(w, h);
        for (auto& p : img.pixels()) p = static_cast<std::uint8_t>(rng());
      }
    }
    const ImageKey ke{random_key(rng)};
    const DataKey kd{random_key(rng)};
    EmbedParams params;
    params.n_white = 1 + static_cast<int>(rng() % 4);
    params.n_black = 1 + static_cast<int>(rng() % 6);
    const auto payload = random_bits(capacity(img.dims(), params.n_white, params.n_black), rng);
    const auto marked = embed(encrypt_image(img, ke), payload, kd, params);
    if (extract(marked, kd, params, payload.size()) == payload) ++ok;
  }
  const double dt = seconds_since(t0);
  chk.require(ok == 200, std::to_string(200 - ok) + " of 200 payloads corrupted");
  chk.require(dt < 60.0, "took " + std::to_string(dt) + " s");
  chk.detail = chk.detail.empty() ? "200/200 exact, " + std::to_string(dt) + " s" : chk.detail;
  return chk;
}

std::vector<GrayImage> smooth_images() {
  std::vector<GrayImage> out;
  for (auto [w, h] : {std::pair{16, 16}, {17, 23}, {64, 64}, {100, 37}, {128, 128}, {256, 256}}) {
    out.emplace_back(w, h, static_cast<std::uint8_t>((w * 7 + h) & 0xff));
    out.emplace_back(w, h, 255);
    out.push_back(gradient(w, h, 0, 1, 0));
    out.push_back(gradient(w, h, 1, 0, 255 - h + 1));  // ends at 255 on the last row
  }
  out.push_back(gradient(128, 64, 1, 1, 20));
  out.push_back(gradient(40, 40, 2, 3, 0));
  return out;
}

Check lossless_smooth() {
  Check chk;
  std::mt19937_64 rng(5);
  const EmbedParams params{1, 1, default_scramble_seed()};
  int n = 0;
  for (const auto& img : smooth_images()) {
    const ImageKey ke{random_key(rng)};
    const DataKey kd{random_key(rng)};
    const auto payload = random_bits(capacity(img.dims(), 1, 1), rng);
    const auto rec = reconstruct(embed(encrypt_image(img, ke), payload, kd, params), ke, params);
    const auto p = psnr(img, rec.image);
    chk.require(p.is_infinite(), std::to_string(img.width()) + "x" + std::to_string(img.height()) +
                                     " image: PSNR " + p.str());
    chk.require(deformed_msbs(img, rec.image) == 0, "deformed MSBs on smooth image");
    ++n;
  }
  if (chk.outcome == Outcome::Pass) chk.detail = std::to_string(n) + " images, PSNR inf";
  return chk;
}

std::optional<fs::path> find_image(const fs::path& dir, std::initializer_list<const char*> stems) {
  for (const auto& entry : fs::directory_iterator(dir)) {
    std::string stem = entry.path().stem().string();
    std::transform(stem.begin(), stem.end(), stem.begin(), [](unsigned char c) { return std::tolower(c); });
    for (const char* s : stems) {
      if (stem == s) return entry.path();
    }
  }
  return std::nullopt;
}

Check sipi_corpus() {
  Check chk;
  const char* env = std::getenv("RDHEI_SIPI_DIR");
  if (!env || !fs::is_directory(env)) {
    chk.outcome = Outcome::Skip;
    chk.detail = "RDHEI_SIPI_DIR not set; USC-SIPI images unavailable";
    return chk;
  }
  const fs::path dir(env);
  const auto lena = find_image(dir, {"lena", "lenna"});
  const auto f16 = find_image(dir, {"f16", "airplane"});
  const auto peppers = find_image(dir, {"peppers"});
  const auto baboon = find_image(dir, {"baboon", "mandrill"});
  if (!lena || !f16 || !peppers || !baboon) {
    chk.outcome = Outcome::Skip;
    chk.detail = "RDHEI_SIPI_DIR lacks one of lena/f16/peppers/baboon";
    return chk;
  }
  const ImageKey ke{Key128::from_hex("000102030405060708090a0b0c0d0e0f")};
  const DataKey kd{Key128::from_hex("f0e1d2c3b4a5968778695a4b3c2d1e0f")};
  struct Case {
    fs::path path;
    int nw, nb;
  };
  for (const auto& c : {Case{*lena, 1, 2}, Case{*f16, 1, 2}, Case{*peppers, 1, 2}, Case{*baboon, 2, 3}}) {
    const auto img = load_pgm(c.path);
    const auto rep = evaluate_image(img, c.path.filename().string(), ke, kd, {c.nw, c.nb, default_scramble_seed()});
    chk.require(rep.lossless(), c.path.filename().string() + " PSNR " + rep.psnr.str());
  }
  const auto lena_img = load_pgm(*lena);
  const auto h = histogram(lena_img);
  const auto peak = std::max_element(h.begin(), h.end()) - h.begin();
  chk.require(peak == 155, "Lena histogram peak at " + std::to_string(peak));

  const auto baboon_img = load_pgm(*baboon);
  const double f_wpp = failure_probability(baboon_img, Predictor::WPP);
  const double f_gap = failure_probability(baboon_img, Predictor::GAP);
  const double f_bcp = failure_probability(baboon_img, Predictor::BCP);
  chk.require(std::abs(f_wpp - 0.0017) <= 0.3 * 0.0017, "Baboon f_WPP = " + std::to_string(f_wpp));
  chk.require(f_wpp < f_gap && f_gap < f_bcp, "Baboon ordering f_WPP < f_GAP < f_BCP violated");
  return chk;
}

Check risk_boundaries() {
  Check chk;
  for (int n = 1; n <= 3; ++n) {
    const auto un = static_cast<std::uint64_t>(n);
    chk.require(risk_class(16 * un - 1, n) == RiskClass::HiR, "16N-1 not HiR");
    chk.require(risk_class(16 * un, n) == RiskClass::MeR, "16N not MeR");
    chk.require(risk_class(32 * un - 1, n) == RiskClass::MeR, "32N-1 not MeR");
    chk.require(risk_class(32 * un, n) == RiskClass::LoR, "32N not LoR");
    chk.require(risk_class(64 * un - 1, n) == RiskClass::LoR, "64N-1 not LoR");
    chk.require(risk_class(64 * un, n) == RiskClass::VLoR, "64N not VLoR");
  }
  return chk;
}

// Structural part: the stage entry points only accept the key of their role.
static_assert(std::is_same_v<decltype(&reconstruct),
                             Reconstruction (*)(const GrayImage&, const ImageKey&, const EmbedParams&)>);
static_assert(std::is_same_v<decltype(&extract),
                             BitVector (*)(const GrayImage&, const DataKey&, const EmbedParams&, std::size_t)>);
static_assert(std::is_same_v<decltype(&embed), GrayImage (*)(const GrayImage&, std::span<const std::uint8_t>,
                                                             const DataKey&, const EmbedParams&)>);
static_assert(!std::is_convertible_v<ImageKey, DataKey> && !std::is_convertible_v<DataKey, ImageKey>);

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(RDHEI_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Check separability() {
  Check chk;
  const fs::path src = fs::path(RDHEI_SOURCE_DIR) / "src";
  const auto recon_src = slurp(src / "reconstructor.cpp");
  const auto codec_src = slurp(src / "msb_codec.cpp");
  chk.require(!recon_src.empty() && !codec_src.empty(), "sources not found");
  chk.require(recon_src.find("DataKey") == std::string::npos, "reconstructor references DataKey");
  chk.require(recon_src.find("xor_payload") == std::string::npos, "reconstructor touches the payload cipher");
  chk.require(codec_src.find("ImageKey") == std::string::npos, "msb codec references ImageKey");
  chk.require(codec_src.find("kImageTag") == std::string::npos, "msb codec touches the image cipher");

  // Runtime part: each stage in its own process holding a single key.
  const fs::path dir = fs::temp_directory_path() / "rdhei_acceptance_sep";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string ke = "2b7e151628aed2a6abf7158809cf4f3c";
  const std::string kd = "000102030405060708090a0b0c0d0e0f";
  std::mt19937_64 rng(9);
  int idx = 0;
  for (const auto& img : smooth_images()) {
    const std::string base = (dir / ("i" + std::to_string(idx++))).string();
    save_pgm(base + ".pgm", img);
    const auto payload = random_bits(capacity(img.dims(), 1, 1), rng);
    write_file_atomic(base + ".bin", bits_to_bytes(payload));
    const auto nbits = std::to_string(payload.size());
    chk.require(run_cli("encrypt --in " + base + ".pgm --out " + base + ".enc.pgm --ke " + ke) == 0, "encrypt failed");
    chk.require(run_cli("embed --in " + base + ".enc.pgm --out " + base + ".mark.pgm --payload " + base +
                        ".bin --payload-len " + nbits + " --kd " + kd) == 0,
                "embed failed");
    chk.require(run_cli("extract --in " + base + ".mark.pgm --out " + base + ".got --payload-len " + nbits +
                        " --kd " + kd) == 0,
                "extract with K_d only failed");
    chk.require(read_file(base + ".got") == bits_to_bytes(payload), "extracted payload differs");
    chk.require(run_cli("reconstruct --in " + base + ".mark.pgm --out " + base + ".rec.pgm --ke " + ke) == 0,
                "reconstruct with K_e only failed");
    chk.require(psnr(img, load_pgm(base + ".rec.pgm")).is_infinite(), "reconstruct with K_e only is lossy");
    // Cross-role invocations are rejected as usage errors.
    chk.require(run_cli("extract --in " + base + ".mark.pgm --out " + base + ".x --payload-len 1 --ke " + ke) == 2,
                "extract accepted --ke");
    chk.require(run_cli("reconstruct --in " + base + ".mark.pgm --out " + base + ".x --kd " + kd) == 2,
                "reconstruct accepted --kd");
  }
  fs::remove_all(dir);
  return chk;
}

Check failure_rate_trend() {
  Check chk;
  const fs::path corpus = fs::path(RDHEI_TEST_DATA) / "natural";
  const auto t0 = Clock::now();
  const ImageKey ke{Key128::from_hex("000102030405060708090a0b0c0d0e0f")};
  const DataKey kd{Key128::from_hex("f0e1d2c3b4a5968778695a4b3c2d1e0f")};
  const auto result = sweep(corpus, {{2, 6}, {3, 6}, {4, 6}}, ke, kd, default_scramble_seed());
  const double dt = seconds_since(t0);
  chk.require(result.corpus_size == 50, "expected 50 corpus images, found " + std::to_string(result.corpus_size));
  const auto& p = result.points;
  chk.require(p[1].failure_rate <= p[0].failure_rate, "F_r{3,6} > F_r{2,6}");
  chk.require(p[2].failure_rate <= p[1].failure_rate, "F_r{4,6} > F_r{3,6}");
  chk.require(dt < 600.0, "sweep took " + std::to_string(dt) + " s");
  if (chk.outcome == Outcome::Pass) {
    std::ostringstream s;
    s << "F_r {2,6}=" << p[0].failure_rate << " {3,6}=" << p[1].failure_rate << " {4,6}=" << p[2].failure_rate
      << ", " << dt << " s";
    chk.detail = s.str();
  }
  return chk;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Check()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "capacity table (512x512)", capacity_table},
      {2, "worked-example golden vectors", worked_example},
      {3, "codec exhaustive oracle N<=8", codec_exhaustive},
      {4, "end-to-end extraction, 200 random images", end_to_end_roundtrip},
      {5, "lossless reconstruction of smooth content", lossless_smooth},
      {6, "USC-SIPI corpus (lossless set, Baboon f-values, Lena peak)", sipi_corpus},
      {7, "risk classifier boundaries", risk_boundaries},
      {8, "separability (structural + per-process keys)", separability},
      {9, "failure-rate trend on 50-image natural corpus", failure_rate_trend},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Check chk;
    try {
      chk = c.run();
    } catch (const std::exception& e) {
      chk.outcome = Outcome::Fail;
      chk.detail = std::string("exception: ") + e.what();
    }
    const char* tag = chk.outcome == Outcome::Pass ? "PASS" : chk.outcome == Outcome::Skip ? "SKIP" : "FAIL";
    if (chk.outcome == Outcome::Fail) ++failed;
    std::cout << "[" << tag << "] " << c.id << ". " << c.name;
    if (!chk.detail.empty()) std::cout << " -- " << chk.detail;
    std::cout << std::endl;
    if (chk.outcome == Outcome::Skip) std::cerr << "warning: criterion " << c.id << " skipped: " << chk.detail << '\n';
  }
  return failed == 0 ? 0 : 1;
}
