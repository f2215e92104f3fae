// rdhei: command-line front end for encrypt / embed / extract / reconstruct.
//
// Exit codes:
//   0 success            3 unreadable or malformed input file
//   1 other runtime error 4 payload exceeds capacity
//   2 usage error         5 malformed key
//   6 verification failed (roundtrip payload mismatch or lossy recovery)

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rdhei/bench.hpp"
#include "rdhei/error.hpp"
#include "rdhei/image.hpp"
#include "rdhei/lattice.hpp"
#include "rdhei/msb_codec.hpp"
#include "rdhei/predictors.hpp"
#include "rdhei/reconstructor.hpp"
#include "rdhei/stream_crypto.hpp"

namespace fs = std::filesystem;
using namespace rdhei;

namespace {

enum Exit : int {
  kOk = 0,
  kRuntime = 1,
  kUsage = 2,
  kFormat = 3,
  kCapacity = 4,
  kKeyFormat = 5,
  kVerify = 6,
};

// Defaults used by `roundtrip` when no keys are given.
constexpr const char* kDemoImageKey = "000102030405060708090a0b0c0d0e0f";
constexpr const char* kDemoDataKey = "f0e1d2c3b4a5968778695a4b3c2d1e0f";

struct KeyArgs {
  std::string hex;
  std::string file;

  bool given() const { return !hex.empty() || !file.empty(); }
  Key128 resolve(const char* what) const {
    if (!hex.empty() && !file.empty()) throw KeyFormatError(std::string(what) + ": give a hex key or a key file, not both");
    if (!file.empty()) return Key128::from_bytes(read_file(file));
    if (hex.empty()) throw KeyFormatError(std::string(what) + " is required");
    return Key128::from_hex(hex);
  }
};

struct ParamArgs {
  int n_white = 1;
  int n_black = 1;
  std::string seed_hex;

  EmbedParams resolve() const {
    EmbedParams p;
    p.n_white = n_white;
    p.n_black = n_black;
    if (!seed_hex.empty()) p.seed = parse_hex_bytes(seed_hex);
    return p;
  }
};

void add_key(CLI::App* cmd, KeyArgs& k, const std::string& name, const std::string& desc) {
  cmd->add_option("--" + name, k.hex, desc + " (32 hex chars)");
  cmd->add_option("--" + name + "-file", k.file, desc + " file (16 raw bytes)");
}

void add_params(CLI::App* cmd, ParamArgs& p) {
  cmd->add_option("--nw", p.n_white, "white-target integration parameter N_W")
      ->check(CLI::Range(1, kMaxIntegration));
  cmd->add_option("--nb", p.n_black, "black-target integration parameter N_B")
      ->check(CLI::Range(1, kMaxIntegration));
  cmd->add_option("--seed", p.seed_hex, "public scramble seed as hex (default: hex of \"rdhei/scramble/v1\")")
      ->envname("RDHEI_SEED");
}

BitVector load_payload(const std::string& path, std::optional<std::size_t> len_bits) {
  auto bits = bytes_to_bits(read_file(path));
  if (len_bits) {
    if (*len_bits > bits.size()) {
      throw ParameterError("--payload-len exceeds the payload file (" + std::to_string(bits.size()) + " bits)");
    }
    bits.resize(*len_bits);
  }
  return bits;
}

GrayImage load_image(const std::string& path) {
  try {
    return load_pgm(path);
  } catch (const FormatError&) {
    throw;
  } catch (const std::exception& e) {
    throw FormatError(e.what());
  }
}

void print_counts(std::ostream& out, const char* phase, const RiskCounts& c) {
  out << phase << ": HiR=" << c.hir << " MeR=" << c.mer << " LoR=" << c.lor << " VLoR=" << c.vlor << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Separable reversible data hiding in encrypted grayscale images"};
  app.require_subcommand(1);

  // encrypt / decrypt
  std::string in_path, out_path;
  KeyArgs ke, kd;
  ParamArgs params;

  auto* encrypt_cmd = app.add_subcommand("encrypt", "XOR an image with the K_e keystream");
  auto* decrypt_cmd = app.add_subcommand("decrypt", "Inverse of encrypt (no subset recovery)");
  for (auto* cmd : {encrypt_cmd, decrypt_cmd}) {
    cmd->add_option("--in", in_path, "input PGM")->required();
    cmd->add_option("--out", out_path, "output PGM")->required();
    add_key(cmd, ke, "ke", "image key K_e");
  }

  // embed: data-hider key only
  std::string payload_path;
  std::optional<std::size_t> payload_len;
  auto* embed_cmd = app.add_subcommand("embed", "Embed a payload into an encrypted image (needs K_d only)");
  embed_cmd->add_option("--in", in_path, "encrypted PGM")->required();
  embed_cmd->add_option("--out", out_path, "marked encrypted PGM")->required();
  embed_cmd->add_option("--payload", payload_path, "payload file (raw bytes, bits MSB-first)")->required();
  embed_cmd->add_option("--payload-len", payload_len, "payload length in bits (default: whole file)");
  add_key(embed_cmd, kd, "kd", "data-hider key K_d");
  add_params(embed_cmd, params);

  // extract: data-hider key only
  std::size_t extract_len = 0;
  auto* extract_cmd = app.add_subcommand("extract", "Extract the payload from a marked image (needs K_d only)");
  extract_cmd->add_option("--in", in_path, "marked encrypted PGM")->required();
  extract_cmd->add_option("--out", out_path, "payload output file")->required();
  extract_cmd->add_option("--payload-len", extract_len, "payload length in bits")->required();
  add_key(extract_cmd, kd, "kd", "data-hider key K_d");
  add_params(extract_cmd, params);

  // reconstruct: image key only
  std::string report_json_path, report_csv_path;
  auto* reconstruct_cmd =
      app.add_subcommand("reconstruct", "Recover the original image from a marked image (needs K_e only)");
  reconstruct_cmd->add_option("--in", in_path, "marked encrypted PGM")->required();
  reconstruct_cmd->add_option("--out", out_path, "recovered PGM")->required();
  reconstruct_cmd->add_option("--report-json", report_json_path, "risk report (JSON)");
  reconstruct_cmd->add_option("--report-csv", report_csv_path, "risk report, per-subset rows (CSV)");
  add_key(reconstruct_cmd, ke, "ke", "image key K_e");
  add_params(reconstruct_cmd, params);

  // roundtrip
  bool require_lossless = false;
  auto* roundtrip_cmd = app.add_subcommand("roundtrip", "encrypt -> embed -> extract -> reconstruct on one image");
  roundtrip_cmd->add_option("--in", in_path, "original PGM")->required();
  roundtrip_cmd->add_option("--payload", payload_path, "payload file (default: full-capacity pseudorandom)");
  roundtrip_cmd->add_option("--payload-len", payload_len, "payload length in bits");
  roundtrip_cmd->add_flag("--require-lossless", require_lossless, "exit 6 unless PSNR is infinite");
  add_key(roundtrip_cmd, ke, "ke", "image key K_e");
  add_key(roundtrip_cmd, kd, "kd", "data-hider key K_d");
  add_params(roundtrip_cmd, params);

  // analyze
  std::string hist_path, fvalues_path;
  std::vector<std::string> predictor_names{"WPP", "BCP", "MED", "GAP"};
  auto* analyze_cmd = app.add_subcommand("analyze", "Prediction-error histograms and failure probabilities");
  analyze_cmd->add_option("--in", in_path, "original PGM")->required();
  analyze_cmd->add_option("--hist", hist_path, "CSV of predictor,e,count");
  analyze_cmd->add_option("--fvalues", fvalues_path, "CSV of predictor,f (default: stdout)");
  analyze_cmd->add_option("--predictors", predictor_names, "subset of WPP,BCP,MED,GAP")->delimiter(',');

  // bench
  std::string corpus_dir, grid_text = "1,1;2,3;3,6", sweep_json_path, images_csv_path;
  unsigned threads = 0;
  auto* bench_cmd = app.add_subcommand("bench", "Failure-rate sweep over a directory of PGM images");
  bench_cmd->add_option("--corpus", corpus_dir, "directory of PGM files")->required();
  bench_cmd->add_option("--grid", grid_text, "N_W,N_B pairs separated by ';'");
  bench_cmd->add_option("--out", out_path, "sweep summary CSV")->required();
  bench_cmd->add_option("--json", sweep_json_path, "full sweep result (JSON)");
  bench_cmd->add_option("--images-out", images_csv_path, "per-image report CSV");
  bench_cmd->add_option("--threads", threads, "worker threads (0 = all cores)");
  bench_cmd->add_option("--seed", params.seed_hex, "public scramble seed as hex")->envname("RDHEI_SEED");
  add_key(bench_cmd, ke, "ke", "image key K_e");
  add_key(bench_cmd, kd, "kd", "data-hider key K_d");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (encrypt_cmd->parsed() || decrypt_cmd->parsed()) {
      const ImageKey key{ke.resolve("--ke")};
      const auto img = load_image(in_path);
      save_pgm(out_path, xor_image(img, key.key));
      return kOk;
    }

    if (embed_cmd->parsed()) {
      const DataKey key{kd.resolve("--kd")};
      const auto p = params.resolve();
      const auto img = load_image(in_path);
      const auto bits = load_payload(payload_path, payload_len);
      save_pgm(out_path, embed(img, bits, key, p));
      std::cout << "embedded " << bits.size() << " of " << capacity(img.dims(), p.n_white, p.n_black)
                << " bits\n";
      return kOk;
    }

    if (extract_cmd->parsed()) {
      const DataKey key{kd.resolve("--kd")};
      const auto p = params.resolve();
      const auto img = load_image(in_path);
      const auto bits = extract(img, key, p, extract_len);
      write_file_atomic(out_path, bits_to_bytes(bits));
      return kOk;
    }

    if (reconstruct_cmd->parsed()) {
      const ImageKey key{ke.resolve("--ke")};
      const auto p = params.resolve();
      const auto img = load_image(in_path);
      const auto rec = reconstruct(img, key, p);
      save_pgm(out_path, rec.image);
      if (!report_json_path.empty()) write_file_atomic(report_json_path, risk_report_json(rec.report));
      if (!report_csv_path.empty()) write_file_atomic(report_csv_path, risk_report_csv(rec.report));
      print_counts(std::cout, "black", rec.report.black);
      print_counts(std::cout, "white", rec.report.white);
      return kOk;
    }

    if (roundtrip_cmd->parsed()) {
      const ImageKey k_e{ke.given() ? ke.resolve("--ke") : Key128::from_hex(kDemoImageKey)};
      const DataKey k_d{kd.given() ? kd.resolve("--kd") : Key128::from_hex(kDemoDataKey)};
      const auto p = params.resolve();
      const auto img = load_image(in_path);
      const auto ec = capacity(img.dims(), p.n_white, p.n_black);
      BitVector bits = payload_path.empty() ? default_payload(k_d, static_cast<std::size_t>(payload_len.value_or(ec)))
                                            : load_payload(payload_path, payload_len);
      if (bits.size() > ec) {
        throw CapacityError("payload of " + std::to_string(bits.size()) + " bits exceeds capacity of " +
                            std::to_string(ec) + " bits");
      }
      ImageReport rep;
      try {
        rep = evaluate_image(img, fs::path(in_path).filename().string(), k_e, k_d, p, std::span(bits));
      } catch (const ExtractionMismatch& e) {
        std::cout << "EC=" << ec << "\npayload MISMATCH\n";
        std::cerr << e.what() << '\n';
        return kVerify;
      }
      std::cout << "EC=" << rep.ec << "\npayload OK (" << bits.size() << " bits)\nPSNR=" << rep.psnr.str()
                << "\ndeformed MSBs=" << rep.deformed_msbs << "\nwhite: HiR=" << rep.white_hir
                << " MeR=" << rep.white_mer << "\nblack: HiR=" << rep.black_hir << " MeR=" << rep.black_mer
                << '\n';
      if (require_lossless && !rep.lossless()) return kVerify;
      return kOk;
    }

    if (analyze_cmd->parsed()) {
      const auto img = load_image(in_path);
      std::ostringstream hist_csv, f_csv;
      hist_csv << "predictor,e,count\n";
      f_csv << "predictor,f\n";
      for (const auto& name : predictor_names) {
        const auto pred = predictor_from_string(name);
        const auto hist = error_histogram(img, pred);
        for (int e = -255; e <= 255; ++e) {
          if (hist.at(e) != 0) hist_csv << to_string(pred) << ',' << e << ',' << hist.at(e) << '\n';
        }
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6f", failure_probability(hist));
        f_csv << to_string(pred) << ',' << buf << '\n';
      }
      if (!hist_path.empty()) write_file_atomic(hist_path, hist_csv.str());
      if (!fvalues_path.empty()) {
        write_file_atomic(fvalues_path, f_csv.str());
      } else {
        std::cout << f_csv.str();
      }
      return kOk;
    }

    if (bench_cmd->parsed()) {
      const ImageKey k_e{ke.resolve("--ke")};
      const DataKey k_d{kd.resolve("--kd")};
      const auto seed = params.seed_hex.empty() ? default_scramble_seed() : parse_hex_bytes(params.seed_hex);
      const auto grid = parse_grid(grid_text);
      const auto result = sweep(fs::path(corpus_dir), grid, k_e, k_d, seed, threads);
      write_file_atomic(out_path, sweep_csv(result));
      if (!sweep_json_path.empty()) write_file_atomic(sweep_json_path, sweep_json(result));
      if (!images_csv_path.empty()) write_file_atomic(images_csv_path, reports_csv(result.reports));
      std::cout << "corpus: " << result.corpus_size << " images, " << result.skipped << " skipped\n"
                << sweep_csv(result);
      return kOk;
    }
  } catch (const KeyFormatError& e) {
    std::cerr << "key error: " << e.what() << '\n';
    return kKeyFormat;
  } catch (const CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << '\n';
    return kCapacity;
  } catch (const FormatError& e) {
    std::cerr << "format error: " << e.what() << '\n';
    return kFormat;
  } catch (const ParameterError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntime;
  }
  return kUsage;
}
