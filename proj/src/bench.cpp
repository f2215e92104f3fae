#include "rdhei/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "rdhei/error.hpp"
#include "rdhei/reconstructor.hpp"

namespace rdhei {

BitVector default_payload(const DataKey& key, std::size_t bits) {
  auto bytes = keystream(key.key, "bench-payload", (bits + 7) / 8);
  auto out = bytes_to_bits(bytes);
  out.resize(bits);
  return out;
}

ImageReport evaluate_image(const GrayImage& img, std::string id, const ImageKey& k_e, const DataKey& k_d,
                           const EmbedParams& params, std::optional<std::span<const std::uint8_t>> payload) {
  ImageReport rep;
  rep.id = std::move(id);
  rep.n_white = params.n_white;
  rep.n_black = params.n_black;
  rep.ec = capacity(img.dims(), params.n_white, params.n_black);

  const BitVector bits = payload ? BitVector(payload->begin(), payload->end())
                                 : default_payload(k_d, static_cast<std::size_t>(rep.ec));

  const GrayImage encrypted = encrypt_image(img, k_e);
  const GrayImage marked = embed(encrypted, bits, k_d, params);
  const BitVector extracted = extract(marked, k_d, params, bits.size());
  if (extracted != bits) {
    throw ExtractionMismatch("extracted payload differs from embedded payload for " + rep.id);
  }

  const auto rec = reconstruct(marked, k_e, params);
  rep.psnr = psnr(img, rec.image);
  rep.white_hir = rec.report.white.hir;
  rep.white_mer = rec.report.white.mer;
  rep.black_hir = rec.report.black.hir;
  rep.black_mer = rec.report.black.mer;
  const auto a = img.pixels();
  const auto b = rec.image.pixels();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if ((a[i] ^ b[i]) & 0x80) ++rep.deformed_msbs;
  }
  return rep;
}

Grid parse_grid(std::string_view text) {
  Grid grid;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find(';', pos);
    if (end == std::string_view::npos) end = text.size();
    const auto item = text.substr(pos, end - pos);
    if (!item.empty()) {
      int nw = 0;
      int nb = 0;
      char extra = 0;
      const std::string s(item);
      if (std::sscanf(s.c_str(), "%d,%d%c", &nw, &nb, &extra) != 2) {
        throw ParameterError("bad grid entry '" + s + "' (expected N_W,N_B)");
      }
      if (nw < 1 || nw > kMaxIntegration || nb < 1 || nb > kMaxIntegration) {
        throw ParameterError("grid entry out of range: " + s);
      }
      grid.emplace_back(nw, nb);
    }
    pos = end + 1;
  }
  if (grid.empty()) throw ParameterError("empty grid");
  return grid;
}

SweepResult sweep(const std::vector<std::pair<std::string, GrayImage>>& corpus, const Grid& grid,
                  const ImageKey& k_e, const DataKey& k_d, std::span<const std::uint8_t> seed, unsigned threads) {
  SweepResult result;
  result.corpus_size = corpus.size();

  std::vector<std::size_t> order(corpus.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto x, auto y) { return corpus[x].first < corpus[y].first; });

  const std::size_t jobs = grid.size() * corpus.size();
  std::vector<ImageReport> reports(jobs);
  std::vector<std::exception_ptr> errors(jobs);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t job; (job = next.fetch_add(1)) < jobs;) {
      const auto& [nw, nb] = grid[job / corpus.size()];
      const auto& [id, img] = corpus[order[job % corpus.size()]];
      try {
        EmbedParams params{nw, nb, std::vector<std::uint8_t>(seed.begin(), seed.end())};
        reports[job] = evaluate_image(img, id, k_e, k_d, params);
      } catch (...) {
        errors[job] = std::current_exception();
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(jobs, 1)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  for (std::size_t g = 0; g < grid.size(); ++g) {
    SweepPoint pt;
    pt.n_white = grid[g].first;
    pt.n_black = grid[g].second;
    double ec_sum = 0.0;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      const auto& rep = reports[g * corpus.size() + i];
      ec_sum += static_cast<double>(rep.ec);
      if (!rep.lossless()) ++pt.failures;
    }
    if (!corpus.empty()) {
      pt.mean_ec = ec_sum / static_cast<double>(corpus.size());
      pt.failure_rate = static_cast<double>(pt.failures) / static_cast<double>(corpus.size());
    }
    result.points.push_back(pt);
  }
  result.reports = std::move(reports);
  return result;
}

SweepResult sweep(const std::filesystem::path& corpus_dir, const Grid& grid, const ImageKey& k_e,
                  const DataKey& k_d, std::span<const std::uint8_t> seed, unsigned threads) {
  if (!std::filesystem::is_directory(corpus_dir)) {
    throw ParameterError("corpus directory not found: " + corpus_dir.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(corpus_dir)) {
    if (!entry.is_regular_file()) continue;
    const auto ext = entry.path().extension().string();
    if (ext == ".pgm" || ext == ".pnm" || ext == ".PGM") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  std::vector<std::pair<std::string, GrayImage>> corpus;
  std::vector<std::string> skipped;
  for (const auto& f : files) {
    try {
      auto img = load_pgm(f);
      if (img.width() < 5 || img.height() < 5) throw FormatError("image smaller than 5x5");
      corpus.emplace_back(f.filename().string(), std::move(img));
    } catch (const std::exception&) {
      skipped.push_back(f.filename().string());
    }
  }
  auto result = sweep(corpus, grid, k_e, k_d, seed, threads);
  result.skipped = skipped.size();
  result.skipped_files = std::move(skipped);
  return result;
}

namespace {

std::string format_psnr_csv(const Psnr& p) {
  if (p.is_infinite()) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", p.db());
  return buf;
}

nlohmann::json report_json(const ImageReport& r) {
  nlohmann::json j = {{"id", r.id},
                      {"n_w", r.n_white},
                      {"n_b", r.n_black},
                      {"ec", r.ec},
                      {"white_hir", r.white_hir},
                      {"white_mer", r.white_mer},
                      {"black_hir", r.black_hir},
                      {"black_mer", r.black_mer},
                      {"deformed_msbs", r.deformed_msbs}};
  if (r.psnr.is_infinite()) {
    j["psnr"] = "inf";
  } else {
    j["psnr"] = r.psnr.db();
  }
  return j;
}

}  // namespace

std::string reports_csv(std::span<const ImageReport> reports) {
  std::ostringstream out;
  out << "id,n_w,n_b,ec,psnr,white_hir,white_mer,black_hir,black_mer,deformed_msbs\n";
  for (const auto& r : reports) {
    out << r.id << ',' << r.n_white << ',' << r.n_black << ',' << r.ec << ',' << format_psnr_csv(r.psnr) << ','
        << r.white_hir << ',' << r.white_mer << ',' << r.black_hir << ',' << r.black_mer << ','
        << r.deformed_msbs << '\n';
  }
  return out.str();
}

std::string reports_json(std::span<const ImageReport> reports) {
  auto arr = nlohmann::json::array();
  for (const auto& r : reports) arr.push_back(report_json(r));
  return arr.dump(2);
}

std::vector<ImageReport> reports_from_json(std::string_view text) {
  const auto doc = nlohmann::json::parse(text);
  std::vector<ImageReport> out;
  for (const auto& j : doc) {
    ImageReport r;
    r.id = j.at("id").get<std::string>();
    r.n_white = j.at("n_w").get<int>();
    r.n_black = j.at("n_b").get<int>();
    r.ec = j.at("ec").get<std::uint64_t>();
    const auto& p = j.at("psnr");
    r.psnr = p.is_string() ? Psnr::infinite() : Psnr::decibels(p.get<double>());
    r.white_hir = j.at("white_hir").get<std::uint64_t>();
    r.white_mer = j.at("white_mer").get<std::uint64_t>();
    r.black_hir = j.at("black_hir").get<std::uint64_t>();
    r.black_mer = j.at("black_mer").get<std::uint64_t>();
    r.deformed_msbs = j.at("deformed_msbs").get<std::uint64_t>();
    out.push_back(std::move(r));
  }
  return out;
}

std::string sweep_csv(const SweepResult& result) {
  std::ostringstream out;
  out << "n_w,n_b,mean_ec,failures,corpus_size,failure_rate\n";
  for (const auto& p : result.points) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", p.mean_ec);
    out << p.n_white << ',' << p.n_black << ',' << buf << ',' << p.failures << ',' << result.corpus_size << ',';
    std::snprintf(buf, sizeof buf, "%.6f", p.failure_rate);
    out << buf << '\n';
  }
  return out.str();
}

std::string sweep_json(const SweepResult& result) {
  nlohmann::json doc;
  doc["corpus_size"] = result.corpus_size;
  doc["skipped"] = result.skipped;
  doc["skipped_files"] = result.skipped_files;
  auto& pts = doc["points"] = nlohmann::json::array();
  for (const auto& p : result.points) {
    pts.push_back({{"n_w", p.n_white},
                   {"n_b", p.n_black},
                   {"mean_ec", p.mean_ec},
                   {"failures", p.failures},
                   {"failure_rate", p.failure_rate}});
  }
  auto& reps = doc["reports"] = nlohmann::json::array();
  for (const auto& r : result.reports) reps.push_back(report_json(r));
  return doc.dump(2);
}

}  // namespace rdhei
