#include "rdhei/reconstructor.hpp"

#include <cstdlib>
#include <sstream>

#include <json.hpp>

#include "rdhei/error.hpp"

namespace rdhei {

std::string_view to_string(RiskClass risk) {
  switch (risk) {
    case RiskClass::HiR: return "HiR";
    case RiskClass::MeR: return "MeR";
    case RiskClass::LoR: return "LoR";
    case RiskClass::VLoR: return "VLoR";
  }
  return "?";
}

RiskClass risk_class(std::uint64_t margin, int n) {
  if (n < 1) throw ParameterError("risk_class: n must be positive");
  const auto un = static_cast<std::uint64_t>(n);
  if (margin < 16 * un) return RiskClass::HiR;
  if (margin < 32 * un) return RiskClass::MeR;
  if (margin < 64 * un) return RiskClass::LoR;
  return RiskClass::VLoR;
}

void RiskCounts::add(RiskClass risk) {
  switch (risk) {
    case RiskClass::HiR: ++hir; break;
    case RiskClass::MeR: ++mer; break;
    case RiskClass::LoR: ++lor; break;
    case RiskClass::VLoR: ++vlor; break;
  }
}

std::uint64_t integrate_errors(const GrayImage& img, std::span<const std::uint32_t> indices, Predictor p) {
  const int cols = img.width();
  std::uint64_t sum = 0;
  for (auto idx : indices) {
    const int r = static_cast<int>(idx) / cols;
    const int c = static_cast<int>(idx) % cols;
    sum += static_cast<std::uint64_t>(std::abs(int(img(r, c)) - predict(p, img, r, c)));
  }
  return sum;
}

namespace {

void flip_msbs(GrayImage& img, std::span<const std::uint32_t> indices) {
  auto px = img.pixels();
  for (auto idx : indices) px[idx] ^= 0x80;
}

Predictor predictor_for(TargetClass cls) { return cls == TargetClass::White ? Predictor::WPP : Predictor::BCP; }

}  // namespace

CandidatePair make_candidates(const GrayImage& img, std::span<const std::uint32_t> indices, Predictor p) {
  CandidatePair pair;
  const auto px = img.pixels();
  for (auto idx : indices) {
    pair.as_is.push_back(px[idx]);
    pair.flipped.push_back(static_cast<std::uint8_t>(px[idx] ^ 0x80));
  }
  // Subset members never sit in each other's prediction context, so errors
  // can be evaluated on a copy with all members flipped at once.
  pair.errors_as_is = integrate_errors(img, indices, p);
  GrayImage alt = img;
  flip_msbs(alt, indices);
  pair.errors_flipped = integrate_errors(alt, indices, p);
  return pair;
}

Decision decide(std::uint64_t errors_as_is, std::uint64_t errors_flipped) {
  Decision d;
  d.flipped = errors_flipped < errors_as_is;
  d.margin = errors_as_is > errors_flipped ? errors_as_is - errors_flipped : errors_flipped - errors_as_is;
  return d;
}

RiskReport resolve_subsets(GrayImage& img, const LatticePlan& plan) {
  if (img.dims() != plan.dims()) throw ParameterError("plan does not match image dimensions");
  RiskReport report;
  report.subsets.reserve(plan.subset_count(TargetClass::White) + plan.subset_count(TargetClass::Black));
  // Black subsets depend only on reference pixels; white subsets need the
  // recovered black targets, so the phase order is fixed.
  for (auto cls : {TargetClass::Black, TargetClass::White}) {
    const Predictor p = predictor_for(cls);
    const int n = plan.integration(cls);
    auto& counts = cls == TargetClass::White ? report.white : report.black;
    for (std::size_t j = 0; j < plan.subset_count(cls); ++j) {
      const auto group = plan.group(cls, j);
      const auto as_is = integrate_errors(img, group, p);
      flip_msbs(img, group);
      const auto flipped = integrate_errors(img, group, p);
      const Decision d = decide(as_is, flipped);
      if (!d.flipped) flip_msbs(img, group);

      SubsetRisk rec;
      rec.phase = cls;
      rec.index = static_cast<std::uint32_t>(j);
      rec.margin = d.margin;
      rec.risk = risk_class(d.margin, n);
      rec.flipped = d.flipped;
      counts.add(rec.risk);
      report.subsets.push_back(rec);
    }
  }
  return report;
}

Reconstruction reconstruct(const GrayImage& marked, const ImageKey& key, const EmbedParams& params) {
  const auto plan = params.plan(marked.dims());
  Reconstruction out{decrypt_image(marked, key), {}};
  out.report = resolve_subsets(out.image, plan);
  return out;
}

namespace {

nlohmann::json counts_json(const RiskCounts& c) {
  return {{"HiR", c.hir}, {"MeR", c.mer}, {"LoR", c.lor}, {"VLoR", c.vlor}};
}

}  // namespace

std::string risk_report_json(const RiskReport& report) {
  nlohmann::json doc;
  doc["black"] = counts_json(report.black);
  doc["white"] = counts_json(report.white);
  auto& rows = doc["subsets"] = nlohmann::json::array();
  for (const auto& s : report.subsets) {
    rows.push_back({{"phase", to_string(s.phase)},
                    {"subset", s.index},
                    {"margin", s.margin},
                    {"risk", to_string(s.risk)},
                    {"flipped", s.flipped}});
  }
  return doc.dump(2);
}

std::string risk_report_csv(const RiskReport& report) {
  std::ostringstream out;
  out << "phase,subset,margin,risk,flipped\n";
  for (const auto& s : report.subsets) {
    out << to_string(s.phase) << ',' << s.index << ',' << s.margin << ',' << to_string(s.risk) << ','
        << (s.flipped ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string risk_summary_csv(const RiskReport& report) {
  std::ostringstream out;
  out << "phase,HiR,MeR,LoR,VLoR\n";
  for (auto cls : {TargetClass::Black, TargetClass::White}) {
    const auto& c = report.counts(cls);
    out << to_string(cls) << ',' << c.hir << ',' << c.mer << ',' << c.lor << ',' << c.vlor << '\n';
  }
  return out.str();
}

}  // namespace rdhei
