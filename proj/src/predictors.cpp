#include "rdhei/predictors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "rdhei/error.hpp"
#include "rdhei/lattice.hpp"

namespace rdhei {

std::string_view to_string(Predictor p) {
  switch (p) {
    case Predictor::WPP: return "WPP";
    case Predictor::BCP: return "BCP";
    case Predictor::MED: return "MED";
    case Predictor::GAP: return "GAP";
  }
  return "?";
}

Predictor predictor_from_string(std::string_view name) {
  std::string upper(name);
  for (auto& ch : upper) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  for (auto p : {Predictor::WPP, Predictor::BCP, Predictor::MED, Predictor::GAP}) {
    if (upper == to_string(p)) return p;
  }
  throw ParameterError("unknown predictor: " + std::string(name));
}

int wpp(const GrayImage& img, int r, int c) {
  const int sum = img.at(r - 1, c) + img.at(r + 1, c) + img.at(r, c - 1) + img.at(r, c + 1);
  return (sum + 2) / 4;
}

int bcp(const GrayImage& img, int r, int c) {
  const int sum =
      img.at(r - 1, c - 1) + img.at(r - 1, c + 1) + img.at(r + 1, c - 1) + img.at(r + 1, c + 1);
  return (sum + 2) / 4;
}

int med(const GrayImage& img, int r, int c) {
  const int w = img.at(r, c - 1);
  const int n = img.at(r - 1, c);
  const int nw = img.at(r - 1, c - 1);
  if (nw >= std::max(w, n)) return std::min(w, n);
  if (nw <= std::min(w, n)) return std::max(w, n);
  return w + n - nw;
}

int gap(const GrayImage& img, int r, int c) {
  const int w = img.at(r, c - 1);
  const int ww = img.at(r, c - 2);
  const int n = img.at(r - 1, c);
  const int nn = img.at(r - 2, c);
  const int nw = img.at(r - 1, c - 1);
  const int ne = img.at(r - 1, c + 1);
  const int nne = img.at(r - 2, c + 1);

  const int dh = std::abs(w - ww) + std::abs(n - nw) + std::abs(n - ne);
  const int dv = std::abs(w - nw) + std::abs(n - nn) + std::abs(ne - nne);

  double pred;
  if (dv - dh > 80) {
    pred = w;
  } else if (dh - dv > 80) {
    pred = n;
  } else {
    pred = (w + n) / 2.0 + (ne - nw) / 4.0;
    if (dv - dh > 32) {
      pred = (pred + w) / 2.0;
    } else if (dv - dh > 8) {
      pred = (3.0 * pred + w) / 4.0;
    } else if (dh - dv > 32) {
      pred = (pred + n) / 2.0;
    } else if (dh - dv > 8) {
      pred = (3.0 * pred + n) / 4.0;
    }
  }
  return std::clamp(static_cast<int>(std::floor(pred + 0.5)), 0, 255);
}

int predict(Predictor p, const GrayImage& img, int r, int c) {
  switch (p) {
    case Predictor::WPP: return wpp(img, r, c);
    case Predictor::BCP: return bcp(img, r, c);
    case Predictor::MED: return med(img, r, c);
    case Predictor::GAP: return gap(img, r, c);
  }
  throw std::logic_error("unreachable predictor");
}

bool is_eligible(Predictor p, Dims dims, int r, int c) {
  const Role role = role_of(r, c, dims);
  switch (p) {
    case Predictor::WPP: return role == Role::WhiteTarget;
    case Predictor::BCP: return role == Role::BlackTarget;
    case Predictor::MED:
    case Predictor::GAP: return role != Role::Border;
  }
  return false;
}

std::uint64_t ErrorHistogram::total() const {
  std::uint64_t sum = 0;
  for (auto c : counts) sum += c;
  return sum;
}

ErrorHistogram error_histogram(const GrayImage& img, Predictor p) {
  ErrorHistogram hist;
  const Dims dims = img.dims();
  for (int r = 2; r <= dims.rows - 3; ++r) {
    for (int c = 2; c <= dims.cols - 3; ++c) {
      if (!is_eligible(p, dims, r, c)) continue;
      const int e = int(img(r, c)) - predict(p, img, r, c);
      ++hist.counts[static_cast<std::size_t>(e + 255)];
    }
  }
  return hist;
}

double failure_probability(const ErrorHistogram& hist) {
  std::uint64_t failures = 0;
  for (int e = -255; e <= 255; ++e) {
    if (std::abs(e) >= 64) failures += hist.at(e);
  }
  const auto total = hist.total();
  return total == 0 ? 0.0 : static_cast<double>(failures) / static_cast<double>(total);
}

double failure_probability(const GrayImage& img, Predictor p) {
  return failure_probability(error_histogram(img, p));
}

}  // namespace rdhei
