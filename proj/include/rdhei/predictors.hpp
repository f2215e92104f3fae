#pragma once

#include <array>
#include <cstdint>
#include <string_view>

#include "rdhei/image.hpp"

namespace rdhei {

enum class Predictor {
  WPP,  ///< mean of the four 4-connected neighbours
  BCP,  ///< mean of the four diagonal neighbours
  MED,  ///< LOCO-I median edge detector
  GAP,  ///< CALIC gradient-adjusted predictor
};

std::string_view to_string(Predictor p);
/// Case-insensitive; throws ParameterError for unknown names.
Predictor predictor_from_string(std::string_view name);

// All predictors throw std::out_of_range when their context leaves the image.
// Predictions are clamped to [0, 255].

/// floor((up + down + left + right + 2) / 4)
int wpp(const GrayImage& img, int r, int c);
/// floor((nw + ne + sw + se + 2) / 4)
int bcp(const GrayImage& img, int r, int c);
int med(const GrayImage& img, int r, int c);
int gap(const GrayImage& img, int r, int c);
int predict(Predictor p, const GrayImage& img, int r, int c);

/// Pixels over which error statistics of `p` are gathered: interior white
/// targets for WPP, interior black targets for BCP, every interior pixel for
/// MED and GAP.
bool is_eligible(Predictor p, Dims dims, int r, int c);

/// Counts of e = p - prediction, indexed by e + 255.
struct ErrorHistogram {
  std::array<std::uint64_t, 511> counts{};

  std::uint64_t at(int e) const { return counts[static_cast<std::size_t>(e + 255)]; }
  std::uint64_t total() const;
};

ErrorHistogram error_histogram(const GrayImage& img, Predictor p);

/// Fraction of eligible pixels with |e| >= 64; 0 when none are eligible.
double failure_probability(const GrayImage& img, Predictor p);
double failure_probability(const ErrorHistogram& hist);

}  // namespace rdhei
