#ifndef SYNSIM_SIMILARITY_HPP
#define SYNSIM_SIMILARITY_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "synsim/error.hpp"
#include "synsim/weighting.hpp"

namespace synsim {

enum class Measure { cosine, jaccard, dice };

inline constexpr std::array<Measure, 3> kAllMeasures{Measure::cosine, Measure::jaccard, Measure::dice};

inline std::string_view to_string(Measure m) {
  switch (m) {
    case Measure::cosine: return "cosine";
    case Measure::jaccard: return "jaccard";
    case Measure::dice: return "dice";
  }
  return "?";
}

inline Measure parse_measure(std::string_view name) {
  for (auto m : kAllMeasures) {
    if (to_string(m) == name) return m;
  }
  throw ConfigError("unknown similarity measure '" + std::string(name) + "'");
}

struct SimilarityScore {
  Measure measure = Measure::cosine;
  double value = 0.0;
};

namespace detail {

inline void require_same_length(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("vectors differ in length");
}

/// The three sums every measure is built from, accumulated in index order.
struct Moments {
  double xy = 0.0;
  double xx = 0.0;
  double yy = 0.0;
};

inline Moments moments(std::span<const double> x, std::span<const double> y) {
  require_same_length(x, y);
  Moments m;
  for (std::size_t i = 0; i < x.size(); ++i) {
    m.xy += x[i] * y[i];
    m.xx += x[i] * x[i];
    m.yy += y[i] * y[i];
  }
  return m;
}

inline double cosine_from(const Moments& m) {
  if (m.xx == 0.0 || m.yy == 0.0) return 0.0;
  // sqrt(xx * yy) is exactly xx when x == y; the clamp catches rounding above
  // 1 for nearly parallel inputs.
  return std::min(1.0, m.xy / std::sqrt(m.xx * m.yy));
}

inline double jaccard_from(const Moments& m) {
  const double denom = m.xx + m.yy - m.xy;
  return denom == 0.0 ? 0.0 : m.xy / denom;
}

inline double dice_from(const Moments& m) {
  const double denom = m.xx + m.yy;
  return denom == 0.0 ? 0.0 : 2.0 * m.xy / denom;
}

}  // namespace detail

inline double dot(std::span<const double> x, std::span<const double> y) {
  detail::require_same_length(x, y);
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

/// Zero-vector convention: any measure involving an all-zero vector is 0.
inline SimilarityScore cosine(std::span<const double> x, std::span<const double> y) {
  return {Measure::cosine, detail::cosine_from(detail::moments(x, y))};
}

inline SimilarityScore jaccard(std::span<const double> x, std::span<const double> y) {
  return {Measure::jaccard, detail::jaccard_from(detail::moments(x, y))};
}

inline SimilarityScore dice(std::span<const double> x, std::span<const double> y) {
  return {Measure::dice, detail::dice_from(detail::moments(x, y))};
}

inline SimilarityScore similarity(Measure measure, std::span<const double> x, std::span<const double> y) {
  const auto m = detail::moments(x, y);
  switch (measure) {
    case Measure::cosine: return {measure, detail::cosine_from(m)};
    case Measure::jaccard: return {measure, detail::jaccard_from(m)};
    case Measure::dice: return {measure, detail::dice_from(m)};
  }
  throw ConfigError("unknown similarity measure");
}

inline SimilarityScore similarity(std::string_view measure, std::span<const double> x,
                                  std::span<const double> y) {
  return similarity(parse_measure(measure), x, y);
}

namespace detail {

/// Puts two document vectors on a common sorted vocabulary. Terms missing
/// from one side get weight 0.
inline std::pair<std::vector<double>, std::vector<double>> align(const DocumentVector& x,
                                                                  const DocumentVector& y) {
  std::vector<std::string> vocab = x.vocabulary;
  vocab.insert(vocab.end(), y.vocabulary.begin(), y.vocabulary.end());
  std::sort(vocab.begin(), vocab.end());
  vocab.erase(std::unique(vocab.begin(), vocab.end()), vocab.end());
  std::vector<double> xs, ys;
  xs.reserve(vocab.size());
  ys.reserve(vocab.size());
  for (const auto& t : vocab) {
    xs.push_back(x.weight(t));
    ys.push_back(y.weight(t));
  }
  return {std::move(xs), std::move(ys)};
}

}  // namespace detail

inline SimilarityScore similarity(Measure measure, const DocumentVector& x, const DocumentVector& y) {
  if (x.vocabulary == y.vocabulary) return similarity(measure, x.weights, y.weights);
  const auto [xs, ys] = detail::align(x, y);
  return similarity(measure, xs, ys);
}

inline double dot(const DocumentVector& x, const DocumentVector& y) {
  if (x.vocabulary == y.vocabulary) return dot(x.weights, y.weights);
  const auto [xs, ys] = detail::align(x, y);
  return dot(xs, ys);
}

}  // namespace synsim

#endif  // SYNSIM_SIMILARITY_HPP
