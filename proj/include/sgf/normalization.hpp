#pragma once

#include <cmath>
#include <string>
#include <string_view>

namespace sgf {

// Maps back-transformed entries of A~ into edge probabilities.
struct NormalizationRule {
  enum class Kind { logistic, truncate, scale };

  Kind kind = Kind::truncate;
  double logistic_k = 6.0;  // steepness, only read by the logistic rule

  static NormalizationRule truncate() { return {Kind::truncate, 6.0}; }
  static NormalizationRule scale() { return {Kind::scale, 6.0}; }
  // Throws ValidationError unless k is in [2, 10].
  static NormalizationRule logistic(double k = 6.0);

  // "logistic", "truncate" or "scale"; throws ValidationError otherwise.
  static NormalizationRule parse(std::string_view name, double logistic_k = 6.0);
  std::string name() const;

  friend bool operator==(const NormalizationRule&, const NormalizationRule&) = default;
};

inline double logistic(double x, double k) { return 1.0 / (1.0 + std::exp((0.5 - x) * k)); }

inline double truncate(double x) {
  if (x >= 1.0) return 1.0;
  if (x <= 0.0) return 0.0;
  return x;
}

}  // namespace sgf
