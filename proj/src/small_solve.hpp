#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace runsum::detail {

inline constexpr double kPivotTolerance = 1e-12;

// Solves the dense n x n system m * x = rhs (m row-major) by Gaussian
// elimination with partial pivoting. Returns nullopt when a pivot falls
// below kPivotTolerance relative to the largest diagonal entry.
inline std::optional<std::vector<double>> solve_small(std::vector<double> m,
                                                      std::vector<double> rhs) {
  const std::size_t n = rhs.size();
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(m[i * n + i]));
  if (scale == 0.0) return std::nullopt;
  const double threshold = kPivotTolerance * scale;

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(m[r * n + col]) > std::abs(m[pivot * n + col])) pivot = r;
    }
    if (std::abs(m[pivot * n + col]) <= threshold) return std::nullopt;
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(m[col * n + c], m[pivot * n + c]);
      std::swap(rhs[col], rhs[pivot]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = m[r * n + col] / m[col * n + col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) m[r * n + c] -= f * m[col * n + c];
      rhs[r] -= f * rhs[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = rhs[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= m[i * n + c] * x[c];
    x[i] = s / m[i * n + i];
  }
  return x;
}

}  // namespace runsum::detail
