#include "runsum/approx.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "runsum/error.hpp"
#include "small_solve.hpp"

namespace runsum {

void Partition::validate(int max_radius) const {
  if (breakpoints.empty()) throw InvalidArgument("partition: no breakpoints");
  if (breakpoints.size() != constants.size()) {
    throw InvalidArgument("partition: breakpoints and constants differ in length");
  }
  int prev = 0;
  for (int p : breakpoints) {
    if (p <= prev) throw InvalidArgument("partition: breakpoints must be strictly increasing and >= 1");
    if (p > max_radius) {
      throw InvalidArgument("partition: breakpoint " + std::to_string(p) +
                            " exceeds kernel radius " + std::to_string(max_radius));
    }
    prev = p;
  }
  for (double c : constants) {
    if (!std::isfinite(c)) throw InvalidArgument("partition: non-finite constant");
  }
}

std::vector<double> Partition::profile(std::size_t n) const {
  std::vector<double> out(n, 0.0);
  std::size_t interval = 0;
  for (std::size_t t = 0; t < n && interval < breakpoints.size(); ++t) {
    while (interval < breakpoints.size() && static_cast<int>(t) > breakpoints[interval]) ++interval;
    if (interval < breakpoints.size()) out[t] = constants[interval];
  }
  return out;
}

double slice_dc_gain(std::span<const Slice> slices) {
  double gain = 0.0;
  for (const Slice& s : slices) gain += s.weight * (2.0 * s.radius + 1.0);
  return gain;
}

std::vector<double> SliceKernel::half_profile() const {
  std::vector<double> out(static_cast<std::size_t>(support()) + 1, 0.0);
  for (std::size_t t = 0; t < out.size(); ++t) {
    double v = 0.0;
    for (const Slice& s : slices) {
      if (static_cast<int>(t) <= s.radius) v += s.weight;
    }
    out[t] = v;
  }
  return out;
}

std::vector<double> SliceKernel::dense() const {
  const std::vector<double> half = half_profile();
  const std::size_t r = half.size() - 1;
  std::vector<double> out(2 * r + 1);
  for (std::size_t t = 0; t <= r; ++t) {
    out[r + t] = half[t];
    out[r - t] = half[t];
  }
  return out;
}

SampledKernel sample_gaussian(double sigma0, std::size_t n) {
  if (!(sigma0 > 0.0) || !std::isfinite(sigma0)) {
    throw InvalidArgument("sample_gaussian: sigma0 must be positive");
  }
  if (n < 2) throw InvalidArgument("sample_gaussian: need at least 2 samples");

  SampledKernel out;
  out.sigma0 = sigma0;
  out.values.resize(n);
  const double denom = 2.0 * sigma0 * sigma0;
  for (std::size_t t = 0; t < n; ++t) {
    const double td = static_cast<double>(t);
    out.values[t] = std::exp(-td * td / denom);
  }
  double total = out.values[0];
  for (std::size_t t = 1; t < n; ++t) total += 2.0 * out.values[t];
  for (double& v : out.values) v /= total;
  return out;
}

std::string_view to_string(ErrorModel model) {
  return model == ErrorModel::quadratic_form ? "qf" : "l2";
}

ErrorModel parse_error_model(std::string_view tag) {
  if (tag == "qf") return ErrorModel::quadratic_form;
  if (tag == "l2") return ErrorModel::l2;
  throw InvalidArgument("unknown error model '" + std::string(tag) + "' (expected qf or l2)");
}

AutocorrModel make_model(ErrorModel model, std::size_t r) {
  return model == ErrorModel::quadratic_form ? build_autocorr(r) : identity_model(r);
}

double quadratic_error(const SampledKernel& target, std::span<const double> approx,
                       const AutocorrModel& model) {
  const std::size_t n = target.values.size();
  if (approx.size() != n || model.dimension() != n) {
    throw InvalidArgument("quadratic_error: target, approximation and model dimensions differ");
  }
  std::vector<double> residual(n);
  for (std::size_t j = 0; j < n; ++j) residual[j] = target.values[j] - approx[j];

  // A is Toeplitz, so E2 = sum over lags d of phi(d) times the residual's
  // autocorrelation at d.
  double e2 = 0.0;
  for (std::size_t d = 0; d < n; ++d) {
    double lag = 0.0;
    for (std::size_t j = 0; j + d < n; ++j) lag += residual[j] * residual[j + d];
    e2 += (d == 0 ? 1.0 : 2.0) * model.phi(static_cast<std::ptrdiff_t>(d)) * lag;
  }
  return e2;
}

double partition_error(const SampledKernel& target, const Partition& partition,
                       const AutocorrModel& model) {
  return quadratic_error(target, partition.profile(target.values.size()), model);
}

Partition optimal_constants(const SampledKernel& target, std::span<const int> breakpoints,
                            const AutocorrModel& model) {
  const std::size_t n = target.values.size();
  if (model.dimension() != n) {
    throw InvalidArgument("optimal_constants: model dimension does not match target length");
  }
  const std::size_t k = breakpoints.size();
  if (k == 0) throw InvalidArgument("optimal_constants: no breakpoints");
  for (int p : breakpoints) {
    if (p < 1 || static_cast<std::size_t>(p) >= n) {
      throw InvalidArgument("optimal_constants: breakpoint " + std::to_string(p) +
                            " outside [1, " + std::to_string(n - 1) + "]");
    }
  }

  // Interval i covers samples [lo_i, hi_i]; out-of-order breakpoints yield
  // empty intervals and hence a singular system.
  std::vector<int> lo(k), hi(k);
  for (std::size_t i = 0; i < k; ++i) {
    lo[i] = i == 0 ? 0 : breakpoints[i - 1] + 1;
    hi[i] = breakpoints[i];
  }

  std::vector<double> aw(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t l = 0; l < n; ++l) s += model(j, l) * target.values[l];
    aw[j] = s;
  }

  std::vector<double> normal(k * k, 0.0);
  std::vector<double> rhs(k, 0.0);
  for (std::size_t a = 0; a < k; ++a) {
    for (int j = lo[a]; j <= hi[a]; ++j) rhs[a] += aw[static_cast<std::size_t>(j)];
    for (std::size_t b = 0; b < k; ++b) {
      double s = 0.0;
      for (int j = lo[a]; j <= hi[a]; ++j) {
        for (int l = lo[b]; l <= hi[b]; ++l) {
          s += model(static_cast<std::size_t>(j), static_cast<std::size_t>(l));
        }
      }
      normal[a * k + b] = s;
    }
  }

  auto solution = detail::solve_small(std::move(normal), std::move(rhs));
  if (!solution) {
    throw DegeneratePartition("optimal_constants: singular normal equations "
                              "(duplicate or empty intervals)");
  }
  return Partition{{breakpoints.begin(), breakpoints.end()}, std::move(*solution)};
}

SliceKernel to_slices(const Partition& partition, double sigma0) {
  partition.validate(std::numeric_limits<int>::max());
  if (!(sigma0 > 0.0)) throw InvalidArgument("to_slices: sigma0 must be positive");

  const std::size_t k = partition.k();
  SliceKernel out;
  out.sigma = sigma0;
  out.slices.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    const double next = i + 1 < k ? partition.constants[i + 1] : 0.0;
    out.slices[i] = Slice{partition.breakpoints[i], partition.constants[i] - next};
  }
  out.dc_gain = slice_dc_gain(out.slices);
  return out;
}

int scaled_radius(int radius, double sigma, double sigma0) {
  const double scaled = sigma / sigma0 * static_cast<double>(radius);
  return static_cast<int>(std::floor(scaled + 1e-9));
}

SliceKernel normalized(SliceKernel kernel) {
  const double gain = slice_dc_gain(kernel.slices);
  if (!(std::abs(gain) > 0.0) || !std::isfinite(gain)) {
    throw InvalidArgument("normalized: kernel has zero DC gain");
  }
  for (Slice& s : kernel.slices) s.weight /= gain;
  kernel.dc_gain = slice_dc_gain(kernel.slices);
  return kernel;
}

SliceKernel scale_to_sigma(const SliceKernel& base, double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw InvalidArgument("scale_to_sigma: sigma must be positive");
  }
  if (!(base.sigma > 0.0)) throw InvalidArgument("scale_to_sigma: base kernel has no sigma");
  if (base.slices.empty()) throw InvalidArgument("scale_to_sigma: empty kernel");

  SliceKernel out;
  out.sigma = sigma;
  for (const Slice& s : base.slices) {
    if (s.radius < 1) throw InvalidArgument("scale_to_sigma: base radii must be >= 1");
    const int radius = scaled_radius(s.radius, sigma, base.sigma);
    const double weight = static_cast<double>(s.radius) / (2.0 * radius + 1.0) * s.weight;
    // Flooring is monotone, so collisions are always with the previous slice.
    if (!out.slices.empty() && out.slices.back().radius == radius) {
      out.slices.back().weight += weight;
    } else {
      out.slices.push_back(Slice{radius, weight});
    }
  }
  if (base.slices.size() > 1 && out.slices.size() == 1 && out.slices.front().radius == 0) {
    throw DegenerateScale("scale_to_sigma: all radii collapse to zero at sigma " +
                          std::to_string(sigma) + "; use a direct small-kernel convolution");
  }
  return normalized(std::move(out));
}

PublishedParameters table_defaults(int k) {
  switch (k) {
    case 3:
      return {{{23, 46, 76}, {0.9495, 0.5502, 0.1618}}, kTableSigma0};
    case 4:
      return {{{19, 37, 56, 82}, {0.9649, 0.6700, 0.3376, 0.0976}}, kTableSigma0};
    case 5:
      return {{{16, 30, 44, 61, 85}, {0.9738, 0.7596, 0.5031, 0.2534, 0.0739}}, kTableSigma0};
    default:
      throw InvalidArgument("table_defaults: k must be 3, 4 or 5 (got " + std::to_string(k) + ")");
  }
}

SliceKernel gaussian_slices(double sigma, int k) {
  const PublishedParameters params = table_defaults(k);
  return scale_to_sigma(to_slices(params.partition, params.sigma0), sigma);
}

}  // namespace runsum
