#pragma once

// Piecewise-constant approximation of symmetric kernels.
//
// A half kernel sampled at t = 0..r is approximated by k constants over the
// intervals [0, p_1], (p_1, p_2], ..., (p_{k-1}, p_k]; samples beyond p_k are
// approximated by zero. The same profile is expressed as k nested "slices",
// boxes of radius p_i (covering |t| <= p_i) with weight w_i = c_i - c_{i+1},
// which is the form the running-sum filter evaluates.

#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace runsum {

// Samples of a symmetric kernel's positive half, values[t] = K(t).
struct SampledKernel {
  std::vector<double> values;
  double sigma0 = 0.0;

  std::size_t radius() const { return values.empty() ? 0 : values.size() - 1; }
};

struct Partition {
  std::vector<int> breakpoints;
  std::vector<double> constants;

  std::size_t k() const { return breakpoints.size(); }

  // Throws InvalidArgument unless breakpoints are strictly increasing within
  // [1, max_radius] and match the constants in length.
  void validate(int max_radius) const;

  // The approximated half kernel on t = 0..n-1.
  std::vector<double> profile(std::size_t n) const;
};

struct Slice {
  int radius = 0;
  double weight = 0.0;
};

struct SliceKernel {
  std::vector<Slice> slices;  // radii strictly increasing
  double sigma = 0.0;
  double dc_gain = 0.0;       // sum of weight * (2 * radius + 1)

  std::size_t k() const { return slices.size(); }
  int support() const { return slices.empty() ? 0 : slices.back().radius; }

  // Half profile on t = 0..support(): sum of weights of slices covering t.
  std::vector<double> half_profile() const;
  // Full odd-length kernel of length 2 * support() + 1, centred.
  std::vector<double> dense() const;
};

double slice_dc_gain(std::span<const Slice> slices);

// Gaussian half kernel sampled at t = 0..n-1, normalized so the implied
// symmetric kernel sums to one.
SampledKernel sample_gaussian(double sigma0, std::size_t n);

enum class ErrorModel { quadratic_form, l2 };

std::string_view to_string(ErrorModel model);
ErrorModel parse_error_model(std::string_view tag);  // "qf" or "l2"

// Natural-image pixel autocorrelation over offsets -r..r, and the
// (r+1)x(r+1) matrix A[j][k] = phi(j - k) acting on half kernels.
class AutocorrModel {
 public:
  AutocorrModel() = default;
  // phi holds 2r+1 values for offsets -r..r and must be even.
  explicit AutocorrModel(std::vector<double> phi);

  std::size_t radius() const { return radius_; }
  std::size_t dimension() const { return radius_ + 1; }

  double phi(std::ptrdiff_t offset) const {
    return phi_[static_cast<std::size_t>(offset + static_cast<std::ptrdiff_t>(radius_))];
  }
  std::span<const double> phi_sequence() const { return phi_; }

  double operator()(std::size_t j, std::size_t k) const {
    return matrix_[j * dimension() + k];
  }
  // Row-major dimension() x dimension().
  std::span<const double> as_matrix() const { return matrix_; }

 private:
  std::size_t radius_ = 0;
  std::vector<double> phi_;
  std::vector<double> matrix_;
};

// DC completion that makes phi(0) / phi(r) close to 4/3.
inline constexpr double kNaturalImageDc = 16.5;

// Inverse DFT of the 1/u^2 power spectrum on 2r+1 integer frequencies,
// with the missing zero-frequency value set to dc_value.
AutocorrModel build_autocorr(std::size_t r, double dc_value = kNaturalImageDc);

// A = identity: the quadratic error reduces to plain squared l2.
AutocorrModel identity_model(std::size_t r);

AutocorrModel make_model(ErrorModel model, std::size_t r);

// E2 = (w - w_hat)^T A (w - w_hat) over the half kernel.
double quadratic_error(const SampledKernel& target, std::span<const double> approx,
                       const AutocorrModel& model);

double partition_error(const SampledKernel& target, const Partition& partition,
                       const AutocorrModel& model);

// Constants minimizing E2 for fixed breakpoints (normal equations of the
// piecewise-constant basis). Throws DegeneratePartition on a singular system.
Partition optimal_constants(const SampledKernel& target, std::span<const int> breakpoints,
                            const AutocorrModel& model);

enum class SearchStrategy {
  automatic,       // exhaustive for k <= 3, coarse_to_fine above
  exhaustive,
  coarse_to_fine,
};

struct SearchOptions {
  SearchStrategy strategy = SearchStrategy::automatic;
  unsigned threads = 0;   // 0: hardware concurrency
  int coarse_stride = 4;
  int refine_radius = 4;
  int beam = 8;           // coarse candidates carried into refinement
};

inline constexpr int kMaxConstants = 5;

// Breakpoints (with optimal constants) minimizing E2 over strictly increasing
// integer tuples in [1, r]. Ties resolve to the lexicographically smallest
// tuple, so results do not depend on the thread count.
Partition search_partitions(const SampledKernel& target, int k, const AutocorrModel& model,
                            const SearchOptions& options = {});

SliceKernel to_slices(const Partition& partition, double sigma0);

// floor(sigma / sigma0 * radius), guarded against round-off just below an
// integer.
int scaled_radius(int radius, double sigma, double sigma0);

// Rescales a kernel built at base.sigma to sigma: radii are floored, weights
// multiplied by p / (2 p' + 1), colliding radii merged and the result
// renormalized to unit DC gain.
SliceKernel scale_to_sigma(const SliceKernel& base, double sigma);

// Rescales weights so dc_gain == 1.
SliceKernel normalized(SliceKernel kernel);

inline constexpr double kTableSigma0 = 100.0 / std::numbers::pi;
inline constexpr std::size_t kTableSamples = 100;

struct PublishedParameters {
  Partition partition;
  double sigma0 = kTableSigma0;
};

// Published quadratic-form parameters for k in {3, 4, 5}.
PublishedParameters table_defaults(int k);

// Unit-gain Gaussian approximation with k slices at sigma, from the
// published parameters.
SliceKernel gaussian_slices(double sigma, int k);

}  // namespace runsum
