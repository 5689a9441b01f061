#pragma once

// Reference convolutions, quality metrics and operation counting.

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "runsum/approx.hpp"
#include "runsum/filter.hpp"
#include "runsum/image.hpp"

namespace runsum {

// Dense convolution, out[x] = sum_j kernel[j + R] * f(x - j), with f
// extended past the ends by `boundary`. The kernel must have odd length.
std::vector<double> direct_convolve_1d(std::span<const double> signal,
                                       std::span<const double> kernel,
                                       Boundary boundary = Boundary::replicate);

// Truncation radius of the reference Gaussian: ceil(pi * sigma).
int gaussian_radius(double sigma);

// Sampled Gaussian on [-R, R], R = gaussian_radius(sigma), summing to one.
std::vector<double> gaussian_dense_kernel(double sigma);

// Fraction of the sampled (untruncated) Gaussian's mass at |t| > radius.
double gaussian_tail_mass(double sigma, int radius);

// Separable dense Gaussian with replicate boundary.
Image exact_gaussian_2d(const Image& image, double sigma, unsigned threads = 1);

double mse(const Image& a, const Image& b);

// PSNR of identical images.
inline constexpr double kInfinitePsnr = std::numeric_limits<double>::infinity();

// -10 log10(MSE) for images in [0, 1]; kInfinitePsnr when MSE is zero.
double psnr(const Image& a, const Image& b);

struct OpCounter {
  std::uint64_t additions = 0;        // in-image prefix sums and responses
  std::uint64_t multiplications = 0;
  std::uint64_t pixels = 0;
  std::uint64_t boundary_additions = 0;  // prefix entries of the replicate extension

  double adds_per_pixel() const { return pixels ? static_cast<double>(additions) / pixels : 0.0; }
  double muls_per_pixel() const {
    return pixels ? static_cast<double>(multiplications) / pixels : 0.0;
  }
};

// Runs the 2D running-sum filter with counting arithmetic.
OpCounter count_ops(const Image& image, const SliceKernel& kernel,
                    Boundary boundary = Boundary::replicate);

// Per-pixel cost of the separable dense filter with a (2R+1)-tap kernel.
OpCounter dense_separable_ops(int radius);

}  // namespace runsum
