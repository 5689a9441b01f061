#pragma once

// Running-sum evaluation of slice kernels.
//
// With I the prefix sum of f, a slice of radius p contributes
//   w * (I(x + p) - I(x - p - 1))
// to output x, so each output costs 2k additions and k multiplications
// (counting the prefix pass) whatever the radii.

#include <cstddef>
#include <span>
#include <vector>

#include "runsum/approx.hpp"
#include "runsum/image.hpp"

namespace runsum {

// How samples outside [0, n) are defined.
//   replicate: f(-j) = f(0), f(n - 1 + j) = f(n - 1)
//   zero:      f = 0 outside the signal
enum class Boundary { replicate, zero };

class PrefixSum {
 public:
  PrefixSum(std::span<const double> signal, Boundary boundary);

  std::span<const double> sums() const { return sums_; }
  Boundary boundary() const { return boundary_; }
  std::size_t size() const { return sums_.size(); }

  // I(x) for any integer x, extended analytically past both ends according
  // to the boundary policy; I(-1) = 0.
  double at(std::ptrdiff_t x) const;

 private:
  std::vector<double> sums_;
  Boundary boundary_;
  double first_ = 0.0;
  double last_ = 0.0;
};

PrefixSum prefix_sum(std::span<const double> signal, Boundary boundary = Boundary::replicate);

// Throws KernelTooLarge if the widest radius is >= the signal length.
std::vector<double> slice_filter_1d(std::span<const double> signal, const SliceKernel& kernel,
                                    Boundary boundary = Boundary::replicate);

struct FilterOptions {
  Boundary boundary = Boundary::replicate;
  unsigned threads = 1;  // rows, then column blocks, split across this many workers
};

// Rows first, then columns of the (double precision) intermediate.
Image separable_filter_2d(const Image& image, const SliceKernel& kernel,
                          const FilterOptions& options = {});

struct Point {
  std::size_t x = 0;
  std::size_t y = 0;
};

// Values of separable_filter_2d(image, kernel) at the given points only,
// bit-identical to the full filter. Only rows up to the lowest row a point
// depends on are visited.
std::vector<double> filter_at(const Image& image, const SliceKernel& kernel,
                              std::span<const Point> points,
                              Boundary boundary = Boundary::replicate);

}  // namespace runsum
