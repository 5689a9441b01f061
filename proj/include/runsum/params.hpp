#pragma once

// Kernel parameter files: line-oriented "key = value" text.
//
//   # comment lines start with '#'
//   format      = runsum-params-1
//   k           = 3
//   sigma0      = 31.830988618379067
//   model       = qf            (qf | l2)
//   breakpoints = 23 46 75
//   constants   = ...           k reals
//   weights     = ...           k reals, slice weights c_i - c_{i+1}
//   e2          = ...           achieved quadratic error
//
// Reals are written with 17 significant digits and round-trip exactly.
// Unknown keys are rejected; "weights" and "e2" are informational on read.

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "runsum/approx.hpp"

namespace runsum {

inline constexpr const char* kParamsFormat = "runsum-params-1";

struct KernelParams {
  double sigma0 = kTableSigma0;
  ErrorModel model = ErrorModel::quadratic_form;
  Partition partition;
  std::vector<double> weights;
  double e2 = 0.0;

  std::size_t k() const { return partition.k(); }
  SliceKernel slices() const { return to_slices(partition, sigma0); }
};

void write_params(std::ostream& out, const KernelParams& params);
KernelParams read_params(std::istream& in);

void save_params(const std::filesystem::path& path, const KernelParams& params);
KernelParams load_params(const std::filesystem::path& path);

}  // namespace runsum
