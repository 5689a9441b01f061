#pragma once

// Subcommands of the runsum tool. Each returns a process exit status and
// reports problems on `err`.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace runsum {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;    // bad option values
inline constexpr int kExitFailure = 2;  // I/O errors, kernel does not fit, ...

struct FilterArgs {
  std::filesystem::path input;
  std::filesystem::path output;
  double sigma = 0.0;
  int k = 3;
  std::optional<std::filesystem::path> params;
  unsigned threads = 1;
};

struct OptimizeArgs {
  int k = 3;
  std::string model = "qf";
  std::filesystem::path output;
  std::size_t samples = 100;  // kernel samples on [0, pi*sigma0], sigma0 = samples / pi
  unsigned threads = 0;
};

struct BenchArgs {
  std::filesystem::path corpus;
  std::vector<double> sigmas;
  std::vector<int> ks{3};
  std::vector<std::string> methods{"slices-qf", "exact"};
  int reps = 3;
  std::filesystem::path csv;
  unsigned threads = 1;
};

struct SynthArgs {
  std::string kind;
  std::size_t width = 256;
  std::size_t height = 256;
  std::uint64_t seed = 0;
  int maxval = 255;
  std::filesystem::path output;
};

int cmd_filter(const FilterArgs& args, std::ostream& err);
int cmd_optimize(const OptimizeArgs& args, std::ostream& out, std::ostream& err);
int cmd_bench(const BenchArgs& args, std::ostream& err);
int cmd_synth(const SynthArgs& args, std::ostream& err);
int cmd_psnr(const std::filesystem::path& a, const std::filesystem::path& b, std::ostream& out,
             std::ostream& err);

}  // namespace runsum
