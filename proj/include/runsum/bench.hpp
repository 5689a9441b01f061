#pragma once

// Speed/accuracy benchmark of the running-sum filter against the dense
// Gaussian reference.
//
// CSV schema (header row, comma separated, '.' decimal point):
//   method,k,sigma,image_id,wall_time_ns,psnr_db,adds_per_px,muls_per_px
// method is slices-qf, slices-l2 or exact, suffixed "/par<N>" when timed
// with N worker threads. k is 0 for exact rows. psnr_db is measured against
// the exact reference and is "inf" for identical output. Reals are written
// with 17 significant digits.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "runsum/image.hpp"

namespace runsum {

inline constexpr const char* kBenchCsvHeader =
    "method,k,sigma,image_id,wall_time_ns,psnr_db,adds_per_px,muls_per_px";

enum class BenchMethod { slices_qf, slices_l2, exact };

std::string_view to_string(BenchMethod method);
BenchMethod parse_bench_method(std::string_view tag);

struct BenchRecord {
  std::string method;
  int k = 0;
  double sigma = 0.0;
  std::string image_id;
  std::uint64_t wall_time_ns = 0;
  double psnr_db = 0.0;
  double adds_per_px = 0.0;
  double muls_per_px = 0.0;

  friend bool operator==(const BenchRecord&, const BenchRecord&) = default;
};

struct CorpusImage {
  std::string id;
  Image image;
};

struct BenchConfig {
  std::vector<double> sigmas;
  std::vector<int> ks{3};
  int reps = 3;
  std::vector<BenchMethod> methods{BenchMethod::slices_qf, BenchMethod::exact};
  unsigned threads = 1;
};

// All *.pgm files directly inside dir, sorted by name; id is the file stem.
std::vector<CorpusImage> load_corpus(const std::filesystem::path& dir);

std::vector<BenchRecord> run_bench(std::span<const CorpusImage> corpus, const BenchConfig& config);

void write_bench_csv(std::ostream& out, std::span<const BenchRecord> records);
std::vector<BenchRecord> read_bench_csv(std::istream& in);

}  // namespace runsum
