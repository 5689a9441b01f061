#include "runsum/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "runsum/approx.hpp"
#include "runsum/error.hpp"
#include "runsum/filter.hpp"
#include "runsum/oracle.hpp"
#include "runsum/pgm.hpp"

namespace runsum {

namespace {

template <class Fn>
std::uint64_t median_time_ns(int reps, Fn&& fn) {
  std::vector<std::uint64_t> samples;
  samples.reserve(static_cast<std::size_t>(reps));
  for (int i = 0; i < reps; ++i) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    const auto stop = std::chrono::steady_clock::now();
    const auto ns = std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count();
    samples.push_back(std::max<std::uint64_t>(1, static_cast<std::uint64_t>(ns)));
  }
  std::nth_element(samples.begin(), samples.begin() + samples.size() / 2, samples.end());
  return samples[samples.size() / 2];
}

std::string method_label(BenchMethod method, unsigned threads) {
  std::string label(to_string(method));
  if (threads > 1) label += "/par" + std::to_string(threads);
  return label;
}

std::string format_real(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Unit-gain kernel at sigma with constants fit under the plain l2 error.
class L2Kernels {
 public:
  SliceKernel at(double sigma, int k) {
    auto it = base_.find(k);
    if (it == base_.end()) {
      const SampledKernel target = sample_gaussian(kTableSigma0, kTableSamples);
      const Partition p = search_partitions(target, k, identity_model(target.radius()));
      it = base_.emplace(k, to_slices(p, kTableSigma0)).first;
    }
    return scale_to_sigma(it->second, sigma);
  }

 private:
  std::map<int, SliceKernel> base_;
};

}  // namespace

std::string_view to_string(BenchMethod method) {
  switch (method) {
    case BenchMethod::slices_qf: return "slices-qf";
    case BenchMethod::slices_l2: return "slices-l2";
    case BenchMethod::exact: return "exact";
  }
  return "?";
}

BenchMethod parse_bench_method(std::string_view tag) {
  if (tag == "slices-qf") return BenchMethod::slices_qf;
  if (tag == "slices-l2") return BenchMethod::slices_l2;
  if (tag == "exact") return BenchMethod::exact;
  throw InvalidArgument("unknown bench method '" + std::string(tag) + "'");
}

std::vector<CorpusImage> load_corpus(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw IoError("corpus '" + dir.string() + "' is not a directory");
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".pgm") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<CorpusImage> corpus;
  for (const auto& f : files) corpus.push_back({f.stem().string(), read_pgm(f).image});
  return corpus;
}

std::vector<BenchRecord> run_bench(std::span<const CorpusImage> corpus, const BenchConfig& config) {
  if (corpus.empty()) throw InvalidArgument("run_bench: empty corpus");
  if (config.reps < 1) throw InvalidArgument("run_bench: reps must be >= 1");
  const unsigned threads = std::max(1u, config.threads);
  const FilterOptions options{Boundary::replicate, threads};
  L2Kernels l2;

  std::vector<BenchRecord> records;
  for (const CorpusImage& item : corpus) {
    for (double sigma : config.sigmas) {
      const Image reference = exact_gaussian_2d(item.image, sigma, threads);
      for (int k : config.ks) {
        for (BenchMethod method : config.methods) {
          if (method == BenchMethod::exact) continue;
          const SliceKernel kernel =
              method == BenchMethod::slices_qf ? gaussian_slices(sigma, k) : l2.at(sigma, k);
          Image filtered;
          const std::uint64_t ns = median_time_ns(
              config.reps, [&] { filtered = separable_filter_2d(item.image, kernel, options); });
          const OpCounter ops = count_ops(item.image, kernel);
          records.push_back({method_label(method, threads), k, sigma, item.id, ns,
                             psnr(filtered, reference), ops.adds_per_pixel(), ops.muls_per_pixel()});
        }
      }
      if (std::find(config.methods.begin(), config.methods.end(), BenchMethod::exact) !=
          config.methods.end()) {
        Image filtered;
        const std::uint64_t ns = median_time_ns(
            config.reps, [&] { filtered = exact_gaussian_2d(item.image, sigma, threads); });
        const OpCounter ops = dense_separable_ops(gaussian_radius(sigma));
        records.push_back({method_label(BenchMethod::exact, threads), 0, sigma, item.id, ns,
                           psnr(filtered, reference), ops.adds_per_pixel(), ops.muls_per_pixel()});
      }
    }
  }
  return records;
}

void write_bench_csv(std::ostream& out, std::span<const BenchRecord> records) {
  out << kBenchCsvHeader << '\n';
  for (const BenchRecord& r : records) {
    out << r.method << ',' << r.k << ',' << format_real(r.sigma) << ',' << r.image_id << ','
        << r.wall_time_ns << ',' << format_real(r.psnr_db) << ',' << format_real(r.adds_per_px)
        << ',' << format_real(r.muls_per_px) << '\n';
  }
}

std::vector<BenchRecord> read_bench_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kBenchCsvHeader) {
    throw IoError("bench CSV: missing or unexpected header");
  }
  std::vector<BenchRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
    if (fields.size() != 8) throw IoError("bench CSV: expected 8 fields in '" + line + "'");
    try {
      BenchRecord r;
      r.method = fields[0];
      r.k = std::stoi(fields[1]);
      r.sigma = std::stod(fields[2]);
      r.image_id = fields[3];
      r.wall_time_ns = std::stoull(fields[4]);
      r.psnr_db = std::stod(fields[5]);
      r.adds_per_px = std::stod(fields[6]);
      r.muls_per_px = std::stod(fields[7]);
      records.push_back(std::move(r));
    } catch (const std::exception&) {
      throw IoError("bench CSV: unparsable row '" + line + "'");
    }
  }
  return records;
}

}  // namespace runsum
