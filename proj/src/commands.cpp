#include "runsum/commands.hpp"

#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>

#include "runsum/approx.hpp"
#include "runsum/bench.hpp"
#include "runsum/error.hpp"
#include "runsum/filter.hpp"
#include "runsum/oracle.hpp"
#include "runsum/params.hpp"
#include "runsum/pgm.hpp"
#include "runsum/synth.hpp"

namespace runsum {

namespace {

// Maps library exceptions onto exit statuses.
template <class Fn>
int guarded(const char* command, std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const InvalidArgument& e) {
    err << "runsum " << command << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "runsum " << command << ": " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace

int cmd_filter(const FilterArgs& args, std::ostream& err) {
  return guarded("filter", err, [&] {
    if (!(args.sigma > 0.0)) throw InvalidArgument("--sigma must be positive");
    SliceKernel kernel;
    if (args.params) {
      kernel = scale_to_sigma(load_params(*args.params).slices(), args.sigma);
    } else {
      kernel = gaussian_slices(args.sigma, args.k);
    }
    const PgmImage in = read_pgm(args.input);
    const Image out = separable_filter_2d(in.image, kernel, {Boundary::replicate, args.threads});
    write_pgm(args.output, out, in.maxval);
    return kExitOk;
  });
}

int cmd_optimize(const OptimizeArgs& args, std::ostream& out, std::ostream& err) {
  return guarded("optimize", err, [&] {
    if (args.k < 1 || args.k > kMaxConstants) throw InvalidArgument("--k must be in [1, 5]");
    if (args.samples < 2) throw InvalidArgument("--samples must be >= 2");
    const ErrorModel model = parse_error_model(args.model);

    const double sigma0 = static_cast<double>(args.samples) / std::numbers::pi;
    const SampledKernel target = sample_gaussian(sigma0, args.samples);
    const AutocorrModel autocorr = make_model(model, target.radius());
    SearchOptions options;
    options.threads = args.threads;

    KernelParams params;
    params.sigma0 = sigma0;
    params.model = model;
    params.partition = search_partitions(target, args.k, autocorr, options);
    params.e2 = partition_error(target, params.partition, autocorr);
    save_params(args.output, params);

    out << "k=" << args.k << " model=" << to_string(model) << " breakpoints=";
    for (std::size_t i = 0; i < params.partition.k(); ++i) {
      out << (i ? "," : "") << params.partition.breakpoints[i];
    }
    char e2[40];
    std::snprintf(e2, sizeof e2, "%.6g", params.e2);
    out << " e2=" << e2 << '\n';
    return kExitOk;
  });
}

int cmd_bench(const BenchArgs& args, std::ostream& err) {
  return guarded("bench", err, [&] {
    if (args.reps < 3) throw InvalidArgument("--reps must be >= 3");
    if (args.sigmas.empty()) throw InvalidArgument("at least one --sigma is required");
    for (double s : args.sigmas) {
      if (!(s > 0.0)) throw InvalidArgument("--sigma values must be positive");
    }
    for (int k : args.ks) {
      if (k < 3 || k > 5) throw InvalidArgument("--k values must be in {3, 4, 5}");
    }
    BenchConfig config;
    config.sigmas = args.sigmas;
    config.ks = args.ks;
    config.reps = args.reps;
    config.threads = args.threads;
    config.methods.clear();
    for (const auto& m : args.methods) config.methods.push_back(parse_bench_method(m));

    const std::vector<CorpusImage> corpus = load_corpus(args.corpus);
    if (corpus.empty()) throw IoError("corpus '" + args.corpus.string() + "' has no .pgm images");
    const std::vector<BenchRecord> records = run_bench(corpus, config);

    std::ofstream csv(args.csv);
    if (!csv) throw IoError("cannot open '" + args.csv.string() + "' for writing");
    write_bench_csv(csv, records);
    if (!csv) throw IoError("failed writing '" + args.csv.string() + "'");
    return kExitOk;
  });
}

int cmd_synth(const SynthArgs& args, std::ostream& err) {
  return guarded("synth", err, [&] {
    const SynthKind kind = parse_synth_kind(args.kind);
    if (args.maxval != 255 && args.maxval != 65535) throw InvalidArgument("--maxval must be 255 or 65535");
    write_pgm(args.output, synthesize(kind, args.width, args.height, args.seed), args.maxval);
    return kExitOk;
  });
}

int cmd_psnr(const std::filesystem::path& a, const std::filesystem::path& b, std::ostream& out,
             std::ostream& err) {
  return guarded("psnr", err, [&] {
    const double db = psnr(read_pgm(a).image, read_pgm(b).image);
    if (db == kInfinitePsnr) {
      out << "inf\n";
    } else {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.4f", db);
      out << buf << '\n';
    }
    return kExitOk;
  });
}

}  // namespace runsum
