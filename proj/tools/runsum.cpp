// runsum: constant-time Gaussian filtering with running sums.

#include <CLI11.hpp>

#include <iostream>
#include <thread>

#include "runsum/commands.hpp"

namespace {

unsigned parallel_threads(bool parallel) {
  if (!parallel) return 1;
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constant-time Gaussian filtering with running sums"};
  app.require_subcommand(1);

  runsum::FilterArgs filter;
  bool filter_parallel = false;
  std::string params_path;
  auto* filter_cmd = app.add_subcommand("filter", "Blur a PGM image");
  filter_cmd->add_option("input", filter.input, "Input PGM (P5)")->required();
  filter_cmd->add_option("output", filter.output, "Output PGM")->required();
  filter_cmd->add_option("--sigma", filter.sigma, "Gaussian standard deviation")->required();
  filter_cmd->add_option("--k", filter.k, "Number of constants (3, 4 or 5)")->capture_default_str();
  filter_cmd->add_option("--params", params_path, "Parameter file from 'optimize'");
  filter_cmd->add_flag("--parallel", filter_parallel, "Filter rows and columns on all cores");

  runsum::OptimizeArgs optimize;
  auto* optimize_cmd = app.add_subcommand("optimize", "Search kernel breakpoints and constants");
  optimize_cmd->add_option("output", optimize.output, "Parameter file to write")->required();
  optimize_cmd->add_option("--k", optimize.k, "Number of constants (1..5)")->capture_default_str();
  optimize_cmd->add_option("--model", optimize.model, "Error model: qf or l2")->capture_default_str();
  optimize_cmd->add_option("--samples", optimize.samples,
                           "Half-kernel samples over [0, pi*sigma0] (100 reproduces the table)")->capture_default_str();

  runsum::BenchArgs bench;
  bool bench_parallel = false;
  auto* bench_cmd = app.add_subcommand("bench", "Time and score filters over a PGM corpus");
  bench_cmd->add_option("corpus", bench.corpus, "Directory of .pgm images")->required();
  bench_cmd->add_option("--sigma", bench.sigmas, "Standard deviations")->required()->delimiter(',');
  bench_cmd->add_option("--k", bench.ks, "Constants per kernel")->capture_default_str()->delimiter(',');
  bench_cmd->add_option("--methods", bench.methods, "slices-qf, slices-l2, exact")->capture_default_str()->delimiter(',');
  bench_cmd->add_option("--reps", bench.reps, "Timed repetitions (median reported)")->capture_default_str();
  bench_cmd->add_option("--csv", bench.csv, "CSV output path")->required();
  bench_cmd->add_flag("--parallel", bench_parallel, "Time multi-threaded filtering");

  runsum::SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic test image");
  synth_cmd->add_option("kind", synth.kind, "one-over-f, uniform-noise, impulse or constant")->required();
  synth_cmd->add_option("output", synth.output, "Output PGM")->required();
  synth_cmd->add_option("--width", synth.width, "Width")->capture_default_str();
  synth_cmd->add_option("--height", synth.height, "Height")->capture_default_str();
  synth_cmd->add_option("--seed", synth.seed, "Random seed")->capture_default_str();
  synth_cmd->add_option("--maxval", synth.maxval, "255 or 65535")->capture_default_str();

  std::string psnr_a, psnr_b;
  auto* psnr_cmd = app.add_subcommand("psnr", "PSNR in dB between two PGM images");
  psnr_cmd->add_option("a", psnr_a)->required();
  psnr_cmd->add_option("b", psnr_b)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return runsum::kExitUsage;
  }

  if (*filter_cmd) {
    if (!params_path.empty()) filter.params = params_path;
    filter.threads = parallel_threads(filter_parallel);
    return runsum::cmd_filter(filter, std::cerr);
  }
  if (*optimize_cmd) return runsum::cmd_optimize(optimize, std::cout, std::cerr);
  if (*bench_cmd) {
    bench.threads = parallel_threads(bench_parallel);
    return runsum::cmd_bench(bench, std::cerr);
  }
  if (*synth_cmd) return runsum::cmd_synth(synth, std::cerr);
  return runsum::cmd_psnr(psnr_a, psnr_b, std::cout, std::cerr);
}
