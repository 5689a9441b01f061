#include "runsum/synth.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <random>
#include <string>

#include "runsum/error.hpp"

namespace runsum {

namespace {

std::mutex planner_mutex;

// Uniform in [0, 1) from the top 53 bits, independent of the standard
// library's distribution implementation.
double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Image one_over_f(std::size_t width, std::size_t height, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::size_t half = width / 2 + 1;
  fftw_complex* spectrum = fftw_alloc_complex(height * half);
  double* field = fftw_alloc_real(height * width);
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex);
    plan = fftw_plan_dft_c2r_2d(static_cast<int>(height), static_cast<int>(width), spectrum, field,
                                FFTW_ESTIMATE);
  }
  for (std::size_t ky = 0; ky < height; ++ky) {
    const double fy = (ky <= height / 2 ? static_cast<double>(ky)
                                        : static_cast<double>(ky) - static_cast<double>(height)) /
                      static_cast<double>(height);
    for (std::size_t kx = 0; kx < half; ++kx) {
      const double fx = static_cast<double>(kx) / static_cast<double>(width);
      const double f = std::hypot(fx, fy);
      const double phase = 2.0 * std::numbers::pi * unit_uniform(rng);
      const double amplitude = f > 0.0 ? 1.0 / f : 0.0;
      spectrum[ky * half + kx][0] = amplitude * std::cos(phase);
      spectrum[ky * half + kx][1] = amplitude * std::sin(phase);
    }
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(planner_mutex);
    fftw_destroy_plan(plan);
  }

  std::vector<double> pixels(field, field + height * width);
  fftw_free(field);
  fftw_free(spectrum);

  const auto [lo, hi] = std::minmax_element(pixels.begin(), pixels.end());
  const double low = *lo;
  const double range = *hi - *lo;
  for (double& v : pixels) v = range > 0.0 ? (v - low) / range : 0.5;
  return Image(width, height, std::move(pixels));
}

}  // namespace

SynthKind parse_synth_kind(std::string_view tag) {
  if (tag == "one-over-f") return SynthKind::one_over_f;
  if (tag == "uniform-noise") return SynthKind::uniform_noise;
  if (tag == "impulse") return SynthKind::impulse;
  if (tag == "constant") return SynthKind::constant;
  throw InvalidArgument("unknown image kind '" + std::string(tag) +
                        "' (expected one-over-f, uniform-noise, impulse or constant)");
}

std::string_view to_string(SynthKind kind) {
  switch (kind) {
    case SynthKind::one_over_f: return "one-over-f";
    case SynthKind::uniform_noise: return "uniform-noise";
    case SynthKind::impulse: return "impulse";
    case SynthKind::constant: return "constant";
  }
  return "?";
}

Image synthesize(SynthKind kind, std::size_t width, std::size_t height, std::uint64_t seed) {
  if (width == 0 || height == 0) throw InvalidArgument("synthesize: empty image size");
  switch (kind) {
    case SynthKind::one_over_f:
      return one_over_f(width, height, seed);
    case SynthKind::uniform_noise: {
      std::mt19937_64 rng(seed);
      Image img(width, height);
      for (double& v : img.pixels()) v = unit_uniform(rng);
      return img;
    }
    case SynthKind::impulse: {
      Image img(width, height, 0.0);
      img(width / 2, height / 2) = 1.0;
      return img;
    }
    case SynthKind::constant:
      return Image(width, height, 0.5);
  }
  throw InvalidArgument("synthesize: unknown kind");
}

}  // namespace runsum
