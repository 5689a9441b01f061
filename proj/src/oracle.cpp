#include "runsum/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "runsum/error.hpp"
#include "slice_core.hpp"

namespace runsum {

namespace {

double extended(std::span<const double> f, std::ptrdiff_t x, Boundary boundary) {
  const auto n = static_cast<std::ptrdiff_t>(f.size());
  if (x >= 0 && x < n) return f[static_cast<std::size_t>(x)];
  if (boundary == Boundary::zero) return 0.0;
  return x < 0 ? f.front() : f.back();
}

void check_sigma(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw InvalidArgument("Gaussian sigma must be positive (got " + std::to_string(sigma) + ")");
  }
}

}  // namespace

std::vector<double> direct_convolve_1d(std::span<const double> signal,
                                       std::span<const double> kernel, Boundary boundary) {
  if (kernel.size() % 2 == 0) throw InvalidArgument("direct_convolve_1d: kernel length must be odd");
  if (signal.empty()) throw InvalidArgument("direct_convolve_1d: empty signal");
  const auto radius = static_cast<std::ptrdiff_t>(kernel.size() / 2);
  std::vector<double> out(signal.size());
  for (std::size_t x = 0; x < signal.size(); ++x) {
    double acc = 0.0;
    for (std::ptrdiff_t j = -radius; j <= radius; ++j) {
      acc += kernel[static_cast<std::size_t>(j + radius)] *
             extended(signal, static_cast<std::ptrdiff_t>(x) - j, boundary);
    }
    out[x] = acc;
  }
  return out;
}

int gaussian_radius(double sigma) {
  check_sigma(sigma);
  return static_cast<int>(std::ceil(std::numbers::pi * sigma));
}

std::vector<double> gaussian_dense_kernel(double sigma) {
  const int radius = gaussian_radius(sigma);
  std::vector<double> k(2 * static_cast<std::size_t>(radius) + 1);
  double total = 0.0;
  for (int t = -radius; t <= radius; ++t) {
    const double v = std::exp(-static_cast<double>(t) * t / (2.0 * sigma * sigma));
    k[static_cast<std::size_t>(t + radius)] = v;
    total += v;
  }
  for (double& v : k) v /= total;
  return k;
}

double gaussian_tail_mass(double sigma, int radius) {
  check_sigma(sigma);
  if (radius < 0) throw InvalidArgument("gaussian_tail_mass: negative radius");
  // Terms past 40 sigma are below double precision relative to the peak.
  const int extent = std::max(radius + 1, static_cast<int>(std::ceil(40.0 * sigma)));
  double inside = 1.0;  // t = 0
  double outside = 0.0;
  for (int t = 1; t <= extent; ++t) {
    const double v = 2.0 * std::exp(-static_cast<double>(t) * t / (2.0 * sigma * sigma));
    (t <= radius ? inside : outside) += v;
  }
  return outside / (inside + outside);
}

Image exact_gaussian_2d(const Image& image, double sigma, unsigned threads) {
  if (image.empty()) throw InvalidArgument("exact_gaussian_2d: empty image");
  const std::vector<double> kernel = gaussian_dense_kernel(sigma);
  const std::size_t radius = kernel.size() / 2;
  const std::size_t width = image.width();
  const std::size_t height = image.height();
  Image mid(width, height);
  Image out(width, height);

  detail::parallel_chunks(height, threads, [&](unsigned, std::size_t begin, std::size_t end) {
    std::vector<double> padded(width + 2 * radius);
    for (std::size_t y = begin; y < end; ++y) {
      const auto row = image.row(y);
      for (std::size_t i = 0; i < padded.size(); ++i) {
        const auto x = static_cast<std::ptrdiff_t>(i) - static_cast<std::ptrdiff_t>(radius);
        padded[i] = row[static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(x, 0, width - 1))];
      }
      auto dst = mid.row(y);
      for (std::size_t x = 0; x < width; ++x) {
        double acc = 0.0;
        for (std::size_t j = 0; j < kernel.size(); ++j) acc += kernel[j] * padded[x + j];
        dst[x] = acc;
      }
    }
  });

  constexpr std::size_t block = detail::kColumnBlock;
  const std::size_t blocks = (width + block - 1) / block;
  detail::parallel_chunks(blocks, threads, [&](unsigned, std::size_t begin, std::size_t end) {
    std::vector<double> padded((height + 2 * radius) * block);
    for (std::size_t b = begin; b < end; ++b) {
      const std::size_t x0 = b * block;
      const std::size_t lanes = std::min(block, width - x0);
      for (std::size_t i = 0; i < height + 2 * radius; ++i) {
        const auto y = std::clamp<std::ptrdiff_t>(
            static_cast<std::ptrdiff_t>(i) - static_cast<std::ptrdiff_t>(radius), 0, height - 1);
        const double* src = mid.data() + static_cast<std::size_t>(y) * width + x0;
        std::copy(src, src + lanes, padded.data() + i * block);
      }
      for (std::size_t y = 0; y < height; ++y) {
        double acc[block] = {};
        for (std::size_t j = 0; j < kernel.size(); ++j) {
          const double* src = padded.data() + (y + j) * block;
          for (std::size_t l = 0; l < block; ++l) acc[l] += kernel[j] * src[l];
        }
        std::copy(acc, acc + lanes, out.data() + y * width + x0);
      }
    }
  });
  return out;
}

double mse(const Image& a, const Image& b) {
  if (!a.same_shape(b)) throw InvalidArgument("mse: image dimensions differ");
  if (a.empty()) throw InvalidArgument("mse: empty images");
  double acc = 0.0;
  const auto pa = a.pixels();
  const auto pb = b.pixels();
  for (std::size_t i = 0; i < pa.size(); ++i) {
    const double d = pa[i] - pb[i];
    acc += d * d;
  }
  return acc / static_cast<double>(pa.size());
}

double psnr(const Image& a, const Image& b) {
  const double m = mse(a, b);
  if (m == 0.0) return kInfinitePsnr;
  return -10.0 * std::log10(m);
}

OpCounter count_ops(const Image& image, const SliceKernel& kernel, Boundary boundary) {
  if (image.empty()) throw InvalidArgument("count_ops: empty image");
  const detail::Taps taps(kernel);
  taps.check_fits(image.width(), "image row");
  taps.check_fits(image.height(), "image column");

  Image mid(image.width(), image.height());
  Image out(image.width(), image.height());
  std::vector<detail::PassArith<detail::CountingArith>> tallies;
  detail::separable_pass(image, taps, boundary, 1, mid, out, tallies);

  OpCounter counter;
  counter.pixels = image.size();
  for (const auto& t : tallies) {
    counter.additions += t.prefix.additions + t.response.additions;
    counter.multiplications += t.prefix.multiplications + t.response.multiplications;
    counter.boundary_additions += t.extension.additions;
  }
  return counter;
}

OpCounter dense_separable_ops(int radius) {
  const auto taps = static_cast<std::uint64_t>(2 * radius + 1);
  OpCounter c;
  c.pixels = 1;
  c.additions = 2 * (taps - 1);
  c.multiplications = 2 * taps;
  return c;
}

}  // namespace runsum
