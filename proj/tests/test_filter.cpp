#include <doctest.h>

#include <random>
#include <vector>

#include "runsum/approx.hpp"
#include "runsum/error.hpp"
#include "runsum/filter.hpp"
#include "test_util.hpp"

using namespace runsum;
using namespace runsum::testing;

namespace {

Image transpose(const Image& img) {
  Image t(img.height(), img.width());
  for (std::size_t y = 0; y < img.height(); ++y) {
    for (std::size_t x = 0; x < img.width(); ++x) t(y, x) = img(x, y);
  }
  return t;
}

}  // namespace

TEST_CASE("prefix_sum") {
  const std::vector<double> small{1.0, 2.0, 3.0};
  const PrefixSum p = prefix_sum(small);
  CHECK(std::vector<double>(p.sums().begin(), p.sums().end()) == std::vector<double>{1.0, 3.0, 6.0});

  const std::vector<double> constant(9, 0.25);
  const PrefixSum pc = prefix_sum(constant);
  for (std::size_t x = 0; x < 9; ++x) CHECK(pc.sums()[x] == doctest::Approx(0.25 * (x + 1)));

  std::mt19937_64 rng(1);
  const auto signal = random_signal(rng, 100);
  const PrefixSum pr = prefix_sum(signal);
  for (std::size_t x = 0; x < signal.size(); ++x) {
    double naive = 0.0;
    for (std::size_t i = 0; i <= x; ++i) naive += signal[i];
    CHECK(pr.sums()[x] == doctest::Approx(naive).epsilon(1e-14));
    if (x > 0) CHECK(pr.sums()[x] - pr.sums()[x - 1] == doctest::Approx(signal[x]).epsilon(1e-12));
  }

  CHECK_THROWS_AS(prefix_sum(std::vector<double>{}), InvalidArgument);
}

TEST_CASE("PrefixSum extends past both ends") {
  const std::vector<double> f{2.0, 5.0, 1.0, 3.0};
  const PrefixSum rep = prefix_sum(f, Boundary::replicate);
  CHECK(rep.at(-1) == 0.0);
  CHECK(rep.at(-2) == -2.0);
  CHECK(rep.at(-4) == -6.0);
  CHECK(rep.at(3) == 11.0);
  CHECK(rep.at(4) == 14.0);
  CHECK(rep.at(6) == 20.0);
  // Interval sums through the extension equal sums over the replicated signal.
  CHECK(rep.at(1) - rep.at(-3) == 2.0 + 2.0 + 2.0 + 5.0);

  const PrefixSum zero = prefix_sum(f, Boundary::zero);
  CHECK(zero.at(-3) == 0.0);
  CHECK(zero.at(7) == 11.0);
}

TEST_CASE("slice_filter_1d examples") {
  SUBCASE("constant signal is preserved up to the borders") {
    const std::vector<double> constant(40, 0.5);
    for (int k : {3, 4, 5}) {
      for (double sigma : {1.5, 4.0, 9.0}) {
        const auto out = slice_filter_1d(constant, gaussian_slices(sigma, k));
        for (double v : out) CHECK(std::abs(v - 0.5) <= 1e-12);
      }
    }
  }
  SUBCASE("impulse through a single box") {
    std::vector<double> impulse(21, 0.0);
    impulse[10] = 1.0;
    SliceKernel box;
    box.slices = {{2, 0.2}};
    box.sigma = 1.0;
    box.dc_gain = 1.0;
    const auto out = slice_filter_1d(impulse, box);
    for (std::size_t x = 0; x < 21; ++x) {
      const double expected = (x >= 8 && x <= 12) ? 0.2 : 0.0;
      CHECK(out[x] == doctest::Approx(expected).epsilon(1e-15));
    }
  }
  SUBCASE("published k = 3 kernel at sigma 4 matches dense convolution") {
    std::mt19937_64 rng(2);
    const auto signal = random_signal(rng, 64);
    const SliceKernel kernel = gaussian_slices(4.0, 3);
    const auto fast = slice_filter_1d(signal, kernel);
    const auto dense = clamp_convolve(signal, materialize(kernel));
    CHECK(max_abs_diff(fast, dense) <= 1e-10);
  }
}

TEST_CASE("slice_filter_1d equals direct convolution for random kernels") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::size_t> ndist(8, 512);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = ndist(rng);
    const auto signal = random_signal(rng, n);
    const SliceKernel kernel = random_slice_kernel(rng, static_cast<int>(n));
    const auto fast = slice_filter_1d(signal, kernel);
    const auto dense = clamp_convolve(signal, materialize(kernel));
    REQUIRE(max_abs_diff(fast, dense) <= 1e-10);
  }
}

TEST_CASE("slice_filter_1d with zero boundary") {
  std::mt19937_64 rng(4);
  const auto signal = random_signal(rng, 50);
  const SliceKernel kernel = random_slice_kernel(rng, 30);
  const auto dense_kernel = materialize(kernel);
  const long radius = static_cast<long>(dense_kernel.size() / 2);
  std::vector<double> expected(50, 0.0);
  for (long x = 0; x < 50; ++x) {
    for (long j = -radius; j <= radius; ++j) {
      const long src = x - j;
      if (src >= 0 && src < 50) expected[static_cast<std::size_t>(x)] += dense_kernel[static_cast<std::size_t>(j + radius)] * signal[static_cast<std::size_t>(src)];
    }
  }
  CHECK(max_abs_diff(slice_filter_1d(signal, kernel, Boundary::zero), expected) <= 1e-10);
}

TEST_CASE("slice_filter_1d properties") {
  std::mt19937_64 rng(5);

  SUBCASE("DC preservation for unit-gain kernels of every size") {
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t n = 1 + static_cast<std::size_t>(trial) * 3;
      const double c = random_signal(rng, 1)[0];
      const std::vector<double> constant(n, c);
      const SliceKernel kernel = random_slice_kernel(rng, static_cast<int>(n));
      for (double v : slice_filter_1d(constant, kernel)) REQUIRE(std::abs(v - c) <= 1e-12);
    }
  }
  SUBCASE("shift covariance away from the borders") {
    const std::size_t n = 200;
    const auto signal = random_signal(rng, n + 7);
    const SliceKernel kernel = gaussian_slices(6.0, 4);
    const int support = kernel.support();
    for (std::size_t shift : {1u, 3u, 7u}) {
      const std::vector<double> a(signal.begin(), signal.begin() + n);
      const std::vector<double> b(signal.begin() + static_cast<long>(shift), signal.begin() + static_cast<long>(shift + n));
      const auto fa = slice_filter_1d(a, kernel);
      const auto fb = slice_filter_1d(b, kernel);
      for (std::size_t x = support + shift; x + support + shift < n; ++x) {
        REQUIRE(fb[x] == doctest::Approx(fa[x + shift]).epsilon(1e-12));
      }
    }
  }
  SUBCASE("palindromic input gives palindromic output") {
    for (int trial = 0; trial < 20; ++trial) {
      auto half = random_signal(rng, 40);
      std::vector<double> pal = half;
      pal.insert(pal.end(), half.rbegin(), half.rend());
      const auto out = slice_filter_1d(pal, random_slice_kernel(rng, 60));
      for (std::size_t x = 0; x < out.size(); ++x) {
        REQUIRE(std::abs(out[x] - out[out.size() - 1 - x]) <= 1e-12);
      }
    }
  }
}

TEST_CASE("slice_filter_1d errors") {
  const std::vector<double> signal(10, 1.0);
  SliceKernel wide;
  wide.slices = {{10, 1.0 / 21.0}};
  CHECK_THROWS_AS(slice_filter_1d(signal, wide), KernelTooLarge);
  wide.slices = {{9, 1.0 / 19.0}};
  CHECK_NOTHROW(slice_filter_1d(signal, wide));
  CHECK_THROWS_AS(slice_filter_1d(std::vector<double>{}, wide), InvalidArgument);
  SliceKernel unordered;
  unordered.slices = {{3, 0.1}, {2, 0.1}};
  CHECK_THROWS_AS(slice_filter_1d(signal, unordered), InvalidArgument);
  CHECK_THROWS_AS(slice_filter_1d(signal, SliceKernel{}), InvalidArgument);
}

TEST_CASE("separable_filter_2d") {
  std::mt19937_64 rng(6);

  SUBCASE("constant image is unchanged") {
    const Image flat(48, 32, 0.3);
    const Image out = separable_filter_2d(flat, gaussian_slices(5.0, 3));
    for (double v : out.pixels()) CHECK(std::abs(v - 0.3) <= 1e-12);
  }
  SUBCASE("matches dense 2D convolution with the materialized kernel") {
    const Image img = random_image(rng, 64, 64);
    const SliceKernel kernel = gaussian_slices(4.0, 3);
    const Image fast = separable_filter_2d(img, kernel);
    const Image dense = clamp_convolve_2d(img, materialize(kernel));
    CHECK(max_abs_diff(fast.pixels(), dense.pixels()) <= 1e-9);
  }
  SUBCASE("impulse response is the outer product of the stepped profile") {
    Image impulse(41, 41, 0.0);
    impulse(20, 20) = 1.0;
    const SliceKernel kernel = gaussian_slices(5.0, 4);
    const auto profile = materialize(kernel);
    const long support = kernel.support();
    const Image out = separable_filter_2d(impulse, kernel);
    for (long y = 0; y < 41; ++y) {
      for (long x = 0; x < 41; ++x) {
        const long dx = x - 20, dy = y - 20;
        const double expected = (std::abs(dx) <= support && std::abs(dy) <= support)
                                    ? profile[static_cast<std::size_t>(dx + support)] *
                                          profile[static_cast<std::size_t>(dy + support)]
                                    : 0.0;
        REQUIRE(std::abs(out(static_cast<std::size_t>(x), static_cast<std::size_t>(y)) - expected) <= 1e-12);
      }
    }
    // Stepped marginal: values only change at slice radii.
    for (long t = 1; t <= support; ++t) {
      const bool at_step = std::any_of(kernel.slices.begin(), kernel.slices.end(),
                                       [&](const Slice& s) { return s.radius == t - 1; });
      const double a = out(20, static_cast<std::size_t>(20 + t - 1));
      const double b = out(20, static_cast<std::size_t>(20 + t));
      if (!at_step) CHECK(std::abs(a - b) <= 1e-15);
    }
  }
  SUBCASE("rows-then-columns equals columns-then-rows") {
    for (int trial = 0; trial < 5; ++trial) {
      const Image img = random_image(rng, 57, 43);
      const SliceKernel kernel = random_slice_kernel(rng, 40);
      const Image rows_first = separable_filter_2d(img, kernel);
      const Image cols_first = transpose(separable_filter_2d(transpose(img), kernel));
      CHECK(max_abs_diff(rows_first.pixels(), cols_first.pixels()) <= 1e-10);
    }
  }
  SUBCASE("worker count does not change the result") {
    const Image img = random_image(rng, 100, 70);
    const SliceKernel kernel = gaussian_slices(7.0, 5);
    const Image one = separable_filter_2d(img, kernel, {Boundary::replicate, 1});
    const Image three = separable_filter_2d(img, kernel, {Boundary::replicate, 3});
    CHECK(one == three);
  }
  SUBCASE("kernel must fit both dimensions") {
    const SliceKernel kernel = gaussian_slices(10.0, 3);  // support 23
    CHECK_NOTHROW(separable_filter_2d(Image(24, 24, 0.0), kernel));
    CHECK_THROWS_AS(separable_filter_2d(Image(100, 23, 0.0), kernel), KernelTooLarge);
    CHECK_THROWS_AS(separable_filter_2d(Image(23, 100, 0.0), kernel), KernelTooLarge);
    CHECK_THROWS_AS(separable_filter_2d(Image(), kernel), InvalidArgument);
  }
}

TEST_CASE("filter_at") {
  std::mt19937_64 rng(7);
  const SliceKernel kernel = gaussian_slices(4.0, 3);

  SUBCASE("every pixel reproduces the full filter") {
    const Image img = random_image(rng, 37, 29);
    const Image full = separable_filter_2d(img, kernel);
    std::vector<Point> all;
    for (std::size_t y = 0; y < img.height(); ++y) {
      for (std::size_t x = 0; x < img.width(); ++x) all.push_back({x, y});
    }
    const auto values = filter_at(img, kernel, all);
    for (std::size_t i = 0; i < all.size(); ++i) REQUIRE(values[i] == full(all[i].x, all[i].y));
  }
  SUBCASE("constant image centre") {
    const Image flat(33, 33, 0.8);
    const std::vector<Point> centre{{16, 16}};
    CHECK(std::abs(filter_at(flat, kernel, centre)[0] - 0.8) <= 1e-12);
  }
  SUBCASE("random points match the full filter exactly") {
    const Image img = random_image(rng, 64, 64);
    const Image full = separable_filter_2d(img, kernel);
    std::uniform_int_distribution<std::size_t> coord(0, 63);
    std::vector<Point> points;
    for (int i = 0; i < 16; ++i) points.push_back({coord(rng), coord(rng)});
    points.push_back({0, 0});
    points.push_back({5, 5});
    const auto values = filter_at(img, kernel, points);
    for (std::size_t i = 0; i < points.size(); ++i) CHECK(values[i] == full(points[i].x, points[i].y));
  }
  SUBCASE("points must lie inside the image") {
    const Image img(20, 20, 0.0);
    const std::vector<Point> outside{{3, 20}};
    CHECK_THROWS_AS(filter_at(img, kernel, outside), InvalidArgument);
    CHECK(filter_at(img, kernel, std::vector<Point>{}).empty());
  }
}
