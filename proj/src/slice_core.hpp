#pragma once

// Running-sum kernels shared by the fast filter and the instrumented
// operation counter. Every arithmetic operation goes through an Arith policy
// so the counting build executes exactly the same sequence as the fast one.

#include <algorithm>
#include <cstddef>
#include <string>
#include <thread>
#include <vector>

#include "runsum/error.hpp"
#include "runsum/filter.hpp"

namespace runsum::detail {

struct PlainArith {
  double add(double a, double b) const { return a + b; }
  double sub(double a, double b) const { return a - b; }
  double mul(double a, double b) const { return a * b; }
};

struct CountingArith {
  std::uint64_t additions = 0;
  std::uint64_t multiplications = 0;

  double add(double a, double b) { ++additions; return a + b; }
  double sub(double a, double b) { ++additions; return a - b; }
  double mul(double a, double b) { ++multiplications; return a * b; }

  CountingArith& operator+=(const CountingArith& o) {
    additions += o.additions;
    multiplications += o.multiplications;
    return *this;
  }
};

// Ops on in-signal prefix entries, on the boundary extension, and in the
// per-output response are tallied separately.
template <class Arith>
struct PassArith {
  Arith prefix;
  Arith extension;
  Arith response;
};

struct Taps {
  std::vector<std::ptrdiff_t> radii;
  std::vector<double> weights;
  std::ptrdiff_t max_radius = 0;

  explicit Taps(const SliceKernel& kernel) {
    if (kernel.slices.empty()) throw InvalidArgument("slice kernel has no slices");
    int prev = -1;
    for (const Slice& s : kernel.slices) {
      if (s.radius <= prev) throw InvalidArgument("slice radii must be strictly increasing and >= 0");
      prev = s.radius;
      radii.push_back(s.radius);
      weights.push_back(s.weight);
    }
    max_radius = radii.back();
  }

  void check_fits(std::size_t n, const char* what) const {
    if (static_cast<std::size_t>(max_radius) >= n) {
      throw KernelTooLarge(std::string("kernel radius ") + std::to_string(max_radius) +
                           " does not fit a " + what + " of length " + std::to_string(n));
    }
  }
};

// Padded prefix layout: position pos in [-(P + 1), n - 1 + P] lives at
// (pos + P + 1) * lanes + lane, where P is the widest radius.
inline std::size_t padded_length(std::size_t n, std::ptrdiff_t max_radius) {
  return n + 2 * static_cast<std::size_t>(max_radius) + 1;
}

// src(pos, lane) = src[pos * pos_stride + lane].
template <class Arith>
void prefix_lanes(const double* src, std::ptrdiff_t pos_stride, std::size_t lanes, std::size_t n,
                  std::ptrdiff_t max_radius, Boundary boundary, double* scratch,
                  PassArith<Arith>& ar) {
  const auto P = static_cast<std::size_t>(max_radius);
  double* origin = scratch + P * lanes;  // position -1
  for (std::size_t l = 0; l < lanes; ++l) origin[l] = 0.0;

  for (std::size_t pos = 0; pos < n; ++pos) {
    const double* in = src + static_cast<std::ptrdiff_t>(pos) * pos_stride;
    double* cur = origin + (pos + 1) * lanes;
    const double* prev = cur - lanes;
    for (std::size_t l = 0; l < lanes; ++l) cur[l] = ar.prefix.add(prev[l], in[l]);
  }

  const double* first = src;
  const double* last = src + static_cast<std::ptrdiff_t>(n - 1) * pos_stride;
  for (std::size_t j = 1; j <= P; ++j) {
    double* hi = origin + (n + j) * lanes;
    const double* hi_prev = hi - lanes;
    double* lo = origin - j * lanes;
    const double* lo_next = lo + lanes;
    for (std::size_t l = 0; l < lanes; ++l) {
      if (boundary == Boundary::replicate) {
        hi[l] = ar.extension.add(hi_prev[l], last[l]);
        lo[l] = ar.extension.sub(lo_next[l], first[l]);
      } else {
        hi[l] = hi_prev[l];
        lo[l] = 0.0;
      }
    }
  }
}

// Response at position x of one lane; `at` points at that lane's I(-1).
template <class Arith>
inline double tap_sum(const double* at, std::size_t lanes, std::ptrdiff_t x, const Taps& taps,
                      Arith& ar) {
  const auto stride = static_cast<std::ptrdiff_t>(lanes);
  const std::size_t k = taps.radii.size();
  const std::ptrdiff_t r0 = taps.radii[0];
  double out = ar.mul(taps.weights[0],
                      ar.sub(at[(x + r0 + 1) * stride], at[(x - r0) * stride]));
  for (std::size_t i = 1; i < k; ++i) {
    const std::ptrdiff_t r = taps.radii[i];
    out = ar.add(out, ar.mul(taps.weights[i], ar.sub(at[(x + r + 1) * stride], at[(x - r) * stride])));
  }
  return out;
}

template <class Arith>
void respond_lanes(const double* scratch, std::size_t lanes, std::size_t n, const Taps& taps,
                   double* dst, std::ptrdiff_t dst_pos_stride, PassArith<Arith>& ar) {
  const double* origin = scratch + static_cast<std::size_t>(taps.max_radius) * lanes;
  for (std::size_t x = 0; x < n; ++x) {
    double* out = dst + static_cast<std::ptrdiff_t>(x) * dst_pos_stride;
    for (std::size_t l = 0; l < lanes; ++l) {
      out[l] = tap_sum(origin + l, lanes, static_cast<std::ptrdiff_t>(x), taps, ar.response);
    }
  }
}

inline constexpr std::size_t kColumnBlock = 16;

template <class Fn>
void parallel_chunks(std::size_t count, unsigned threads, Fn&& fn) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (threads == 1) {
    fn(0u, std::size_t{0}, count);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t begin = count * t / threads;
    const std::size_t end = count * (t + 1) / threads;
    pool.emplace_back([&fn, t, begin, end] { fn(t, begin, end); });
  }
}

// Rows into `mid`, then columns of `mid` into `out`. One PassArith per worker
// is appended to `tallies`.
template <class Arith>
void separable_pass(const Image& image, const Taps& taps, Boundary boundary, unsigned threads,
                    Image& mid, Image& out, std::vector<PassArith<Arith>>& tallies) {
  const std::size_t width = image.width();
  const std::size_t height = image.height();
  const std::ptrdiff_t stride = static_cast<std::ptrdiff_t>(width);
  threads = std::max(1u, threads);
  tallies.assign(2 * static_cast<std::size_t>(threads), PassArith<Arith>{});

  parallel_chunks(height, threads, [&](unsigned t, std::size_t begin, std::size_t end) {
    std::vector<double> scratch(padded_length(width, taps.max_radius));
    PassArith<Arith>& ar = tallies[t];
    for (std::size_t y = begin; y < end; ++y) {
      prefix_lanes(image.row(y).data(), 1, 1, width, taps.max_radius, boundary, scratch.data(), ar);
      respond_lanes(scratch.data(), 1, width, taps, mid.row(y).data(), 1, ar);
    }
  });

  const std::size_t blocks = (width + kColumnBlock - 1) / kColumnBlock;
  parallel_chunks(blocks, threads, [&](unsigned t, std::size_t begin, std::size_t end) {
    std::vector<double> scratch(padded_length(height, taps.max_radius) * kColumnBlock);
    PassArith<Arith>& ar = tallies[threads + t];
    for (std::size_t b = begin; b < end; ++b) {
      const std::size_t x0 = b * kColumnBlock;
      const std::size_t lanes = std::min(kColumnBlock, width - x0);
      prefix_lanes(mid.data() + x0, stride, lanes, height, taps.max_radius, boundary,
                   scratch.data(), ar);
      respond_lanes(scratch.data(), lanes, height, taps, out.data() + x0, stride, ar);
    }
  });
}

}  // namespace runsum::detail
