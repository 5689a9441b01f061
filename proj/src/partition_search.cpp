#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "runsum/approx.hpp"
#include "runsum/error.hpp"
#include "small_solve.hpp"

namespace runsum {

namespace {

using Tuple = std::array<int, kMaxConstants>;

struct Candidate {
  double e2 = std::numeric_limits<double>::infinity();
  Tuple breakpoints{};
};

// Strict weak order: lower error first, then lexicographically smaller tuple.
bool better(const Candidate& a, const Candidate& b, std::size_t k) {
  if (a.e2 != b.e2) return a.e2 < b.e2;
  return std::lexicographical_compare(a.breakpoints.begin(), a.breakpoints.begin() + k,
                                      b.breakpoints.begin(), b.breakpoints.begin() + k);
}

// Evaluates the minimal E2 for a breakpoint tuple in O(k^3) using 2D prefix
// sums of A and 1D prefix sums of A*w:
//   E2_min = w'Aw - b' (B'AB)^-1 b,  b = B'Aw.
class PartitionScorer {
 public:
  PartitionScorer(const SampledKernel& target, const AutocorrModel& model)
      : n_(target.values.size()), block_((n_ + 1) * (n_ + 1), 0.0), aw_prefix_(n_ + 1, 0.0) {
    for (std::size_t j = 0; j < n_; ++j) {
      double row_sum = 0.0;
      double aw = 0.0;
      for (std::size_t l = 0; l < n_; ++l) {
        row_sum += model(j, l);
        block_[(j + 1) * (n_ + 1) + (l + 1)] = block_[j * (n_ + 1) + (l + 1)] + row_sum;
        aw += model(j, l) * target.values[l];
      }
      aw_prefix_[j + 1] = aw_prefix_[j] + aw;
      waw_ += target.values[j] * aw;
    }
  }

  std::size_t radius() const { return n_ - 1; }

  double operator()(const Tuple& bp, std::size_t k) const {
    std::array<int, kMaxConstants> lo{}, hi{};
    for (std::size_t i = 0; i < k; ++i) {
      lo[i] = i == 0 ? 0 : bp[i - 1] + 1;
      hi[i] = bp[i] + 1;  // exclusive
    }
    std::vector<double> normal(k * k);
    std::vector<double> rhs(k);
    for (std::size_t a = 0; a < k; ++a) {
      rhs[a] = aw_prefix_[static_cast<std::size_t>(hi[a])] - aw_prefix_[static_cast<std::size_t>(lo[a])];
      for (std::size_t b = a; b < k; ++b) {
        const double s = block(lo[a], hi[a], lo[b], hi[b]);
        normal[a * k + b] = s;
        normal[b * k + a] = s;
      }
    }
    const std::vector<double> rhs_copy = rhs;
    auto c = detail::solve_small(std::move(normal), std::move(rhs));
    if (!c) return std::numeric_limits<double>::infinity();
    double explained = 0.0;
    for (std::size_t a = 0; a < k; ++a) explained += rhs_copy[a] * (*c)[a];
    return waw_ - explained;
  }

 private:
  double block(int r0, int r1, int c0, int c1) const {
    const std::size_t w = n_ + 1;
    auto at = [&](int r, int c) {
      return block_[static_cast<std::size_t>(r) * w + static_cast<std::size_t>(c)];
    };
    return at(r1, c1) - at(r0, c1) - at(r1, c0) + at(r0, c0);
  }

  std::size_t n_;
  std::vector<double> block_;
  std::vector<double> aw_prefix_;
  double waw_ = 0.0;
};

// Keeps the best `capacity` candidates seen, in order.
class TopList {
 public:
  TopList(std::size_t capacity, std::size_t k) : capacity_(capacity), k_(k) {}

  void offer(const Candidate& c) {
    if (!std::isfinite(c.e2)) return;
    if (items_.size() == capacity_ && !better(c, items_.back(), k_)) return;
    auto pos = std::upper_bound(items_.begin(), items_.end(), c,
                                [&](const Candidate& a, const Candidate& b) { return better(a, b, k_); });
    items_.insert(pos, c);
    if (items_.size() > capacity_) items_.pop_back();
  }

  void merge(const TopList& other) {
    for (const Candidate& c : other.items_) offer(c);
  }

  const std::vector<Candidate>& items() const { return items_; }

 private:
  std::size_t capacity_;
  std::size_t k_;
  std::vector<Candidate> items_;
};

// Enumerates strictly increasing tuples whose i-th entry is drawn from
// choices[i], scoring each. The first coordinate is split round-robin over
// worker threads; the merge is order independent.
TopList enumerate(const PartitionScorer& scorer, const std::vector<std::vector<int>>& choices,
                  std::size_t capacity, unsigned threads) {
  const std::size_t k = choices.size();
  const std::size_t first_count = choices[0].size();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(first_count)));

  auto worker = [&](unsigned id, TopList& top) {
    Candidate cur;
    auto recurse = [&](auto&& self, std::size_t depth) -> void {
      if (depth == k) {
        cur.e2 = scorer(cur.breakpoints, k);
        top.offer(cur);
        return;
      }
      const int prev = depth == 0 ? 0 : cur.breakpoints[depth - 1];
      for (int v : choices[depth]) {
        if (v <= prev) continue;
        cur.breakpoints[depth] = v;
        self(self, depth + 1);
      }
    };
    for (std::size_t i = id; i < first_count; i += threads) {
      cur.breakpoints[0] = choices[0][i];
      recurse(recurse, 1);
    }
  };

  std::vector<TopList> partial(threads, TopList(capacity, k));
  if (threads == 1) {
    worker(0, partial[0]);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t, std::ref(partial[t]));
  }
  TopList merged(capacity, k);
  for (const TopList& p : partial) merged.merge(p);
  return merged;
}

std::vector<int> range_values(int lo, int hi, int step = 1) {
  std::vector<int> out;
  for (int v = lo; v <= hi; v += step) out.push_back(v);
  return out;
}

Candidate refine(const PartitionScorer& scorer, Candidate start, std::size_t k, int window,
                 unsigned threads) {
  const int r = static_cast<int>(scorer.radius());
  for (;;) {
    std::vector<std::vector<int>> choices(k);
    for (std::size_t i = 0; i < k; ++i) {
      choices[i] = range_values(std::max(1, start.breakpoints[i] - window),
                                std::min(r, start.breakpoints[i] + window));
    }
    const TopList top = enumerate(scorer, choices, 1, threads);
    if (top.items().empty() || !better(top.items().front(), start, k)) return start;
    start = top.items().front();
  }
}

}  // namespace

Partition search_partitions(const SampledKernel& target, int k, const AutocorrModel& model,
                            const SearchOptions& options) {
  if (k < 1 || k > kMaxConstants) {
    throw InvalidArgument("search_partitions: k must be in [1, " + std::to_string(kMaxConstants) +
                          "] (got " + std::to_string(k) + ")");
  }
  const std::size_t n = target.values.size();
  if (n < 2) throw InvalidArgument("search_partitions: target needs at least 2 samples");
  if (model.dimension() != n) {
    throw InvalidArgument("search_partitions: model dimension does not match target length");
  }
  const int r = static_cast<int>(n - 1);
  if (k > r) throw InvalidArgument("search_partitions: more constants than kernel samples");

  const auto uk = static_cast<std::size_t>(k);
  unsigned threads = options.threads != 0 ? options.threads : std::thread::hardware_concurrency();
  if (threads == 0) threads = 1;

  SearchStrategy strategy = options.strategy;
  if (strategy == SearchStrategy::automatic) {
    strategy = k <= 3 ? SearchStrategy::exhaustive : SearchStrategy::coarse_to_fine;
  }
  const int stride = std::max(1, options.coarse_stride);
  if (strategy == SearchStrategy::coarse_to_fine && r / stride < k) {
    strategy = SearchStrategy::exhaustive;
  }

  const PartitionScorer scorer(target, model);
  Candidate best;
  if (strategy == SearchStrategy::exhaustive) {
    const std::vector<std::vector<int>> choices(uk, range_values(1, r));
    const TopList top = enumerate(scorer, choices, 1, threads);
    if (top.items().empty()) {
      throw DegeneratePartition("search_partitions: every partition is degenerate under this model");
    }
    best = top.items().front();
  } else {
    const std::vector<std::vector<int>> choices(uk, range_values(stride, r, stride));
    const TopList coarse =
        enumerate(scorer, choices, static_cast<std::size_t>(std::max(1, options.beam)), threads);
    if (coarse.items().empty()) {
      throw DegeneratePartition("search_partitions: every partition is degenerate under this model");
    }
    for (const Candidate& seed : coarse.items()) {
      const Candidate refined = refine(scorer, seed, uk, std::max(1, options.refine_radius), threads);
      if (better(refined, best, uk)) best = refined;
    }
  }

  const std::vector<int> breakpoints(best.breakpoints.begin(), best.breakpoints.begin() + k);
  return optimal_constants(target, breakpoints, model);
}

}  // namespace runsum
