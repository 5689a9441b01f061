#include "runsum/filter.hpp"

#include <algorithm>
#include <string>

#include "runsum/error.hpp"
#include "slice_core.hpp"

namespace runsum {

PrefixSum::PrefixSum(std::span<const double> signal, Boundary boundary)
    : sums_(signal.size()), boundary_(boundary) {
  if (signal.empty()) throw InvalidArgument("prefix_sum: empty signal");
  double acc = 0.0;
  for (std::size_t x = 0; x < signal.size(); ++x) {
    acc += signal[x];
    sums_[x] = acc;
  }
  first_ = signal.front();
  last_ = signal.back();
}

double PrefixSum::at(std::ptrdiff_t x) const {
  const auto n = static_cast<std::ptrdiff_t>(sums_.size());
  if (x >= 0 && x < n) return sums_[static_cast<std::size_t>(x)];
  if (x < 0) {
    // I(-j-1) = -j * f(0) under replication.
    return boundary_ == Boundary::replicate ? static_cast<double>(x + 1) * first_ : 0.0;
  }
  const double tail = sums_.back();
  return boundary_ == Boundary::replicate ? tail + static_cast<double>(x - n + 1) * last_ : tail;
}

PrefixSum prefix_sum(std::span<const double> signal, Boundary boundary) {
  return PrefixSum(signal, boundary);
}

std::vector<double> slice_filter_1d(std::span<const double> signal, const SliceKernel& kernel,
                                    Boundary boundary) {
  if (signal.empty()) throw InvalidArgument("slice_filter_1d: empty signal");
  const detail::Taps taps(kernel);
  taps.check_fits(signal.size(), "signal");

  std::vector<double> scratch(detail::padded_length(signal.size(), taps.max_radius));
  std::vector<double> out(signal.size());
  detail::PassArith<detail::PlainArith> ar;
  detail::prefix_lanes(signal.data(), 1, 1, signal.size(), taps.max_radius, boundary,
                       scratch.data(), ar);
  detail::respond_lanes(scratch.data(), 1, signal.size(), taps, out.data(), 1, ar);
  return out;
}

Image separable_filter_2d(const Image& image, const SliceKernel& kernel,
                          const FilterOptions& options) {
  if (image.empty()) throw InvalidArgument("separable_filter_2d: empty image");
  const detail::Taps taps(kernel);
  taps.check_fits(image.width(), "image row");
  taps.check_fits(image.height(), "image column");

  Image mid(image.width(), image.height());
  Image out(image.width(), image.height());
  std::vector<detail::PassArith<detail::PlainArith>> tallies;
  detail::separable_pass(image, taps, options.boundary, options.threads, mid, out, tallies);
  return out;
}

std::vector<double> filter_at(const Image& image, const SliceKernel& kernel,
                              std::span<const Point> points, Boundary boundary) {
  if (image.empty()) throw InvalidArgument("filter_at: empty image");
  const detail::Taps taps(kernel);
  taps.check_fits(image.width(), "image row");
  taps.check_fits(image.height(), "image column");
  if (points.empty()) return {};

  std::vector<std::size_t> columns;
  std::size_t lowest = 0;
  for (const Point& p : points) {
    if (p.x >= image.width() || p.y >= image.height()) {
      throw InvalidArgument("filter_at: point (" + std::to_string(p.x) + ", " +
                            std::to_string(p.y) + ") outside the image");
    }
    columns.push_back(p.x);
    lowest = std::max(lowest, p.y);
  }
  std::sort(columns.begin(), columns.end());
  columns.erase(std::unique(columns.begin(), columns.end()), columns.end());

  // Row-filtered values are needed in each touched column down to the last
  // row any point reaches. Past that row the column prefix is never read, so
  // the truncated column gives the same prefix values as the full filter.
  const std::size_t rows = std::min(image.height() - 1, lowest + static_cast<std::size_t>(taps.max_radius)) + 1;
  const std::size_t ncols = columns.size();
  std::vector<double> row_filtered(rows * ncols);  // [column][row]

  detail::PassArith<detail::PlainArith> ar;
  std::vector<double> scratch(detail::padded_length(image.width(), taps.max_radius));
  const double* row_origin = scratch.data() + taps.max_radius;
  for (std::size_t y = 0; y < rows; ++y) {
    detail::prefix_lanes(image.row(y).data(), 1, 1, image.width(), taps.max_radius, boundary,
                         scratch.data(), ar);
    for (std::size_t c = 0; c < ncols; ++c) {
      row_filtered[c * rows + y] =
          detail::tap_sum(row_origin, 1, static_cast<std::ptrdiff_t>(columns[c]), taps, ar.response);
    }
  }

  std::vector<double> column_scratch(detail::padded_length(rows, taps.max_radius));
  const double* column_origin = column_scratch.data() + taps.max_radius;
  std::vector<double> out(points.size());
  for (std::size_t c = 0; c < ncols; ++c) {
    detail::prefix_lanes(row_filtered.data() + c * rows, 1, 1, rows, taps.max_radius, boundary,
                         column_scratch.data(), ar);
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (points[i].x != columns[c]) continue;
      out[i] = detail::tap_sum(column_origin, 1, static_cast<std::ptrdiff_t>(points[i].y), taps,
                               ar.response);
    }
  }
  return out;
}

}  // namespace runsum
