#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "runsum/error.hpp"

namespace runsum {

// Single-channel image with row-major double pixels. Images read from or
// written to disk hold values in [0, 1]; filter intermediates are unrestricted.
class Image {
 public:
  Image() = default;
  Image(std::size_t width, std::size_t height, double fill = 0.0)
      : width_(width), height_(height), pixels_(width * height, fill) {}
  Image(std::size_t width, std::size_t height, std::vector<double> pixels)
      : width_(width), height_(height), pixels_(std::move(pixels)) {
    if (pixels_.size() != width_ * height_) {
      throw InvalidArgument("Image: pixel count does not match width*height");
    }
  }

  std::size_t width() const { return width_; }
  std::size_t height() const { return height_; }
  std::size_t size() const { return pixels_.size(); }
  bool empty() const { return pixels_.empty(); }

  double& operator()(std::size_t x, std::size_t y) { return pixels_[y * width_ + x]; }
  double operator()(std::size_t x, std::size_t y) const { return pixels_[y * width_ + x]; }

  std::span<double> row(std::size_t y) { return {pixels_.data() + y * width_, width_}; }
  std::span<const double> row(std::size_t y) const {
    return {pixels_.data() + y * width_, width_};
  }

  std::span<double> pixels() { return pixels_; }
  std::span<const double> pixels() const { return pixels_; }
  double* data() { return pixels_.data(); }
  const double* data() const { return pixels_.data(); }

  bool same_shape(const Image& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<double> pixels_;
};

}  // namespace runsum
