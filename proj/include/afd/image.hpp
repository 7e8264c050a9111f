// Copyright 2026 The AFD Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef AFD_IMAGE_HPP_
#define AFD_IMAGE_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace afd {

// H x W raster of interleaved 8-bit RGB pixels, row-major.
class Frame {
 public:
  static constexpr int kChannels = 3;

  Frame() = default;
  // Zero-filled frame. Throws ZeroDimension if either side is < 1.
  Frame(int width, int height);
  Frame(int width, int height, std::vector<std::uint8_t> data);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t pixel_count() const noexcept {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  }
  bool empty() const noexcept { return data_.empty(); }

  std::uint8_t& at(int x, int y, int c) noexcept { return data_[index(x, y) * kChannels + c]; }
  std::uint8_t at(int x, int y, int c) const noexcept {
    return data_[index(x, y) * kChannels + c];
  }

  // Pixel `i` in row-major order, as a 3-byte span.
  std::span<std::uint8_t, kChannels> pixel(std::size_t i) noexcept {
    return std::span<std::uint8_t, kChannels>(data_.data() + i * kChannels, kChannels);
  }
  std::span<const std::uint8_t, kChannels> pixel(std::size_t i) const noexcept {
    return std::span<const std::uint8_t, kChannels>(data_.data() + i * kChannels, kChannels);
  }

  std::span<std::uint8_t> bytes() noexcept { return data_; }
  std::span<const std::uint8_t> bytes() const noexcept { return data_; }

  bool same_shape(const Frame& other) const noexcept {
    return width_ == other.width_ && height_ == other.height_;
  }

  friend bool operator==(const Frame&, const Frame&) = default;

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> data_;
};

// Output of flow colorization; same layout as a video frame.
using ColorImage = Frame;

}  // namespace afd

#endif  // AFD_IMAGE_HPP_
