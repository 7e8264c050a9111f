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

// Dense optical flow fields and the Middlebury ".flo" interchange format.
//
// ".flo" layout (all little-endian):
//
//  bytes  contents
//
//  0-3     tag: "PIEH" in ASCII, which in little endian is the float 202021.25
//  4-7     width as a 32-bit signed integer
//  8-11    height as a 32-bit signed integer
//  12-end  width*height*2 floats, u and v interleaved in row order:
//          u[row0,col0], v[row0,col0], u[row0,col1], v[row0,col1], ...
//
// A flow component is "unknown" if its magnitude exceeds 1e9 (or it is NaN).

#ifndef AFD_FLOW_IO_HPP_
#define AFD_FLOW_IO_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "afd/image.hpp"

namespace afd {

inline constexpr float kFloMagic = 202021.25f;
inline constexpr float kUnknownFlowThreshold = 1e9f;
inline constexpr std::size_t kFloHeaderBytes = 12;

inline bool is_unknown_flow(float component) noexcept {
  // Written as a negated comparison so NaN counts as unknown.
  return !(component <= kUnknownFlowThreshold && component >= -kUnknownFlowThreshold);
}

// H x W field of (u, v) displacements in pixels, row-major, interleaved.
class FlowField {
 public:
  FlowField() = default;
  // Zero flow. Throws ZeroDimension if either side is < 1.
  FlowField(int width, int height);
  // Throws DimensionMismatch if data.size() != width * height * 2.
  FlowField(int width, int height, std::vector<float> data);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t pixel_count() const noexcept {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  }

  float& u(int x, int y) noexcept { return data_[index(x, y) * 2]; }
  float& v(int x, int y) noexcept { return data_[index(x, y) * 2 + 1]; }
  float u(int x, int y) const noexcept { return data_[index(x, y) * 2]; }
  float v(int x, int y) const noexcept { return data_[index(x, y) * 2 + 1]; }

  std::span<float> data() noexcept { return data_; }
  std::span<const float> data() const noexcept { return data_; }

  bool has_unknown() const noexcept;
  float max_magnitude() const noexcept;

  bool same_shape(const Frame& frame) const noexcept {
    return width_ == frame.width() && height_ == frame.height();
  }
  bool same_shape(const FlowField& other) const noexcept {
    return width_ == other.width_ && height_ == other.height_;
  }

  // Bitwise comparison (distinguishes -0.0f from 0.0f and NaN payloads).
  bool bit_equal(const FlowField& other) const noexcept;

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<float> data_;
};

struct FloReadOptions {
  // Width or height above this indicates a corrupt header.
  int max_dimension = 99999;
  // When false, a field containing unknown components is rejected.
  bool allow_unknown = false;
};

FlowField read_flo(std::span<const std::byte> bytes, const FloReadOptions& options = {});
std::vector<std::byte> write_flo(const FlowField& flow);

FlowField read_flo_file(const std::filesystem::path& path, const FloReadOptions& options = {});
void write_flo_file(const std::filesystem::path& path, const FlowField& flow);

// Middlebury color coding. Hue follows atan2(-v, -u) around the 55-entry
// color wheel; saturation grows with |flow| / max_magnitude. Vectors longer
// than max_magnitude are drawn at 75% intensity. When max_magnitude is not
// given the field's own maximum is used, floored at 1e-6.
// Throws UnknownFlowPresent.
ColorImage flow_to_color(const FlowField& flow, std::optional<float> max_magnitude = std::nullopt);

namespace colorwheel {

inline constexpr int kRY = 15;
inline constexpr int kYG = 6;
inline constexpr int kGC = 4;
inline constexpr int kCB = 11;
inline constexpr int kBM = 13;
inline constexpr int kMR = 6;
inline constexpr int kSize = kRY + kYG + kGC + kCB + kBM + kMR;

// Wheel entry `k` as RGB in [0, 255].
std::array<int, 3> entry(int k);

// Color for a single (already normalized) flow vector.
std::array<std::uint8_t, 3> encode(float fx, float fy);

}  // namespace colorwheel

}  // namespace afd

#endif  // AFD_FLOW_IO_HPP_
