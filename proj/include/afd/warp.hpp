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

// Forward (splat) warping of noise frames by optical flow, and the chained
// generation of appearance-free clips.
//
// Rules for one step R_{t-1} -> R_t:
//  * each source pixel (x, y) moves to (round(x + u), round(y + v)), rounding
//    half away from zero on each axis (nearest neighbor, never interpolated);
//  * destinations outside the frame are discarded;
//  * when several sources land on one destination the one with the larger
//    flow magnitude wins, ties going to the larger row-major source index;
//  * destinations that receive nothing take the fill frame (R0) value at the
//    same coordinates. This covers both de-occlusions and border pixels.

#ifndef AFD_WARP_HPP_
#define AFD_WARP_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "afd/flow_io.hpp"
#include "afd/image.hpp"
#include "afd/noise.hpp"

namespace afd {

struct WarpStats {
  std::int64_t moved = 0;          // destinations that received a warped value
  std::int64_t collisions = 0;     // destinations targeted by two or more sources
  std::int64_t deoccluded = 0;     // destinations refilled from the fill frame
  std::int64_t out_of_bounds = 0;  // sources whose target fell outside the frame

  WarpStats& operator+=(const WarpStats& other) noexcept {
    moved += other.moved;
    collisions += other.collisions;
    deoccluded += other.deoccluded;
    out_of_bounds += other.out_of_bounds;
    return *this;
  }
  friend bool operator==(const WarpStats&, const WarpStats&) = default;
};

struct WarpResult {
  Frame frame;
  WarpStats stats;
};

// Throws DimensionMismatch, NonFiniteFlow, UnknownFlowPresent.
WarpResult forward_warp(const Frame& prev, const FlowField& flow, const Frame& fill);

// Validates flow against a frame shape with the same errors as forward_warp.
void check_warp_flow(const FlowField& flow, int width, int height);

// Incremental clip generator: starts at R0 and advances one flow at a time.
// Used by the pipeline to stream frames to disk.
class ClipWarper {
 public:
  explicit ClipWarper(const NoiseSpec& spec);

  const Frame& noise() const noexcept { return noise_; }
  const Frame& current() const noexcept { return current_; }

  // R_t = forward_warp(R_{t-1}, flow, R0).
  const WarpStats& advance(const FlowField& flow);

 private:
  Frame noise_;
  Frame current_;
  WarpStats last_;
};

// [R0, R1, ..., R_{T-1}] for T-1 flows. An empty sequence yields [R0].
std::vector<Frame> generate_afd_clip(std::span<const FlowField> flows, const NoiseSpec& spec);

}  // namespace afd

#endif  // AFD_WARP_HPP_
