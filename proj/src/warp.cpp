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

#include "afd/warp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "afd/error.hpp"

namespace afd {
namespace {

std::string shape(int w, int h) { return std::to_string(w) + "x" + std::to_string(h); }

}  // namespace

void check_warp_flow(const FlowField& flow, int width, int height) {
  if (flow.width() != width || flow.height() != height) {
    throw Error(ErrorCode::DimensionMismatch, "flow " + shape(flow.width(), flow.height()) +
                                                  " vs frame " + shape(width, height));
  }
  for (float c : flow.data()) {
    if (!std::isfinite(c)) throw Error(ErrorCode::NonFiniteFlow, "flow has NaN/Inf component");
  }
  if (flow.has_unknown()) {
    throw Error(ErrorCode::UnknownFlowPresent, "flow has components marked unknown");
  }
}

WarpResult forward_warp(const Frame& prev, const FlowField& flow, const Frame& fill) {
  if (!prev.same_shape(fill)) {
    throw Error(ErrorCode::DimensionMismatch, "prev " + shape(prev.width(), prev.height()) +
                                                  " vs fill " + shape(fill.width(), fill.height()));
  }
  check_warp_flow(flow, prev.width(), prev.height());

  const int width = prev.width();
  const int height = prev.height();
  const std::size_t n = prev.pixel_count();

  // Per-destination winner under the (magnitude, source index) order. Sources
  // are visited in increasing index, so on equal magnitude the later one wins.
  std::vector<std::int64_t> winner(n, -1);
  std::vector<double> winner_mag2(n, 0.0);
  std::vector<std::uint8_t> hits(n, 0);
  WarpStats stats;

  const auto data = flow.data();
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const std::size_t src = static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                              static_cast<std::size_t>(x);
      const double u = data[src * 2];
      const double v = data[src * 2 + 1];
      // std::round rounds halfway cases away from zero.
      const double tx = std::round(static_cast<double>(x) + u);
      const double ty = std::round(static_cast<double>(y) + v);
      if (tx < 0.0 || ty < 0.0 || tx >= width || ty >= height) {
        ++stats.out_of_bounds;
        continue;
      }
      const std::size_t dst = static_cast<std::size_t>(ty) * static_cast<std::size_t>(width) +
                              static_cast<std::size_t>(tx);
      const double mag2 = u * u + v * v;
      if (hits[dst] < 2) ++hits[dst];
      if (winner[dst] < 0 || mag2 >= winner_mag2[dst]) {
        winner[dst] = static_cast<std::int64_t>(src);
        winner_mag2[dst] = mag2;
      }
    }
  }

  Frame out(width, height);
  for (std::size_t dst = 0; dst < n; ++dst) {
    const auto to = out.pixel(dst);
    if (winner[dst] >= 0) {
      const auto from = prev.pixel(static_cast<std::size_t>(winner[dst]));
      std::copy(from.begin(), from.end(), to.begin());
      ++stats.moved;
      if (hits[dst] >= 2) ++stats.collisions;
    } else {
      const auto from = fill.pixel(dst);
      std::copy(from.begin(), from.end(), to.begin());
      ++stats.deoccluded;
    }
  }
  return {std::move(out), stats};
}

ClipWarper::ClipWarper(const NoiseSpec& spec)
    : noise_(make_noise_frame(spec)), current_(noise_) {}

const WarpStats& ClipWarper::advance(const FlowField& flow) {
  auto result = forward_warp(current_, flow, noise_);
  current_ = std::move(result.frame);
  last_ = result.stats;
  return last_;
}

std::vector<Frame> generate_afd_clip(std::span<const FlowField> flows, const NoiseSpec& spec) {
  ClipWarper warper(spec);
  std::vector<Frame> frames;
  frames.reserve(flows.size() + 1);
  frames.push_back(warper.current());
  for (const auto& flow : flows) {
    warper.advance(flow);
    frames.push_back(warper.current());
  }
  return frames;
}

}  // namespace afd
