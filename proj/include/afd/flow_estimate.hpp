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

// Classical dense optical flow: coarse-to-fine Horn-Schunck.

#ifndef AFD_FLOW_ESTIMATE_HPP_
#define AFD_FLOW_ESTIMATE_HPP_

#include <cstddef>
#include <vector>

#include "afd/flow_io.hpp"
#include "afd/image.hpp"

namespace afd {

struct HornSchunckParams {
  double alpha = 15.0;  // smoothness weight, in 8-bit intensity units
  int iterations = 200;  // Jacobi sweeps per pyramid level
  int pyramid_levels = 3;
  double pyramid_scale = 0.5;

  // Throws InvalidParams unless alpha > 0, iterations > 0, levels >= 1 and
  // 0 < scale < 1.
  void validate() const;
};

// Single-channel float raster.
class Plane {
 public:
  Plane() = default;
  Plane(int width, int height, float value = 0.0f)
      : width_(width), height_(height),
        data_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), value) {}

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  float& at(int x, int y) noexcept { return data_[index(x, y)]; }
  float at(int x, int y) const noexcept { return data_[index(x, y)]; }
  // Replicate-edge access.
  float clamped(int x, int y) const noexcept;
  // Bilinear sample with replicate-edge clamping.
  float sample(float x, float y) const noexcept;

  std::vector<float>& values() noexcept { return data_; }
  const std::vector<float>& values() const noexcept { return data_; }

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<float> data_;
};

// Luminance with weights (0.299, 0.587, 0.114), scaled to [0, 1].
Plane to_luminance(const Frame& frame);

// Linearized brightness-constancy terms for one level. With a warped second
// image, `it` already absorbs the current flow so that the data residual of
// a total flow (u, v) is ix*u + iy*v + it.
struct HsTerms {
  Plane ix;
  Plane iy;
  Plane it;
};

// Central-difference gradients averaged over both images, replicate edges.
// `next_warped` is the second image resampled by `flow` (zero flow: the
// second image itself).
HsTerms hs_terms(const Plane& prev, const Plane& next_warped, const FlowField& flow);

// `iterations` Jacobi sweeps on the discrete energy
//   sum_p (ix u + iy v + it)^2 + (alpha^2 / 4) sum_{p~q} |w_p - w_q|^2
// over 4-adjacent pairs, i.e.
//   u <- ubar - ix (ix ubar + iy vbar + it) / (alpha^2 + ix^2 + iy^2)
// with ubar, vbar the replicate-padded 4-neighbor means. `alpha` is in the
// units of the terms (luminance in [0, 1]).
void hs_iterate(const HsTerms& terms, double alpha, int iterations, FlowField& flow);

// Full estimator. The smoothness weight in params is expressed in 8-bit
// intensity units and rescaled to the [0, 1] luminance used internally.
// Pyramid depth shrinks automatically until the coarsest level is >= 8 px
// on both axes. Throws DimensionMismatch, DegenerateInput, InvalidParams.
FlowField estimate_flow(const Frame& prev, const Frame& next, const HornSchunckParams& params = {});

}  // namespace afd

#endif  // AFD_FLOW_ESTIMATE_HPP_
