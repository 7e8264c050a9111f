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

#include "afd/flow_estimate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "afd/error.hpp"

namespace afd {
namespace {

// Smoothness weight is given against 8-bit intensities; luminance here is in [0, 1].
constexpr double kIntensityScale = 255.0;
constexpr int kMinLevelSize = 8;

Plane gaussian_blur(const Plane& src, double sigma) {
  const int radius = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
  std::vector<float> kernel(static_cast<std::size_t>(2 * radius + 1));
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    const double w = std::exp(-0.5 * i * i / (sigma * sigma));
    kernel[static_cast<std::size_t>(i + radius)] = static_cast<float>(w);
    sum += w;
  }
  for (auto& w : kernel) w = static_cast<float>(w / sum);

  Plane tmp(src.width(), src.height());
  for (int y = 0; y < src.height(); ++y) {
    for (int x = 0; x < src.width(); ++x) {
      float acc = 0.0f;
      for (int i = -radius; i <= radius; ++i) {
        acc += kernel[static_cast<std::size_t>(i + radius)] * src.clamped(x + i, y);
      }
      tmp.at(x, y) = acc;
    }
  }
  Plane out(src.width(), src.height());
  for (int y = 0; y < src.height(); ++y) {
    for (int x = 0; x < src.width(); ++x) {
      float acc = 0.0f;
      for (int i = -radius; i <= radius; ++i) {
        acc += kernel[static_cast<std::size_t>(i + radius)] * tmp.clamped(x, y + i);
      }
      out.at(x, y) = acc;
    }
  }
  return out;
}

// Pixel-center aligned bilinear resize.
Plane resize(const Plane& src, int width, int height) {
  Plane out(width, height);
  const float sx = static_cast<float>(src.width()) / static_cast<float>(width);
  const float sy = static_cast<float>(src.height()) / static_cast<float>(height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      out.at(x, y) = src.sample((static_cast<float>(x) + 0.5f) * sx - 0.5f,
                                (static_cast<float>(y) + 0.5f) * sy - 0.5f);
    }
  }
  return out;
}

Plane downsample(const Plane& src, int width, int height, double scale) {
  const double sigma = std::sqrt(1.0 / (scale * scale) - 1.0) / 2.0;
  return resize(sigma > 0.0 ? gaussian_blur(src, sigma) : src, width, height);
}

FlowField upsample_flow(const FlowField& coarse, int width, int height) {
  Plane cu(coarse.width(), coarse.height());
  Plane cv(coarse.width(), coarse.height());
  for (int y = 0; y < coarse.height(); ++y) {
    for (int x = 0; x < coarse.width(); ++x) {
      cu.at(x, y) = coarse.u(x, y);
      cv.at(x, y) = coarse.v(x, y);
    }
  }
  const Plane fu = resize(cu, width, height);
  const Plane fv = resize(cv, width, height);
  const float ru = static_cast<float>(width) / static_cast<float>(coarse.width());
  const float rv = static_cast<float>(height) / static_cast<float>(coarse.height());
  FlowField fine(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      fine.u(x, y) = fu.at(x, y) * ru;
      fine.v(x, y) = fv.at(x, y) * rv;
    }
  }
  return fine;
}

Plane warp_backward(const Plane& image, const FlowField& flow) {
  Plane out(image.width(), image.height());
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      out.at(x, y) = image.sample(static_cast<float>(x) + flow.u(x, y),
                                  static_cast<float>(y) + flow.v(x, y));
    }
  }
  return out;
}

}  // namespace

void HornSchunckParams::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw Error(ErrorCode::InvalidParams, "alpha must be positive");
  }
  if (iterations < 1) throw Error(ErrorCode::InvalidParams, "iterations must be >= 1");
  if (pyramid_levels < 1) throw Error(ErrorCode::InvalidParams, "pyramid levels must be >= 1");
  if (!(pyramid_scale > 0.0 && pyramid_scale < 1.0)) {
    throw Error(ErrorCode::InvalidParams, "pyramid scale must lie in (0, 1)");
  }
}

float Plane::clamped(int x, int y) const noexcept {
  return at(std::clamp(x, 0, width_ - 1), std::clamp(y, 0, height_ - 1));
}

float Plane::sample(float x, float y) const noexcept {
  x = std::clamp(x, 0.0f, static_cast<float>(width_ - 1));
  y = std::clamp(y, 0.0f, static_cast<float>(height_ - 1));
  const int x0 = static_cast<int>(x);
  const int y0 = static_cast<int>(y);
  const int x1 = std::min(x0 + 1, width_ - 1);
  const int y1 = std::min(y0 + 1, height_ - 1);
  const float fx = x - static_cast<float>(x0);
  const float fy = y - static_cast<float>(y0);
  const float top = (1.0f - fx) * at(x0, y0) + fx * at(x1, y0);
  const float bottom = (1.0f - fx) * at(x0, y1) + fx * at(x1, y1);
  return (1.0f - fy) * top + fy * bottom;
}

Plane to_luminance(const Frame& frame) {
  Plane out(frame.width(), frame.height());
  for (int y = 0; y < frame.height(); ++y) {
    for (int x = 0; x < frame.width(); ++x) {
      out.at(x, y) = static_cast<float>(
          (0.299 * frame.at(x, y, 0) + 0.587 * frame.at(x, y, 1) + 0.114 * frame.at(x, y, 2)) /
          255.0);
    }
  }
  return out;
}

HsTerms hs_terms(const Plane& prev, const Plane& next_warped, const FlowField& flow) {
  const int w = prev.width();
  const int h = prev.height();
  HsTerms t{Plane(w, h), Plane(w, h), Plane(w, h)};
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const float gx = 0.25f * (prev.clamped(x + 1, y) - prev.clamped(x - 1, y) +
                                next_warped.clamped(x + 1, y) - next_warped.clamped(x - 1, y));
      const float gy = 0.25f * (prev.clamped(x, y + 1) - prev.clamped(x, y - 1) +
                                next_warped.clamped(x, y + 1) - next_warped.clamped(x, y - 1));
      t.ix.at(x, y) = gx;
      t.iy.at(x, y) = gy;
      // Residual linearized around the current flow.
      t.it.at(x, y) = next_warped.at(x, y) - prev.at(x, y) - gx * flow.u(x, y) - gy * flow.v(x, y);
    }
  }
  return t;
}

void hs_iterate(const HsTerms& terms, double alpha, int iterations, FlowField& flow) {
  const int w = flow.width();
  const int h = flow.height();
  const float alpha2 = static_cast<float>(alpha * alpha);
  std::vector<float> next(flow.data().size());
  for (int iter = 0; iter < iterations; ++iter) {
    const auto cur = flow.data();
    auto mean = [&](int x, int y, int comp) {
      const auto at = [&](int xx, int yy) {
        xx = std::clamp(xx, 0, w - 1);
        yy = std::clamp(yy, 0, h - 1);
        return cur[(static_cast<std::size_t>(yy) * static_cast<std::size_t>(w) +
                    static_cast<std::size_t>(xx)) * 2 + static_cast<std::size_t>(comp)];
      };
      return 0.25f * (at(x - 1, y) + at(x + 1, y) + at(x, y - 1) + at(x, y + 1));
    };
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const float ix = terms.ix.at(x, y);
        const float iy = terms.iy.at(x, y);
        const float ubar = mean(x, y, 0);
        const float vbar = mean(x, y, 1);
        const float k = (ix * ubar + iy * vbar + terms.it.at(x, y)) / (alpha2 + ix * ix + iy * iy);
        const std::size_t i = (static_cast<std::size_t>(y) * static_cast<std::size_t>(w) +
                               static_cast<std::size_t>(x)) * 2;
        next[i] = ubar - ix * k;
        next[i + 1] = vbar - iy * k;
      }
    }
    std::copy(next.begin(), next.end(), flow.data().begin());
  }
}

FlowField estimate_flow(const Frame& prev, const Frame& next, const HornSchunckParams& params) {
  params.validate();
  if (!prev.same_shape(next)) {
    throw Error(ErrorCode::DimensionMismatch,
                "frames " + std::to_string(prev.width()) + "x" + std::to_string(prev.height()) +
                    " and " + std::to_string(next.width()) + "x" + std::to_string(next.height()));
  }
  if (prev.width() < kMinLevelSize || prev.height() < kMinLevelSize) {
    throw Error(ErrorCode::DegenerateInput, "frames must be at least 8x8 pixels");
  }

  std::vector<Plane> pyr_prev{to_luminance(prev)};
  std::vector<Plane> pyr_next{to_luminance(next)};
  for (int level = 1; level < params.pyramid_levels; ++level) {
    const Plane& fine = pyr_prev.back();
    const int w = static_cast<int>(std::lround(fine.width() * params.pyramid_scale));
    const int h = static_cast<int>(std::lround(fine.height() * params.pyramid_scale));
    if (w < kMinLevelSize || h < kMinLevelSize) break;
    pyr_prev.push_back(downsample(fine, w, h, params.pyramid_scale));
    pyr_next.push_back(downsample(pyr_next.back(), w, h, params.pyramid_scale));
  }

  const double alpha = params.alpha / kIntensityScale;
  FlowField flow(pyr_prev.back().width(), pyr_prev.back().height());
  for (std::size_t level = pyr_prev.size(); level-- > 0;) {
    const Plane& p = pyr_prev[level];
    if (flow.width() != p.width() || flow.height() != p.height()) {
      flow = upsample_flow(flow, p.width(), p.height());
    }
    const HsTerms terms = hs_terms(p, warp_backward(pyr_next[level], flow), flow);
    hs_iterate(terms, alpha, params.iterations, flow);
  }
  return flow;
}

}  // namespace afd
