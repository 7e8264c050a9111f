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

// Color encoding of flow vectors on the Middlebury flow-code colorwheel.

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "afd/error.hpp"
#include "afd/flow_io.hpp"

namespace afd {
namespace colorwheel {
namespace {

using Wheel = std::array<std::array<int, 3>, kSize>;

Wheel make_wheel() {
  Wheel wheel{};
  int k = 0;
  for (int i = 0; i < kRY; ++i) wheel[k++] = {255, 255 * i / kRY, 0};
  for (int i = 0; i < kYG; ++i) wheel[k++] = {255 - 255 * i / kYG, 255, 0};
  for (int i = 0; i < kGC; ++i) wheel[k++] = {0, 255, 255 * i / kGC};
  for (int i = 0; i < kCB; ++i) wheel[k++] = {0, 255 - 255 * i / kCB, 255};
  for (int i = 0; i < kBM; ++i) wheel[k++] = {255 * i / kBM, 0, 255};
  for (int i = 0; i < kMR; ++i) wheel[k++] = {255, 0, 255 - 255 * i / kMR};
  return wheel;
}

const Wheel& wheel() {
  static const Wheel w = make_wheel();
  return w;
}

}  // namespace

std::array<int, 3> entry(int k) { return wheel()[static_cast<std::size_t>(k)]; }

std::array<std::uint8_t, 3> encode(float fx, float fy) {
  const float rad = std::sqrt(fx * fx + fy * fy);
  const float a = std::atan2(-fy, -fx) / std::numbers::pi_v<float>;
  const float fk = (a + 1.0f) / 2.0f * static_cast<float>(kSize - 1);
  const int k0 = static_cast<int>(fk);
  const int k1 = (k0 + 1) % kSize;
  const float f = fk - static_cast<float>(k0);

  std::array<std::uint8_t, 3> pix{};
  for (int b = 0; b < 3; ++b) {
    const float col0 = static_cast<float>(wheel()[k0][b]) / 255.0f;
    const float col1 = static_cast<float>(wheel()[k1][b]) / 255.0f;
    float col = (1.0f - f) * col0 + f * col1;
    if (rad <= 1.0f) {
      col = 1.0f - rad * (1.0f - col);  // more saturation with radius
    } else {
      col *= 0.75f;  // out of range
    }
    pix[b] = static_cast<std::uint8_t>(static_cast<int>(255.0f * col));
  }
  return pix;
}

}  // namespace colorwheel

ColorImage flow_to_color(const FlowField& flow, std::optional<float> max_magnitude) {
  if (flow.has_unknown()) {
    throw Error(ErrorCode::UnknownFlowPresent, "cannot colorize unknown flow");
  }
  float maxrad = 0.0f;
  if (max_magnitude) {
    if (!(*max_magnitude > 0.0f) || !std::isfinite(*max_magnitude)) {
      throw Error(ErrorCode::InvalidParams,
                  "max magnitude must be positive, got " + std::to_string(*max_magnitude));
    }
    maxrad = *max_magnitude;
  } else {
    maxrad = std::max(flow.max_magnitude(), 1e-6f);
  }

  ColorImage out(flow.width(), flow.height());
  for (int y = 0; y < flow.height(); ++y) {
    for (int x = 0; x < flow.width(); ++x) {
      const auto pix = colorwheel::encode(flow.u(x, y) / maxrad, flow.v(x, y) / maxrad);
      for (int c = 0; c < 3; ++c) out.at(x, y, c) = pix[c];
    }
  }
  return out;
}

}  // namespace afd
