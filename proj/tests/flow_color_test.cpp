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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "afd/error.hpp"
#include "afd/flow_io.hpp"
#include "oracles.hpp"

namespace afd {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(FlowColorTest, ZeroFlowIsWhite) {
  const ColorImage img = flow_to_color(FlowField(1, 1));
  EXPECT_EQ(img.at(0, 0, 0), 255);
  EXPECT_EQ(img.at(0, 0, 1), 255);
  EXPECT_EQ(img.at(0, 0, 2), 255);
}

TEST(FlowColorTest, WheelMatchesPublishedTransitions) {
  EXPECT_EQ(colorwheel::kSize, 55);
  EXPECT_EQ(colorwheel::entry(0), (std::array<int, 3>{255, 0, 0}));
  EXPECT_EQ(colorwheel::entry(15), (std::array<int, 3>{255, 255, 0}));
  EXPECT_EQ(colorwheel::entry(21), (std::array<int, 3>{0, 255, 0}));
  EXPECT_EQ(colorwheel::entry(25), (std::array<int, 3>{0, 255, 255}));
  EXPECT_EQ(colorwheel::entry(36), (std::array<int, 3>{0, 0, 255}));
  EXPECT_EQ(colorwheel::entry(49), (std::array<int, 3>{255, 0, 255}));
  EXPECT_EQ(colorwheel::entry(54), (std::array<int, 3>{255, 0, 43}));
}

TEST(FlowColorTest, OutputShapeMatchesInput) {
  const FlowField flow = fixtures::random_flow(17, 9, 3.0f, 5);
  const ColorImage img = flow_to_color(flow);
  EXPECT_EQ(img.width(), 17);
  EXPECT_EQ(img.height(), 9);
}

TEST(FlowColorTest, HueDependsOnlyOnAngle) {
  for (int a = 0; a < 72; ++a) {
    const double theta = 2 * kPi * a / 72.0 + 0.013;
    FlowField flow(2, 1);
    flow.u(0, 0) = static_cast<float>(0.45 * std::cos(theta));
    flow.v(0, 0) = static_cast<float>(0.45 * std::sin(theta));
    flow.u(1, 0) = static_cast<float>(0.95 * std::cos(theta));
    flow.v(1, 0) = static_cast<float>(0.95 * std::sin(theta));
    const ColorImage img = flow_to_color(flow, 1.0f);

    // 255 - channel is proportional to radius * (1 - wheel color); the
    // ratios between channels encode the hue.
    std::array<double, 3> weak{}, strong{};
    for (int c = 0; c < 3; ++c) {
      weak[c] = 255.0 - img.at(0, 0, c);
      strong[c] = 255.0 - img.at(1, 0, c);
    }
    const auto argmin = [](const std::array<double, 3>& d) {
      return std::min_element(d.begin(), d.end()) - d.begin();
    };
    const auto argmax = [](const std::array<double, 3>& d) {
      return std::max_element(d.begin(), d.end()) - d.begin();
    };
    const double strong_sum = strong[0] + strong[1] + strong[2];
    const double weak_sum = weak[0] + weak[1] + weak[2];
    EXPECT_GT(strong_sum, weak_sum) << "angle index " << a;
    if (strong[argmax(strong)] - strong[argmin(strong)] > 8) {
      EXPECT_EQ(argmax(weak), argmax(strong)) << "angle index " << a;
    }
    for (int c = 0; c < 3; ++c) {
      // Chroma fraction per channel agrees up to quantization.
      EXPECT_NEAR(weak[c] / weak_sum, strong[c] / strong_sum, 0.03) << "angle " << a << " ch " << c;
    }
  }
}

TEST(FlowColorTest, MatchesReferenceWheelOnDenseGrid) {
  const int angles = 360;
  const int radii = 13;
  FlowField flow(angles, radii);
  const float max_mag = 4.0f;
  for (int r = 0; r < radii; ++r) {
    for (int a = 0; a < angles; ++a) {
      // Radii up to 1.1 * max so the out-of-range branch is covered; none
      // lands exactly on the saturation boundary.
      const double rad = max_mag * 1.1 * r / (radii - 1);
      const double theta = 2 * kPi * a / angles;
      flow.u(a, r) = static_cast<float>(rad * std::cos(theta));
      flow.v(a, r) = static_cast<float>(rad * std::sin(theta));
    }
  }
  const ColorImage img = flow_to_color(flow, max_mag);
  int worst = 0;
  for (int r = 0; r < radii; ++r) {
    for (int a = 0; a < angles; ++a) {
      const auto ref = oracle::reference_color(flow.u(a, r) / max_mag, flow.v(a, r) / max_mag);
      for (int c = 0; c < 3; ++c) {
        const int diff = std::abs(static_cast<int>(img.at(a, r, c)) -
                                  static_cast<int>(std::floor(ref[c])));
        worst = std::max(worst, diff);
      }
    }
  }
  EXPECT_LE(worst, 1);
}

TEST(FlowColorTest, InvariantUnderJointScaling) {
  const FlowField flow = fixtures::random_flow(32, 32, 5.0f, 9);
  const ColorImage base = flow_to_color(flow, 6.0f);
  for (float scale : {0.01f, 0.37f, 3.0f, 1000.0f}) {
    FlowField scaled = flow;
    for (auto& c : scaled.data()) c *= scale;
    const ColorImage img = flow_to_color(scaled, 6.0f * scale);
    for (std::size_t i = 0; i < img.bytes().size(); ++i) {
      ASSERT_LE(std::abs(int(img.bytes()[i]) - int(base.bytes()[i])), 1) << "scale " << scale;
    }
  }
}

TEST(FlowColorTest, DefaultsToFieldMaximum) {
  FlowField flow(2, 1);
  flow.u(0, 0) = 3.0f;  // longest vector, pointing right: wheel entry 0 (red)
  flow.u(1, 0) = -1.0f;
  const ColorImage img = flow_to_color(flow);
  EXPECT_EQ(img.at(0, 0, 0), 255);
  EXPECT_EQ(img.at(0, 0, 1), 0);
  EXPECT_EQ(img.at(0, 0, 2), 0);
  EXPECT_EQ(flow_to_color(flow, 3.0f), img);
}

TEST(FlowColorTest, RejectsUnknownAndBadScale) {
  FlowField flow(1, 1);
  flow.v(0, 0) = 2e9f;
  try {
    flow_to_color(flow);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownFlowPresent);
  }
  EXPECT_THROW(flow_to_color(FlowField(1, 1), 0.0f), Error);
  EXPECT_THROW(flow_to_color(FlowField(1, 1), -1.0f), Error);
}

}  // namespace
}  // namespace afd
