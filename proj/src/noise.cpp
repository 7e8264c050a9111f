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

#include "afd/noise.hpp"

#include <string>

#include "afd/error.hpp"

namespace afd {
namespace {

constexpr std::uint32_t kPhiloxW32A = 0x9E3779B9;
constexpr std::uint32_t kPhiloxW32B = 0xBB67AE85;
constexpr std::uint32_t kPhiloxM4x32A = 0xD2511F53;
constexpr std::uint32_t kPhiloxM4x32B = 0xCD9E8D57;

inline void mul_hi_lo(std::uint32_t a, std::uint32_t b, std::uint32_t& lo, std::uint32_t& hi) {
  const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
  lo = static_cast<std::uint32_t>(product);
  hi = static_cast<std::uint32_t>(product >> 32);
}

}  // namespace

Philox4x32::Counter Philox4x32::operator()(Counter ctr) const noexcept {
  Key key = key_;
  for (int round = 0; round < kRounds; ++round) {
    std::uint32_t lo0, hi0, lo1, hi1;
    mul_hi_lo(kPhiloxM4x32A, ctr[0], lo0, hi0);
    mul_hi_lo(kPhiloxM4x32B, ctr[2], lo1, hi1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kPhiloxW32A;
    key[1] += kPhiloxW32B;
  }
  return ctr;
}

void fill_noise_rows(const NoiseSpec& spec, int row_begin, int row_end, Frame& frame) {
  const Philox4x32 rng(spec.seed);
  for (int y = row_begin; y < row_end; ++y) {
    for (int x = 0; x < spec.width; ++x) {
      const std::uint64_t index = static_cast<std::uint64_t>(y) * static_cast<std::uint64_t>(spec.width) +
                                  static_cast<std::uint64_t>(x);
      const auto words = rng({static_cast<std::uint32_t>(index),
                              static_cast<std::uint32_t>(index >> 32), 0, 0});
      for (int c = 0; c < Frame::kChannels; ++c) {
        frame.at(x, y, c) = static_cast<std::uint8_t>(words[static_cast<std::size_t>(c)] >> 24);
      }
    }
  }
}

Frame make_noise_frame(const NoiseSpec& spec) {
  if (spec.width < 1 || spec.height < 1) {
    throw Error(ErrorCode::ZeroDimension, "noise spec " + std::to_string(spec.width) + "x" +
                                              std::to_string(spec.height));
  }
  Frame frame(spec.width, spec.height);
  fill_noise_rows(spec, 0, spec.height, frame);
  return frame;
}

}  // namespace afd
