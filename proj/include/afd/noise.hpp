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

#ifndef AFD_NOISE_HPP_
#define AFD_NOISE_HPP_

#include <array>
#include <cstdint>

#include "afd/image.hpp"

namespace afd {

// Philox4x32-10 block cipher used as a counter-based generator
// (Salmon et al., "Parallel random numbers: as easy as 1, 2, 3", SC 2011).
// Each (key, counter) pair maps to four independent 32-bit words, so any
// element of a random stream can be computed without touching the others.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static constexpr int kRounds = 10;

  explicit constexpr Philox4x32(Key key) noexcept : key_(key) {}
  explicit constexpr Philox4x32(std::uint64_t seed) noexcept
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)} {}

  Counter operator()(Counter counter) const noexcept;

  const Key& key() const noexcept { return key_; }

 private:
  Key key_;
};

struct NoiseSpec {
  int width = 0;
  int height = 0;
  std::uint64_t seed = 0;
};

// R0: every channel of every pixel drawn uniformly from {0..255}. Pixel i
// channel c is the top byte of word c of Philox(seed)(i). Output depends on
// `spec` alone, never on generation order. Throws ZeroDimension.
Frame make_noise_frame(const NoiseSpec& spec);

// Rows [row_begin, row_end) of the frame make_noise_frame would produce,
// written into `frame` (which must already be spec.width x spec.height).
void fill_noise_rows(const NoiseSpec& spec, int row_begin, int row_end, Frame& frame);

}  // namespace afd

#endif  // AFD_NOISE_HPP_
