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

#include "afd/image.hpp"

#include <string>
#include <utility>

#include "afd/error.hpp"

namespace afd {

Frame::Frame(int width, int height) : width_(width), height_(height) {
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::ZeroDimension,
                "frame dimensions " + std::to_string(width) + "x" + std::to_string(height));
  }
  data_.assign(pixel_count() * kChannels, 0);
}

Frame::Frame(int width, int height, std::vector<std::uint8_t> data)
    : width_(width), height_(height), data_(std::move(data)) {
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::ZeroDimension,
                "frame dimensions " + std::to_string(width) + "x" + std::to_string(height));
  }
  if (data_.size() != pixel_count() * kChannels) {
    throw Error(ErrorCode::DimensionMismatch, "frame buffer holds " +
                                                  std::to_string(data_.size()) + " bytes, expected " +
                                                  std::to_string(pixel_count() * kChannels));
  }
}

}  // namespace afd
