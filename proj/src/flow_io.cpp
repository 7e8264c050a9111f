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

#include "afd/flow_io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <string>
#include <utility>

#include "afd/error.hpp"

namespace afd {
namespace {

static_assert(sizeof(float) == 4 && std::numeric_limits<float>::is_iec559);

std::uint32_t load_le32(const std::byte* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

void store_le32(std::byte* p, std::uint32_t value) {
  p[0] = static_cast<std::byte>(value & 0xff);
  p[1] = static_cast<std::byte>((value >> 8) & 0xff);
  p[2] = static_cast<std::byte>((value >> 16) & 0xff);
  p[3] = static_cast<std::byte>((value >> 24) & 0xff);
}

std::string dims_string(std::int64_t w, std::int64_t h) {
  return std::to_string(w) + "x" + std::to_string(h);
}

}  // namespace

FlowField::FlowField(int width, int height) : width_(width), height_(height) {
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::ZeroDimension, "flow dimensions " + dims_string(width, height));
  }
  data_.assign(pixel_count() * 2, 0.0f);
}

FlowField::FlowField(int width, int height, std::vector<float> data)
    : width_(width), height_(height), data_(std::move(data)) {
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::ZeroDimension, "flow dimensions " + dims_string(width, height));
  }
  if (data_.size() != pixel_count() * 2) {
    throw Error(ErrorCode::DimensionMismatch,
                "flow buffer holds " + std::to_string(data_.size()) + " floats, expected " +
                    std::to_string(pixel_count() * 2));
  }
}

bool FlowField::has_unknown() const noexcept {
  for (float c : data_) {
    if (is_unknown_flow(c)) return true;
  }
  return false;
}

float FlowField::max_magnitude() const noexcept {
  float best = 0.0f;
  for (std::size_t i = 0; i + 1 < data_.size(); i += 2) {
    if (is_unknown_flow(data_[i]) || is_unknown_flow(data_[i + 1])) continue;
    best = std::max(best, std::hypot(data_[i], data_[i + 1]));
  }
  return best;
}

bool FlowField::bit_equal(const FlowField& other) const noexcept {
  return width_ == other.width_ && height_ == other.height_ &&
         (data_.empty() ||
          std::memcmp(data_.data(), other.data_.data(), data_.size() * sizeof(float)) == 0);
}

FlowField read_flo(std::span<const std::byte> bytes, const FloReadOptions& options) {
  if (bytes.size() < 4) {
    throw Error(ErrorCode::TruncatedPayload,
                "need 4 bytes for the tag, got " + std::to_string(bytes.size()));
  }
  if (std::bit_cast<float>(load_le32(bytes.data())) != kFloMagic) {
    throw Error(ErrorCode::BadMagic, "tag is not 202021.25 (\"PIEH\")");
  }
  if (bytes.size() < kFloHeaderBytes) {
    throw Error(ErrorCode::TruncatedPayload,
                "header needs 12 bytes, got " + std::to_string(bytes.size()));
  }
  const auto width = static_cast<std::int32_t>(load_le32(bytes.data() + 4));
  const auto height = static_cast<std::int32_t>(load_le32(bytes.data() + 8));
  if (width <= 0 || height <= 0) {
    throw Error(ErrorCode::NonPositiveDims, "header dimensions " + dims_string(width, height));
  }
  if (width > options.max_dimension || height > options.max_dimension) {
    throw Error(ErrorCode::OversizeDims, "header dimensions " + dims_string(width, height) +
                                             " exceed cap " +
                                             std::to_string(options.max_dimension));
  }

  const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * 2;
  const std::size_t expected = kFloHeaderBytes + count * sizeof(float);
  if (bytes.size() < expected) {
    throw Error(ErrorCode::TruncatedPayload, "payload for " + dims_string(width, height) +
                                                 " needs " + std::to_string(expected) +
                                                 " bytes, got " + std::to_string(bytes.size()));
  }
  if (bytes.size() > expected) {
    throw Error(ErrorCode::TrailingBytes, std::to_string(bytes.size() - expected) +
                                              " bytes after the payload");
  }

  std::vector<float> data(count);
  const std::byte* p = bytes.data() + kFloHeaderBytes;
  for (std::size_t i = 0; i < count; ++i, p += 4) {
    data[i] = std::bit_cast<float>(load_le32(p));
  }
  FlowField flow(width, height, std::move(data));
  if (!options.allow_unknown && flow.has_unknown()) {
    throw Error(ErrorCode::UnknownFlowPresent, "field contains components above 1e9 or NaN");
  }
  return flow;
}

std::vector<std::byte> write_flo(const FlowField& flow) {
  const auto values = flow.data();
  std::vector<std::byte> out(kFloHeaderBytes + values.size() * sizeof(float));
  store_le32(out.data(), std::bit_cast<std::uint32_t>(kFloMagic));
  store_le32(out.data() + 4, static_cast<std::uint32_t>(flow.width()));
  store_le32(out.data() + 8, static_cast<std::uint32_t>(flow.height()));
  std::byte* p = out.data() + kFloHeaderBytes;
  for (float value : values) {
    store_le32(p, std::bit_cast<std::uint32_t>(value));
    p += 4;
  }
  return out;
}

FlowField read_flo_file(const std::filesystem::path& path, const FloReadOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::vector<char> raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorCode::IoError, "read failed: " + path.string());
  return read_flo(std::as_bytes(std::span<const char>(raw)), options);
}

void write_flo_file(const std::filesystem::path& path, const FlowField& flow) {
  const auto bytes = write_flo(flow);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot create " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::IoError, "write failed: " + path.string());
}

}  // namespace afd
