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

#include <filesystem>
#include <string>
#include <vector>

#include "afd/error.hpp"
#include "afd/image_io.hpp"
#include "oracles.hpp"

namespace afd {
namespace {

namespace fs = std::filesystem;

std::vector<std::uint8_t> as_bytes(const std::string& s) {
  return std::vector<std::uint8_t>(s.begin(), s.end());
}

TEST(PpmTest, RoundTrip) {
  const Frame f = fixtures::random_frame(19, 5, 1);
  const auto bytes = encode_ppm(f);
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 11), "P6\n19 5\n255");
  EXPECT_EQ(decode_ppm(bytes), f);
}

TEST(PpmTest, AcceptsComments) {
  auto bytes = as_bytes("P6 # made by hand\n2 # width\n1\n255\n");
  for (std::uint8_t b : {1, 2, 3, 4, 5, 6}) bytes.push_back(b);
  const Frame f = decode_ppm(bytes);
  EXPECT_EQ(f.width(), 2);
  EXPECT_EQ(f.at(1, 0, 2), 6);
}

TEST(PpmTest, RejectsBadInput) {
  EXPECT_THROW(decode_ppm(as_bytes("P3\n1 1\n255\n0 0 0")), Error);
  EXPECT_THROW(decode_ppm(as_bytes("P6\n1 1\n65535\n123456")), Error);
  EXPECT_THROW(decode_ppm(as_bytes("P6\n2 2\n255\nabc")), Error);
  EXPECT_THROW(decode_ppm(as_bytes("P6\n0 2\n255\n")), Error);
}

TEST(PngTest, RoundTrip) {
  const Frame f = fixtures::random_frame(33, 17, 2);
  const auto bytes = encode_png(f);
  ASSERT_GT(bytes.size(), 8u);
  EXPECT_EQ(bytes[1], 'P');
  EXPECT_EQ(decode_png(bytes), f);
}

TEST(PngTest, TruncatedIsBadImage) {
  auto bytes = encode_png(fixtures::random_frame(16, 16, 3));
  bytes.resize(bytes.size() / 2);
  try {
    decode_png(bytes);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BadImage);
  }
  EXPECT_THROW(decode_png(as_bytes("not a png")), Error);
}

TEST(PngTest, ReadsBundledPhotos) {
  const Frame f = fixtures::load_photo("chelsea.png");
  EXPECT_GT(f.width(), 200);
  EXPECT_GT(f.height(), 200);
}

TEST(ImageFileTest, ExtensionSelectsCodec) {
  const fs::path dir = fs::temp_directory_path() / "afd_image_io_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const Frame f = fixtures::random_frame(8, 6, 4);
  write_image(dir / "a.png", f);
  write_image(dir / "b.ppm", f);
  EXPECT_EQ(read_image(dir / "a.png"), f);
  EXPECT_EQ(read_image(dir / "b.ppm"), f);
  EXPECT_EQ(read_file_bytes(dir / "b.ppm"), encode_ppm(f));
  EXPECT_TRUE(is_image_path("x/000001.PNG"));
  EXPECT_FALSE(is_image_path("x/000001.flo"));
  EXPECT_THROW(write_image(dir / "c.jpg", f), Error);
  try {
    read_image(dir / "missing.png");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IoError);
  }
  fs::remove_all(dir);
}

}  // namespace
}  // namespace afd
