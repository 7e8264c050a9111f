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

// Lossless frame I/O: binary PPM (P6, maxval 255) and 8-bit RGB PNG.

#ifndef AFD_IMAGE_IO_HPP_
#define AFD_IMAGE_IO_HPP_

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "afd/image.hpp"

namespace afd {

std::vector<std::uint8_t> encode_ppm(const Frame& frame);
Frame decode_ppm(std::span<const std::uint8_t> bytes);

// Gray, gray+alpha and RGBA inputs are converted to RGB; 16-bit samples are
// reduced to 8 bits.
Frame decode_png(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> encode_png(const Frame& frame);

// Format picked from the extension (.ppm or .png). Throws IoError, BadImage.
Frame read_image(const std::filesystem::path& path);
void write_image(const std::filesystem::path& path, const Frame& frame);

bool is_image_path(const std::filesystem::path& path);

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);
void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace afd

#endif  // AFD_IMAGE_IO_HPP_
