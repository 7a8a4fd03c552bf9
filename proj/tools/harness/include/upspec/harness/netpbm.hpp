/*
 * Copyright 2026 The upspec Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef UPSPEC_HARNESS_NETPBM_HPP_
#define UPSPEC_HARNESS_NETPBM_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "upspec/signal.hpp"

namespace upspec::harness {

/// Failure to read or write a file. what() names the path.
class IoError : public std::runtime_error {
 public:
  IoError(const std::filesystem::path& path, const std::string& reason);
  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
};

enum class NetpbmFormat { kPgm, kPpm };  // binary P5 / P6

struct NetpbmImage {
  NetpbmFormat format = NetpbmFormat::kPgm;
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> pixels;  // row-major, 3 bytes per pixel for P6

  std::size_t channels() const noexcept { return format == NetpbmFormat::kPpm ? 3 : 1; }
  bool operator==(const NetpbmImage&) const = default;
};

/// Min-max normalization of all values to 0..255 with rounding; a constant
/// array maps to 0.
std::vector<std::uint8_t> quantize(std::span<const double> values);

/// P5 from a single-channel grid, P5 from a 1-channel image, P6 from a
/// 3-channel image. Throws InvalidInput on any other channel count.
NetpbmImage to_netpbm(const RealGrid& grid);
NetpbmImage to_netpbm(const Image& image, NetpbmFormat format);

/// Header "P5 W H 255\n" (or P6) followed by the raw bytes.
std::string encode_netpbm(const NetpbmImage& image);
NetpbmImage decode_netpbm(std::string_view bytes);

void write_netpbm(const NetpbmImage& image, const std::filesystem::path& path);
NetpbmImage read_netpbm(const std::filesystem::path& path);

/// Pixel values as doubles in 0..255.
Image to_image(const NetpbmImage& image);

/// Writes bytes to path, creating nothing but the file itself.
void write_file(const std::filesystem::path& path, std::string_view contents);
std::string read_file(const std::filesystem::path& path);

}  // namespace upspec::harness

#endif  // UPSPEC_HARNESS_NETPBM_HPP_
