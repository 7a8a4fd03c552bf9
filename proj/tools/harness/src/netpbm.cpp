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

#include "upspec/harness/netpbm.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include "upspec/errors.hpp"

namespace upspec::harness {

namespace {

std::size_t parse_header_field(std::string_view bytes, std::size_t& pos) {
  // Whitespace and '#' comments may precede each header field.
  while (pos < bytes.size()) {
    const unsigned char ch = static_cast<unsigned char>(bytes[pos]);
    if (std::isspace(ch)) {
      ++pos;
    } else if (ch == '#') {
      while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
    } else {
      break;
    }
  }
  std::size_t value = 0;
  const std::size_t start = pos;
  while (pos < bytes.size() && std::isdigit(static_cast<unsigned char>(bytes[pos]))) {
    value = value * 10 + static_cast<std::size_t>(bytes[pos] - '0');
    if (value > (std::size_t{1} << 31)) throw InvalidInput("netpbm header value too large");
    ++pos;
  }
  if (pos == start) throw InvalidInput("malformed netpbm header");
  return value;
}

}  // namespace

IoError::IoError(const std::filesystem::path& path, const std::string& reason)
    : std::runtime_error(path.string() + ": " + reason), path_(path) {}

std::vector<std::uint8_t> quantize(std::span<const double> values) {
  std::vector<std::uint8_t> out(values.size(), 0);
  if (values.empty()) return out;
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it;
  const double range = *hi_it - lo;
  if (!(range > 0.0)) return out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double scaled = std::round((values[i] - lo) / range * 255.0);
    out[i] = static_cast<std::uint8_t>(std::clamp(scaled, 0.0, 255.0));
  }
  return out;
}

NetpbmImage to_netpbm(const RealGrid& grid) {
  if (grid.values.size() != grid.height * grid.width || grid.values.empty()) {
    throw InvalidInput("grid size does not match its dimensions");
  }
  return NetpbmImage{NetpbmFormat::kPgm, grid.width, grid.height, quantize(grid.values)};
}

NetpbmImage to_netpbm(const Image& image, NetpbmFormat format) {
  const std::size_t want = format == NetpbmFormat::kPpm ? 3 : 1;
  if (image.channels() != want) {
    throw InvalidInput(std::string(format == NetpbmFormat::kPpm ? "PPM" : "PGM") +
                       " needs " + std::to_string(want) + " channel(s), got " +
                       std::to_string(image.channels()));
  }
  // Interleaved storage already matches the P6 byte order.
  return NetpbmImage{format, image.width(), image.height(), quantize(image.samples())};
}

std::string encode_netpbm(const NetpbmImage& image) {
  if (image.pixels.size() != image.width * image.height * image.channels()) {
    throw InvalidInput("pixel buffer does not match netpbm dimensions");
  }
  std::string out = image.format == NetpbmFormat::kPpm ? "P6 " : "P5 ";
  out += std::to_string(image.width) + " " + std::to_string(image.height) + " 255\n";
  out.append(image.pixels.begin(), image.pixels.end());
  return out;
}

NetpbmImage decode_netpbm(std::string_view bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '6')) {
    throw InvalidInput("not a binary PGM/PPM file");
  }
  NetpbmImage image;
  image.format = bytes[1] == '6' ? NetpbmFormat::kPpm : NetpbmFormat::kPgm;
  std::size_t pos = 2;
  image.width = parse_header_field(bytes, pos);
  image.height = parse_header_field(bytes, pos);
  const std::size_t maxval = parse_header_field(bytes, pos);
  if (maxval != 255) throw InvalidInput("only maxval 255 is supported");
  if (pos >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[pos]))) {
    throw InvalidInput("malformed netpbm header");
  }
  ++pos;
  const std::size_t expected = image.width * image.height * image.channels();
  if (bytes.size() - pos != expected) {
    throw InvalidInput("netpbm payload has " + std::to_string(bytes.size() - pos) +
                       " bytes, expected " + std::to_string(expected));
  }
  image.pixels.assign(bytes.begin() + static_cast<std::ptrdiff_t>(pos), bytes.end());
  return image;
}

void write_netpbm(const NetpbmImage& image, const std::filesystem::path& path) {
  write_file(path, encode_netpbm(image));
}

NetpbmImage read_netpbm(const std::filesystem::path& path) {
  const std::string bytes = read_file(path);
  try {
    return decode_netpbm(bytes);
  } catch (const InvalidInput& e) {
    throw IoError(path, e.what());
  }
}

Image to_image(const NetpbmImage& image) {
  std::vector<double> values(image.pixels.begin(), image.pixels.end());
  return Image(image.height, image.width, image.channels(), std::move(values));
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path, std::string("cannot open for writing: ") + std::strerror(errno));
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.close();
  if (!out) throw IoError(path, "write failed");
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path, std::string("cannot open for reading: ") + std::strerror(errno));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError(path, "read failed");
  return std::move(buffer).str();
}

}  // namespace upspec::harness
