// voxanon/audio_io.cpp

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "voxanon/audio_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "voxanon/error.hpp"

namespace voxanon {

namespace {

std::uint32_t read_u32(const std::uint8_t *p) {
  return std::uint32_t(p[0]) | (std::uint32_t(p[1]) << 8) | (std::uint32_t(p[2]) << 16) |
         (std::uint32_t(p[3]) << 24);
}

std::uint16_t read_u16(const std::uint8_t *p) {
  return std::uint16_t(p[0] | (p[1] << 8));
}

void put_u32(std::vector<std::uint8_t> &out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(std::uint8_t((v >> (8 * i)) & 0xff));
}

void put_u16(std::vector<std::uint8_t> &out, std::uint16_t v) {
  out.push_back(std::uint8_t(v & 0xff));
  out.push_back(std::uint8_t(v >> 8));
}

void put_tag(std::vector<std::uint8_t> &out, const char *tag) {
  out.insert(out.end(), tag, tag + 4);
}

}  // namespace

std::int16_t quantize_sample(double x) {
  constexpr double kMax = 1.0 - 1.0 / 32768.0;
  if (std::isnan(x)) throw Error(ErrorKind::InvalidArgument, "NaN sample");
  const double clamped = std::clamp(x, -1.0, kMax);
  // std::round rounds halfway cases away from zero.
  return static_cast<std::int16_t>(std::round(clamped * 32768.0));
}

Waveform decode_wav(const std::vector<std::uint8_t> &bytes) {
  const std::size_t n = bytes.size();
  if (n < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
    throw Error(ErrorKind::NotWav, "missing RIFF/WAVE signature");

  bool have_fmt = false;
  std::size_t pos = 12;
  while (true) {
    if (pos + 8 > n) {
      throw Error(have_fmt ? ErrorKind::TruncatedFile : ErrorKind::NotWav,
                  "no data chunk found");
    }
    const std::uint8_t *hdr = bytes.data() + pos;
    const std::uint32_t size = read_u32(hdr + 4);
    const std::size_t body = pos + 8;
    if (std::memcmp(hdr, "fmt ", 4) == 0) {
      if (size < 16 || body + size > n) throw Error(ErrorKind::TruncatedFile, "short fmt chunk");
      const std::uint8_t *f = bytes.data() + body;
      const std::uint16_t format = read_u16(f);
      const std::uint16_t channels = read_u16(f + 2);
      const std::uint32_t rate = read_u32(f + 4);
      const std::uint16_t bits = read_u16(f + 14);
      if (format != 1)
        throw Error(ErrorKind::UnsupportedFormat, "format tag " + std::to_string(format) + " is not PCM");
      if (channels != 1)
        throw Error(ErrorKind::UnsupportedFormat, std::to_string(channels) + " channels, expected mono");
      if (rate != std::uint32_t(kSampleRate))
        throw Error(ErrorKind::UnsupportedFormat, "sample rate " + std::to_string(rate) + ", expected 16000");
      if (bits != 16)
        throw Error(ErrorKind::UnsupportedFormat, std::to_string(bits) + " bits per sample, expected 16");
      have_fmt = true;
    } else if (std::memcmp(hdr, "data", 4) == 0) {
      if (!have_fmt) throw Error(ErrorKind::NotWav, "data chunk before fmt chunk");
      if (body + size > n || size % 2 != 0)
        throw Error(ErrorKind::TruncatedFile, "data chunk declares " + std::to_string(size) +
                                                  " bytes, " + std::to_string(n - body) + " present");
      Waveform w;
      w.samples.resize(size / 2);
      const std::uint8_t *d = bytes.data() + body;
      for (Eigen::Index i = 0; i < w.samples.size(); ++i) {
        const auto v = static_cast<std::int16_t>(read_u16(d + 2 * i));
        w.samples[i] = v / 32768.0;
      }
      return w;
    }
    // Chunks are padded to even length.
    pos = body + size + (size & 1u);
  }
}

Waveform read_wav(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    return decode_wav(bytes);
  } catch (const Error &e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

std::vector<std::uint8_t> encode_wav(const Waveform &w) {
  if (w.sample_rate != kSampleRate)
    throw Error(ErrorKind::UnsupportedFormat, "sample rate " + std::to_string(w.sample_rate));
  const auto data_bytes = static_cast<std::uint32_t>(w.samples.size() * 2);
  std::vector<std::uint8_t> out;
  out.reserve(44 + data_bytes);
  put_tag(out, "RIFF");
  put_u32(out, 36 + data_bytes);
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put_u32(out, 16);
  put_u16(out, 1);
  put_u16(out, 1);
  put_u32(out, kSampleRate);
  put_u32(out, kSampleRate * 2);
  put_u16(out, 2);
  put_u16(out, 16);
  put_tag(out, "data");
  put_u32(out, data_bytes);
  for (double x : w.samples) put_u16(out, static_cast<std::uint16_t>(quantize_sample(x)));
  return out;
}

void write_wav(const Waveform &w, const std::filesystem::path &path) {
  const auto bytes = encode_wav(w);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, "cannot create " + path.string());
  out.write(reinterpret_cast<const char *>(bytes.data()), std::streamsize(bytes.size()));
  if (!out) throw Error(ErrorKind::IoError, "short write to " + path.string());
}

}  // namespace voxanon
