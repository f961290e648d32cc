// voxanon/audio_io.hpp

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

#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <filesystem>
#include <vector>

namespace voxanon {

inline constexpr int kSampleRate = 16000;

/// Mono PCM audio with samples nominally in [-1, 1].
struct Waveform {
  Eigen::VectorXd samples;
  int sample_rate = kSampleRate;

  Eigen::Index size() const { return samples.size(); }
};

/// Reads a RIFF/WAVE file holding mono 16-bit PCM at 16 kHz. Samples are
/// scaled by 1/32768. Chunks other than "fmt " and "data" are skipped.
Waveform read_wav(const std::filesystem::path &path);
Waveform decode_wav(const std::vector<std::uint8_t> &bytes);

/// Writes a canonical 44-byte-header PCM16 file. Samples are clamped to
/// [-1, 1 - 2^-15] and rounded half away from zero after scaling by 32768.
void write_wav(const Waveform &w, const std::filesystem::path &path);
std::vector<std::uint8_t> encode_wav(const Waveform &w);

std::int16_t quantize_sample(double x);

}  // namespace voxanon
