// voxanon/framing.hpp

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

#include "voxanon/audio_io.hpp"

namespace voxanon {

/// Frame length, hop and the analysis/synthesis window pair used for
/// frame-wise processing followed by overlap-add.
struct FramePlan {
  Eigen::Index frame_len = 0;
  Eigen::Index hop = 0;
  Eigen::VectorXd analysis_window;
  Eigen::VectorXd synthesis_window;

  /// 20 ms frames with a 10 ms hop and square-root periodic Hann windows on
  /// both sides, so that analysis * synthesis sums to one at 50% overlap.
  static FramePlan standard(int sample_rate = kSampleRate);

  static FramePlan sqrt_hann(Eigen::Index frame_len, Eigen::Index hop);

  /// Throws InvalidArgument unless 0 < hop <= frame_len and both windows
  /// have frame_len entries.
  void validate() const;

  /// Number of frames covering n samples: one frame starts at every hop
  /// position inside the signal, the last ones zero-padded.
  Eigen::Index frame_count(Eigen::Index n) const;
};

/// Periodic Hann window, w[n] = 0.5 - 0.5 cos(2 pi n / N).
Eigen::VectorXd periodic_hann(Eigen::Index n);

/// Maximum relative deviation of the summed, shifted analysis*synthesis
/// product from its mean over one steady-state hop period.
double cola_deviation(const FramePlan &plan);

/// Splits w into windowed frames, one per column.
Eigen::MatrixXd frame_signal(const Waveform &w, const FramePlan &plan);

/// Multiplies each column by the synthesis window and adds it at offset
/// k * hop. The result is truncated (or zero-extended) to out_len.
Waveform overlap_add(const Eigen::MatrixXd &frames, const FramePlan &plan, Eigen::Index out_len);

}  // namespace voxanon
