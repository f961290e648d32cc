// voxanon/mcadams.hpp

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

// Pole-phase anonymization with a McAdams coefficient drawn per utterance.
// Complex LPC poles r e^{j phi} are moved to r e^{j phi^alpha}; real poles,
// residuals and gains are kept.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "voxanon/audio_io.hpp"
#include "voxanon/framing.hpp"
#include "voxanon/lpc.hpp"

namespace voxanon {

struct McAdamsConfig {
  double alpha_min = 0.5;
  double alpha_max = 0.9;
  Eigen::Index lpc_order = lpc::kDefaultOrder;
  FramePlan plan = FramePlan::standard();
  std::uint64_t master_seed = 0;
  // Rescale each synthesized frame to the energy of its input frame.
  bool match_energy = false;

  /// Throws InvalidArgument unless 0 < alpha_min <= alpha_max < 1, the order
  /// is positive and smaller than the frame, and the plan is valid.
  void validate() const;
};

struct UtteranceDraw {
  std::string utterance_id;
  double alpha = 0;
};

/// 64-bit FNV-1a of the bytes of s.
std::uint64_t fnv1a64(std::string_view s);

/// SplitMix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x);

/// Uniform in [0, 1) keyed only by (seed, utterance_id).
double keyed_uniform(std::uint64_t seed, std::string_view utterance_id);

/// alpha = alpha_min + u (alpha_max - alpha_min) with u = keyed_uniform(seed, id).
UtteranceDraw draw_alpha(const McAdamsConfig &cfg, std::string_view utterance_id);

/// phi^alpha for phi in (0, pi) and alpha in (0, 1]. Throws DomainError
/// outside those ranges. alpha = 1 is accepted as the identity map.
double transform_phase(double phi, double alpha);

struct FrameResult {
  lpc::LpcFrame<double> frame;
  bool passthrough = false;
};

/// Maps the phases of the complex poles of f, clamps pole magnitudes to
/// 0.999 and rebuilds the coefficients. If root finding fails, the input
/// frame is returned with passthrough set.
FrameResult anonymize_frame(const lpc::LpcFrame<double> &f, double alpha);

struct AnonymizationResult {
  Waveform waveform;
  double alpha = 0;
  Eigen::Index frames = 0;
  Eigen::Index passthrough_frames = 0;
  // Largest |sample| before the final clamp to [-1, 1].
  double peak_before_clamp = 0;
};

/// Full analysis/modification/resynthesis of one waveform with a fixed alpha.
/// Only cfg.plan, cfg.lpc_order and cfg.match_energy are used.
AnonymizationResult anonymize_with_alpha(const Waveform &w, double alpha, const McAdamsConfig &cfg);

/// anonymize_with_alpha with the alpha drawn for utterance_id.
AnonymizationResult anonymize_utterance(const Waveform &w, const McAdamsConfig &cfg, std::string_view utterance_id);

struct BatchItem {
  std::string utterance_id;
  Waveform waveform;
};

/// Anonymizes items on up to `workers` threads. Results are in input order
/// and do not depend on the worker count.
std::vector<AnonymizationResult> anonymize_batch(const std::vector<BatchItem> &items, const McAdamsConfig &cfg,
                                                 unsigned workers);

}  // namespace voxanon
