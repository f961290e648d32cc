// voxanon/toy_embedding.hpp

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
#include "voxanon/framing.hpp"

namespace voxanon {

/// A stand-in speaker embedding for exercising the scoring chain without a
/// trained extractor: the mean LPC log-envelope (dB) over non-silent frames,
/// sampled at `bins` frequencies and centred to zero mean. It follows
/// formant positions, so it reacts to pole-phase changes.
Eigen::VectorXd toy_embedding(const Waveform &w, Eigen::Index lpc_order = 20, Eigen::Index bins = 32,
                              const FramePlan &plan = FramePlan::standard());

}  // namespace voxanon
