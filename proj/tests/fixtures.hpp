// tests/fixtures.hpp

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

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "voxanon/asv_scoring.hpp"

namespace fixtures {

/// Trial list with exactly `targets` same-speaker and `nontargets`
/// different-speaker pairs spread over `speakers` enrollment speakers whose
/// ids start with `prefix`. Rows are shuffled so counting cannot rely on order.
inline std::vector<voxanon::TrialPair> trial_list(const std::string &prefix, int speakers, std::size_t targets,
                                                  std::size_t nontargets, std::mt19937_64 &rng) {
  std::vector<voxanon::TrialPair> out;
  out.reserve(targets + nontargets);
  for (std::size_t i = 0; i < targets; ++i) {
    const std::string spk = prefix + std::to_string(i % std::size_t(speakers));
    out.push_back({spk, spk + "-" + std::to_string(i), voxanon::TrialLabel::SameSpeaker});
  }
  for (std::size_t i = 0; i < nontargets; ++i) {
    const std::string spk = prefix + std::to_string(i % std::size_t(speakers));
    const std::string other = prefix + std::to_string((i + 1) % std::size_t(speakers));
    out.push_back({spk, other + "-" + std::to_string(i) + "x", voxanon::TrialLabel::DifferentSpeaker});
  }
  std::shuffle(out.begin(), out.end(), rng);
  return out;
}

}  // namespace fixtures
