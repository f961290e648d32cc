// voxanon/manifest.hpp

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

// Kaldi-style data directories (wav.scp, utt2spk, spk2gender, text) and
// the expected layout of an evaluation output tree.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace voxanon {

enum class Gender { Female, Male };

struct DataDir {
  std::filesystem::path root;
  std::map<std::string, std::string> wav_index;  // raw wav.scp values
  std::map<std::string, std::string> utt2spk;
  std::map<std::string, Gender> spk2gender;
  std::optional<std::map<std::string, std::vector<std::string>>> text;

  /// wav.scp value of utt, resolved against the data directory when relative.
  std::filesystem::path wav_path(const std::string &utt) const;

  std::vector<std::string> speakers() const;
};

/// Reads and cross-checks a data directory. wav.scp and utt2spk are
/// required; spk2gender and text are loaded when present. Any bad line is
/// an error naming the file and line.
DataDir load_data_dir(const std::filesystem::path &dir);

/// Writes the maps back sorted by key, one "<key> <value>" per line.
void save_data_dir(const DataDir &data, const std::filesystem::path &dir);

struct LayoutReport {
  std::vector<std::string> missing;
  std::vector<std::string> extra;

  bool complete() const { return missing.empty(); }
};

/// Checks an output tree for exp/results_summary, exp/asv_orig/cosine_out,
/// at least one exp/asv_anon<suffix>/cosine_out, exp/asr and at least one
/// exp/ser/*.csv. Unknown entries directly under exp/ are listed as extra.
LayoutReport validate_submission_layout(const std::filesystem::path &root);

}  // namespace voxanon
