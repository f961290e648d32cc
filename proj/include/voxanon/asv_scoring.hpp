// voxanon/asv_scoring.hpp

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

// Enrollment averaging and cosine scoring of speaker embeddings, plus the
// embedding, trial-list and score file formats.

#include <Eigen/Core>

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace voxanon {

struct Embedding {
  std::string utterance_id;
  Eigen::VectorXd vector;
};

enum class TrialLabel { SameSpeaker, DifferentSpeaker };

struct TrialPair {
  std::string enroll_speaker;
  std::string trial_utterance;
  TrialLabel label = TrialLabel::DifferentSpeaker;
};

struct ScoreRecord {
  TrialPair pair;
  double score = 0;
};

/// Component-wise mean of raw (not length-normalized) vectors.
Eigen::VectorXd average_enrollment(std::span<const Embedding> vectors);

/// dot(e, t) / (|e| |t|), clamped to [-1, 1].
double cosine_score(const Eigen::VectorXd &e, const Eigen::VectorXd &t);

using EnrollmentSets = std::map<std::string, std::vector<Embedding>>;
using EmbeddingIndex = std::map<std::string, Embedding>;

/// One record per trial, in trial order. Enrollment models are averaged
/// once per speaker.
std::vector<ScoreRecord> score_trials(const EnrollmentSets &enrollments, std::span<const TrialPair> trials,
                                      const EmbeddingIndex &trial_vectors);

/// Groups embeddings by speaker through an utterance -> speaker map.
/// Throws OrphanUtterance for embeddings without a speaker.
EnrollmentSets group_by_speaker(std::span<const Embedding> embeddings,
                                const std::map<std::string, std::string> &utt2spk);

EmbeddingIndex index_embeddings(std::span<const Embedding> embeddings);

struct TrialCounts {
  std::size_t same_speaker = 0;
  std::size_t different_speaker = 0;

  std::size_t total() const { return same_speaker + different_speaker; }
};

TrialCounts count_trials(std::span<const TrialPair> trials);

// Files.

/// Text: "<utt> <v1> ... <vd>" per line. Binary: magic "VXEMB001", then
/// little-endian uint32 dim and count, then per record a uint16 id length,
/// the id bytes and dim float64 values. The format is detected from the
/// first bytes. All vectors must share one non-zero dimension.
std::vector<Embedding> read_embeddings(const std::filesystem::path &path);
void write_embeddings_text(std::span<const Embedding> embeddings, const std::filesystem::path &path);
void write_embeddings_binary(std::span<const Embedding> embeddings, const std::filesystem::path &path);

/// "<enroll_speaker> <trial_utterance> <target|nontarget>" per line.
std::vector<TrialPair> read_trials(const std::filesystem::path &path);
void write_trials(std::span<const TrialPair> trials, const std::filesystem::path &path);

/// "<enroll_speaker> <trial_utterance> <score>" with six decimals.
std::string format_scores(std::span<const ScoreRecord> scores);
void write_scores(std::span<const ScoreRecord> scores, const std::filesystem::path &path);

/// Reads a score file and attaches labels from the trial list. Every score
/// line must name a pair from the trials and every trial must be scored.
std::vector<ScoreRecord> read_labeled_scores(const std::filesystem::path &scores_path,
                                             std::span<const TrialPair> trials);

}  // namespace voxanon
