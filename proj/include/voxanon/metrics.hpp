// voxanon/metrics.hpp

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

// Privacy and utility metrics: equal error rate over cosine trial scores,
// word error rate from Levenshtein alignment and unweighted average recall
// over four emotion classes with five-fold averaging.

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "voxanon/asv_scoring.hpp"

namespace voxanon {

// EER

struct DetPoint {
  double threshold = 0;  // accept as same speaker iff score >= threshold
  double p_fa = 0;
  double p_miss = 0;
};

struct EerResult {
  double eer_percent = 0;
  double threshold = 0;
  // One point per distinct score in increasing order, followed by a final
  // point at +inf where everything is rejected.
  std::vector<DetPoint> det;
};

/// EER where the miss and false-alarm rates cross, linearly interpolated
/// between the bracketing DET points. Throws MissingClass unless both
/// labels occur.
EerResult compute_eer(std::span<const ScoreRecord> scores);
EerResult compute_eer(std::span<const double> target_scores, std::span<const double> nontarget_scores);

// WER

struct WerCounts {
  std::size_t n_sub = 0;
  std::size_t n_del = 0;
  std::size_t n_ins = 0;
  std::size_t n_ref = 0;

  std::size_t errors() const { return n_sub + n_del + n_ins; }
  double wer_percent() const { return 100.0 * double(errors()) / double(n_ref); }
  WerCounts &operator+=(const WerCounts &o);
  bool operator==(const WerCounts &) const = default;
};

using Tokens = std::vector<std::string>;

/// Minimum edit-distance alignment with unit costs. Among the optimal
/// alignments the one with the most substitutions is reported, i.e. the
/// substitution > deletion > insertion preference. Throws EmptyReference.
WerCounts align_wer(std::span<const std::string> ref, std::span<const std::string> hyp);

/// 100 * total errors / total reference words.
double corpus_wer(std::span<const WerCounts> utterances);

struct TextNormalization {
  bool uppercase = true;
  bool strip_punctuation = false;
};

Tokens normalize_tokens(std::string_view text, const TextNormalization &norm = {});

/// "<utt> <token> ..." per line. Utterances with no tokens map to empty.
std::map<std::string, Tokens> read_transcripts(const std::filesystem::path &path, const TextNormalization &norm = {});

struct WerReport {
  std::map<std::string, WerCounts> per_utterance;
  WerCounts total;
  double wer_percent = 0;
};

/// Aligns every reference utterance against its hypothesis; a missing
/// hypothesis counts as empty. A hypothesis with no reference is an
/// OrphanUtterance error.
WerReport evaluate_wer(const std::map<std::string, Tokens> &refs, const std::map<std::string, Tokens> &hyps,
                       unsigned workers = 1);

// UAR

enum class Emotion { Neutral, Sadness, Anger, Happiness };
inline constexpr std::size_t kEmotionClasses = 4;
inline constexpr std::size_t kFolds = 5;

std::string_view to_string(Emotion e);
/// Accepts full names and the four-letter IEMOCAP codes, any case.
std::optional<Emotion> parse_emotion(std::string_view s);

struct EmotionRecord {
  std::string utterance_id;
  int fold = 1;
  Emotion reference = Emotion::Neutral;
  Emotion predicted = Emotion::Neutral;
};

/// 100 * mean over classes of (correct in class / references in class).
/// Strict mode throws MissingReferenceClass if a class has no reference;
/// lenient mode averages over the classes that do.
double fold_uar(std::span<const EmotionRecord> records, bool strict = true);

/// Unweighted mean of exactly five fold values; WrongFoldCount otherwise.
double average_uar(std::span<const double> fold_uars);

struct UarReport {
  std::array<double, kFolds> fold_uar{};
  double average = 0;
};

UarReport evaluate_uar(std::span<const EmotionRecord> records, bool strict = true);

/// "<utt> <fold 1-5> <reference_class> <predicted_class>" per line.
std::vector<EmotionRecord> read_emotions(const std::filesystem::path &path);

}  // namespace voxanon
