// voxanon/metrics.cpp

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

#include "voxanon/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <set>

#include "voxanon/error.hpp"
#include "voxanon/line_reader.hpp"
#include "voxanon/parallel.hpp"

namespace voxanon {

EerResult compute_eer(std::span<const double> target_scores, std::span<const double> nontarget_scores) {
  if (target_scores.empty() || nontarget_scores.empty())
    throw Error(ErrorKind::MissingClass, target_scores.empty() ? "no same-speaker scores" : "no different-speaker scores");
  std::vector<double> tar(target_scores.begin(), target_scores.end());
  std::vector<double> non(nontarget_scores.begin(), nontarget_scores.end());
  std::sort(tar.begin(), tar.end());
  std::sort(non.begin(), non.end());

  std::vector<double> thresholds;
  thresholds.reserve(tar.size() + non.size() + 1);
  std::merge(tar.begin(), tar.end(), non.begin(), non.end(), std::back_inserter(thresholds));
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());
  thresholds.push_back(std::numeric_limits<double>::infinity());

  EerResult out;
  out.det.reserve(thresholds.size());
  const double nt = double(tar.size());
  const double nn = double(non.size());
  for (double th : thresholds) {
    const auto misses = std::lower_bound(tar.begin(), tar.end(), th) - tar.begin();
    const auto accepted_non = non.end() - std::lower_bound(non.begin(), non.end(), th);
    out.det.push_back({th, double(accepted_non) / nn, double(misses) / nt});
  }

  // p_miss - p_fa is non-decreasing, -1 at the first point, +1 at the last.
  for (std::size_t k = 0; k < out.det.size(); ++k) {
    const DetPoint &cur = out.det[k];
    const double d = cur.p_miss - cur.p_fa;
    if (d < 0) continue;
    if (d == 0 || k == 0) {
      out.eer_percent = 100.0 * cur.p_fa;
      out.threshold = cur.threshold;
      return out;
    }
    const DetPoint &prev = out.det[k - 1];
    const double d_prev = prev.p_miss - prev.p_fa;
    const double t = -d_prev / (d - d_prev);
    out.eer_percent = 100.0 * (prev.p_fa + t * (cur.p_fa - prev.p_fa));
    out.threshold = std::isfinite(cur.threshold) ? prev.threshold + t * (cur.threshold - prev.threshold)
                                                 : prev.threshold;
    return out;
  }
  // Unreachable: the +inf point always has p_miss = 1, p_fa = 0.
  throw Error(ErrorKind::MissingClass, "DET curve has no crossing");
}

EerResult compute_eer(std::span<const ScoreRecord> scores) {
  std::vector<double> tar, non;
  for (const ScoreRecord &s : scores) (s.pair.label == TrialLabel::SameSpeaker ? tar : non).push_back(s.score);
  return compute_eer(tar, non);
}

WerCounts &WerCounts::operator+=(const WerCounts &o) {
  n_sub += o.n_sub;
  n_del += o.n_del;
  n_ins += o.n_ins;
  n_ref += o.n_ref;
  return *this;
}

namespace {

struct Cell {
  std::size_t cost = 0;
  std::size_t sub = 0;
  std::size_t del = 0;
  std::size_t ins = 0;
};

// Lower cost first, then more substitutions.
bool better(const Cell &a, const Cell &b) {
  return a.cost < b.cost || (a.cost == b.cost && a.sub > b.sub);
}

}  // namespace

WerCounts align_wer(std::span<const std::string> ref, std::span<const std::string> hyp) {
  if (ref.empty()) throw Error(ErrorKind::EmptyReference, "reference has no words");
  const std::size_t n = ref.size();
  const std::size_t m = hyp.size();
  std::vector<Cell> prev(m + 1), cur(m + 1);
  for (std::size_t j = 1; j <= m; ++j) prev[j] = {j, 0, 0, j};
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = {i, 0, i, 0};
    for (std::size_t j = 1; j <= m; ++j) {
      Cell best = prev[j - 1];
      if (ref[i - 1] != hyp[j - 1]) {
        ++best.cost;
        ++best.sub;
      }
      Cell del = prev[j];
      ++del.cost;
      ++del.del;
      if (better(del, best)) best = del;
      Cell ins = cur[j - 1];
      ++ins.cost;
      ++ins.ins;
      if (better(ins, best)) best = ins;
      cur[j] = best;
    }
    std::swap(prev, cur);
  }
  const Cell &end = prev[m];
  return {end.sub, end.del, end.ins, n};
}

double corpus_wer(std::span<const WerCounts> utterances) {
  if (utterances.empty()) throw Error(ErrorKind::EmptyReference, "no utterances");
  WerCounts total;
  for (const WerCounts &c : utterances) total += c;
  if (total.n_ref == 0) throw Error(ErrorKind::EmptyReference, "no reference words");
  return total.wer_percent();
}

Tokens normalize_tokens(std::string_view text, const TextNormalization &norm) {
  Tokens out;
  for (std::string_view field : split_fields(text)) {
    std::string tok;
    tok.reserve(field.size());
    for (char c : field) {
      const auto uc = static_cast<unsigned char>(c);
      if (norm.strip_punctuation && std::ispunct(uc) && c != '\'') continue;
      tok.push_back(norm.uppercase ? char(std::toupper(uc)) : c);
    }
    if (!tok.empty()) out.push_back(std::move(tok));
  }
  return out;
}

std::map<std::string, Tokens> read_transcripts(const std::filesystem::path &path, const TextNormalization &norm) {
  std::map<std::string, Tokens> out;
  for_each_record(path, [&](std::size_t line, const std::vector<std::string_view> &f) {
    Tokens toks;
    for (std::size_t k = 1; k < f.size(); ++k) {
      auto more = normalize_tokens(f[k], norm);
      toks.insert(toks.end(), more.begin(), more.end());
    }
    if (!out.emplace(std::string(f[0]), std::move(toks)).second)
      throw Error(ErrorKind::DuplicateUtterance, path.string() + ":" + std::to_string(line) + ": " + std::string(f[0]));
  });
  return out;
}

WerReport evaluate_wer(const std::map<std::string, Tokens> &refs, const std::map<std::string, Tokens> &hyps,
                       unsigned workers) {
  for (const auto &[utt, toks] : hyps)
    if (!refs.count(utt)) throw Error(ErrorKind::OrphanUtterance, "hypothesis " + utt + " has no reference");
  std::vector<const std::pair<const std::string, Tokens> *> order;
  for (const auto &entry : refs) order.push_back(&entry);
  std::vector<WerCounts> counts(order.size());
  static const Tokens kEmpty;
  parallel_for(order.size(), workers, [&](std::size_t i) {
    const auto &[utt, ref] = *order[i];
    const auto h = hyps.find(utt);
    try {
      counts[i] = align_wer(ref, h == hyps.end() ? kEmpty : h->second);
    } catch (const Error &e) {
      throw Error(e.kind(), "utterance " + utt + ": " + e.what());
    }
  });
  WerReport report;
  for (std::size_t i = 0; i < order.size(); ++i) {
    report.per_utterance.emplace(order[i]->first, counts[i]);
    report.total += counts[i];
  }
  report.wer_percent = corpus_wer(counts);
  return report;
}

std::string_view to_string(Emotion e) {
  switch (e) {
    case Emotion::Neutral: return "neutral";
    case Emotion::Sadness: return "sadness";
    case Emotion::Anger: return "anger";
    case Emotion::Happiness: return "happiness";
  }
  return "?";
}

std::optional<Emotion> parse_emotion(std::string_view s) {
  std::string lower(s);
  for (char &c : lower) c = char(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "neutral" || lower == "neu") return Emotion::Neutral;
  if (lower == "sadness" || lower == "sad") return Emotion::Sadness;
  if (lower == "anger" || lower == "ang") return Emotion::Anger;
  if (lower == "happiness" || lower == "hap") return Emotion::Happiness;
  return std::nullopt;
}

double fold_uar(std::span<const EmotionRecord> records, bool strict) {
  std::array<std::size_t, kEmotionClasses> refs{}, hits{};
  for (const EmotionRecord &r : records) {
    const auto c = std::size_t(r.reference);
    ++refs[c];
    if (r.predicted == r.reference) ++hits[c];
  }
  double recall_sum = 0;
  std::size_t classes = 0;
  for (std::size_t c = 0; c < kEmotionClasses; ++c) {
    if (refs[c] == 0) {
      if (strict)
        throw Error(ErrorKind::MissingReferenceClass, std::string(to_string(Emotion(c))) + " has no reference samples");
      continue;
    }
    recall_sum += double(hits[c]) / double(refs[c]);
    ++classes;
  }
  if (classes == 0) throw Error(ErrorKind::MissingReferenceClass, "fold has no reference samples");
  return 100.0 * recall_sum / double(classes);
}

double average_uar(std::span<const double> fold_uars) {
  if (fold_uars.size() != kFolds)
    throw Error(ErrorKind::WrongFoldCount, "expected 5 folds, got " + std::to_string(fold_uars.size()));
  double sum = 0;
  for (double u : fold_uars) sum += u;
  return sum / double(kFolds);
}

UarReport evaluate_uar(std::span<const EmotionRecord> records, bool strict) {
  std::array<std::vector<EmotionRecord>, kFolds> folds;
  for (const EmotionRecord &r : records) {
    if (r.fold < 1 || r.fold > int(kFolds))
      throw Error(ErrorKind::WrongFoldCount, r.utterance_id + " has fold " + std::to_string(r.fold));
    folds[std::size_t(r.fold - 1)].push_back(r);
  }
  UarReport report;
  for (std::size_t f = 0; f < kFolds; ++f) {
    if (folds[f].empty()) throw Error(ErrorKind::WrongFoldCount, "fold " + std::to_string(f + 1) + " is empty");
    try {
      report.fold_uar[f] = fold_uar(folds[f], strict);
    } catch (const Error &e) {
      throw Error(e.kind(), "fold " + std::to_string(f + 1) + ": " + e.what());
    }
  }
  report.average = average_uar(report.fold_uar);
  return report;
}

std::vector<EmotionRecord> read_emotions(const std::filesystem::path &path) {
  std::vector<EmotionRecord> out;
  std::set<std::string> seen;
  for_each_record(path, [&](std::size_t line, const std::vector<std::string_view> &f) {
    if (f.size() != 4) throw_malformed(path, line, "expected '<utt> <fold> <reference> <predicted>'");
    EmotionRecord r;
    r.utterance_id = std::string(f[0]);
    if (f[1].size() != 1 || f[1][0] < '1' || f[1][0] > '5') throw_malformed(path, line, "fold must be 1-5");
    r.fold = f[1][0] - '0';
    const auto ref = parse_emotion(f[2]);
    const auto pred = parse_emotion(f[3]);
    if (!ref || !pred) throw_malformed(path, line, "unknown emotion class");
    r.reference = *ref;
    r.predicted = *pred;
    if (!seen.insert(r.utterance_id).second)
      throw Error(ErrorKind::DuplicateUtterance, path.string() + ":" + std::to_string(line) + ": " + r.utterance_id);
    out.push_back(std::move(r));
  });
  return out;
}

}  // namespace voxanon
