// voxanon/asv_scoring.cpp

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

#include "voxanon/asv_scoring.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <set>
#include <utility>

#include "voxanon/error.hpp"
#include "voxanon/line_reader.hpp"

namespace voxanon {

namespace {

constexpr char kBinaryMagic[8] = {'V', 'X', 'E', 'M', 'B', '0', '0', '1'};

void check_dimensions(std::span<const Embedding> embeddings, const std::string &where) {
  if (embeddings.empty()) return;
  const Eigen::Index d = embeddings.front().vector.size();
  if (d == 0) throw Error(ErrorKind::DimensionMismatch, where + ": zero-dimensional embedding");
  for (const Embedding &e : embeddings) {
    if (e.vector.size() != d)
      throw Error(ErrorKind::DimensionMismatch, where + ": " + e.utterance_id + " has dimension " +
                                                    std::to_string(e.vector.size()) + ", expected " +
                                                    std::to_string(d));
    if (e.vector.squaredNorm() == 0.0) throw Error(ErrorKind::ZeroNorm, where + ": " + e.utterance_id);
  }
}

std::vector<Embedding> read_binary_embeddings(const std::vector<char> &bytes, const std::filesystem::path &path) {
  auto need = [&](std::size_t pos, std::size_t n) {
    if (pos + n > bytes.size()) throw Error(ErrorKind::MalformedLine, path.string() + ": truncated binary embeddings");
  };
  auto u32 = [&](std::size_t pos) {
    need(pos, 4);
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | std::uint8_t(bytes[pos + std::size_t(i)]);
    return v;
  };
  const std::uint32_t dim = u32(8);
  const std::uint32_t count = u32(12);
  std::size_t pos = 16;
  std::vector<Embedding> out;
  out.reserve(count);
  for (std::uint32_t r = 0; r < count; ++r) {
    need(pos, 2);
    const std::size_t len = std::uint8_t(bytes[pos]) | (std::size_t(std::uint8_t(bytes[pos + 1])) << 8);
    pos += 2;
    need(pos, len + 8 * std::size_t(dim));
    Embedding e;
    e.utterance_id.assign(bytes.data() + pos, len);
    pos += len;
    e.vector.resize(dim);
    for (std::uint32_t k = 0; k < dim; ++k, pos += 8) {
      std::uint64_t bits = 0;
      for (int i = 7; i >= 0; --i) bits = (bits << 8) | std::uint8_t(bytes[pos + std::size_t(i)]);
      double v;
      std::memcpy(&v, &bits, 8);
      if (!std::isfinite(v)) throw Error(ErrorKind::MalformedLine, path.string() + ": non-finite value in " + e.utterance_id);
      e.vector[k] = v;
    }
    out.push_back(std::move(e));
  }
  if (pos != bytes.size()) throw Error(ErrorKind::MalformedLine, path.string() + ": trailing bytes after embeddings");
  return out;
}

}  // namespace

Eigen::VectorXd average_enrollment(std::span<const Embedding> vectors) {
  if (vectors.empty()) throw Error(ErrorKind::EmptyEnrollment, "no enrollment vectors");
  const Eigen::Index d = vectors.front().vector.size();
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(d);
  for (const Embedding &e : vectors) {
    if (e.vector.size() != d)
      throw Error(ErrorKind::DimensionMismatch, e.utterance_id + " has dimension " + std::to_string(e.vector.size()));
    sum += e.vector;
  }
  sum /= double(vectors.size());
  if (sum.squaredNorm() == 0.0) throw Error(ErrorKind::ZeroNorm, "enrollment average is the zero vector");
  return sum;
}

double cosine_score(const Eigen::VectorXd &e, const Eigen::VectorXd &t) {
  if (e.size() != t.size())
    throw Error(ErrorKind::DimensionMismatch,
                std::to_string(e.size()) + " vs " + std::to_string(t.size()) + " dimensions");
  const double ne = e.norm();
  const double nt = t.norm();
  if (ne == 0.0 || nt == 0.0) throw Error(ErrorKind::ZeroNorm, "cosine of a zero vector");
  return std::clamp(e.dot(t) / (ne * nt), -1.0, 1.0);
}

std::vector<ScoreRecord> score_trials(const EnrollmentSets &enrollments, std::span<const TrialPair> trials,
                                      const EmbeddingIndex &trial_vectors) {
  std::map<std::string, Eigen::VectorXd> models;
  std::vector<ScoreRecord> out;
  out.reserve(trials.size());
  for (const TrialPair &pair : trials) {
    auto model = models.find(pair.enroll_speaker);
    if (model == models.end()) {
      const auto it = enrollments.find(pair.enroll_speaker);
      if (it == enrollments.end()) throw Error(ErrorKind::MissingEnrollment, pair.enroll_speaker);
      model = models.emplace(pair.enroll_speaker, average_enrollment(it->second)).first;
    }
    const auto trial = trial_vectors.find(pair.trial_utterance);
    if (trial == trial_vectors.end()) throw Error(ErrorKind::MissingTrialVector, pair.trial_utterance);
    out.push_back({pair, cosine_score(model->second, trial->second.vector)});
  }
  return out;
}

EnrollmentSets group_by_speaker(std::span<const Embedding> embeddings,
                                const std::map<std::string, std::string> &utt2spk) {
  EnrollmentSets sets;
  for (const Embedding &e : embeddings) {
    const auto it = utt2spk.find(e.utterance_id);
    if (it == utt2spk.end()) throw Error(ErrorKind::OrphanUtterance, e.utterance_id + " has no speaker");
    sets[it->second].push_back(e);
  }
  return sets;
}

EmbeddingIndex index_embeddings(std::span<const Embedding> embeddings) {
  EmbeddingIndex index;
  for (const Embedding &e : embeddings)
    if (!index.emplace(e.utterance_id, e).second) throw Error(ErrorKind::DuplicateUtterance, e.utterance_id);
  return index;
}

TrialCounts count_trials(std::span<const TrialPair> trials) {
  TrialCounts c;
  for (const TrialPair &t : trials) (t.label == TrialLabel::SameSpeaker ? c.same_speaker : c.different_speaker)++;
  return c;
}

std::vector<Embedding> read_embeddings(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::MissingFile, "cannot open " + path.string());
  std::vector<char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::vector<Embedding> out;
  if (bytes.size() >= 8 && std::equal(kBinaryMagic, kBinaryMagic + 8, bytes.begin())) {
    out = read_binary_embeddings(bytes, path);
  } else {
    std::set<std::string> seen;
    for_each_record(path, [&](std::size_t line, const std::vector<std::string_view> &f) {
      if (f.size() < 2) throw_malformed(path, line, "expected an utterance id and at least one value");
      Embedding e;
      e.utterance_id = std::string(f[0]);
      if (!seen.insert(e.utterance_id).second)
        throw Error(ErrorKind::DuplicateUtterance, path.string() + ":" + std::to_string(line) + ": " + e.utterance_id);
      e.vector.resize(Eigen::Index(f.size() - 1));
      for (std::size_t k = 1; k < f.size(); ++k) e.vector[Eigen::Index(k - 1)] = parse_double(f[k], path, line);
      out.push_back(std::move(e));
    });
  }
  check_dimensions(out, path.string());
  return out;
}

void write_embeddings_text(std::span<const Embedding> embeddings, const std::filesystem::path &path) {
  std::string text;
  char buf[64];
  for (const Embedding &e : embeddings) {
    text += e.utterance_id;
    for (double v : e.vector) {
      std::snprintf(buf, sizeof buf, " %.17g", v);
      text += buf;
    }
    text += '\n';
  }
  write_text_file(path, text);
}

void write_embeddings_binary(std::span<const Embedding> embeddings, const std::filesystem::path &path) {
  check_dimensions(embeddings, path.string());
  std::string out(kBinaryMagic, 8);
  auto put = [&out](std::uint64_t v, int bytes) {
    for (int i = 0; i < bytes; ++i) out.push_back(char((v >> (8 * i)) & 0xff));
  };
  put(embeddings.empty() ? 0 : std::uint64_t(embeddings.front().vector.size()), 4);
  put(embeddings.size(), 4);
  for (const Embedding &e : embeddings) {
    if (e.utterance_id.size() > 0xffff) throw Error(ErrorKind::InvalidArgument, "utterance id too long");
    put(e.utterance_id.size(), 2);
    out += e.utterance_id;
    for (double v : e.vector) {
      std::uint64_t bits;
      std::memcpy(&bits, &v, 8);
      put(bits, 8);
    }
  }
  write_text_file(path, out);
}

std::vector<TrialPair> read_trials(const std::filesystem::path &path) {
  std::vector<TrialPair> trials;
  std::set<std::pair<std::string, std::string>> seen;
  for_each_record(path, [&](std::size_t line, const std::vector<std::string_view> &f) {
    if (f.size() != 3) throw_malformed(path, line, "expected '<enroll_speaker> <trial_utterance> <target|nontarget>'");
    TrialPair t{std::string(f[0]), std::string(f[1]), TrialLabel::DifferentSpeaker};
    if (f[2] == "target")
      t.label = TrialLabel::SameSpeaker;
    else if (f[2] != "nontarget")
      throw_malformed(path, line, "label must be target or nontarget, got '" + std::string(f[2]) + "'");
    if (!seen.emplace(t.enroll_speaker, t.trial_utterance).second)
      throw Error(ErrorKind::DuplicateTrial, path.string() + ":" + std::to_string(line) + ": " + t.enroll_speaker +
                                                 " " + t.trial_utterance);
    trials.push_back(std::move(t));
  });
  return trials;
}

void write_trials(std::span<const TrialPair> trials, const std::filesystem::path &path) {
  std::string text;
  for (const TrialPair &t : trials)
    text += t.enroll_speaker + ' ' + t.trial_utterance + (t.label == TrialLabel::SameSpeaker ? " target\n" : " nontarget\n");
  write_text_file(path, text);
}

std::string format_scores(std::span<const ScoreRecord> scores) {
  std::string text;
  char buf[32];
  for (const ScoreRecord &s : scores) {
    std::snprintf(buf, sizeof buf, " %.6f\n", s.score);
    text += s.pair.enroll_speaker + ' ' + s.pair.trial_utterance + buf;
  }
  return text;
}

void write_scores(std::span<const ScoreRecord> scores, const std::filesystem::path &path) {
  write_text_file(path, format_scores(scores));
}

std::vector<ScoreRecord> read_labeled_scores(const std::filesystem::path &scores_path,
                                             std::span<const TrialPair> trials) {
  std::map<std::pair<std::string, std::string>, TrialLabel> labels;
  for (const TrialPair &t : trials) labels.emplace(std::make_pair(t.enroll_speaker, t.trial_utterance), t.label);
  std::set<std::pair<std::string, std::string>> scored;
  std::vector<ScoreRecord> out;
  for_each_record(scores_path, [&](std::size_t line, const std::vector<std::string_view> &f) {
    if (f.size() != 3) throw_malformed(scores_path, line, "expected '<enroll_speaker> <trial_utterance> <score>'");
    auto key = std::make_pair(std::string(f[0]), std::string(f[1]));
    const auto it = labels.find(key);
    if (it == labels.end()) throw_malformed(scores_path, line, "pair " + key.first + " " + key.second + " is not in the trial list");
    if (!scored.insert(key).second) throw Error(ErrorKind::DuplicateTrial, scores_path.string() + ":" + std::to_string(line));
    out.push_back({{key.first, key.second, it->second}, parse_double(f[2], scores_path, line)});
  });
  if (scored.size() != labels.size())
    throw Error(ErrorKind::MissingTrialVector, std::to_string(labels.size() - scored.size()) +
                                                   " trials have no score in " + scores_path.string());
  return out;
}

}  // namespace voxanon
