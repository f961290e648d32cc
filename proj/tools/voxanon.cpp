// tools/voxanon.cpp

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

// Command-line front end. Every subcommand prints KEY=value lines on stdout
// (or a table with --table) and exits 0 on success, 2 on a parse error,
// 3 on a violated precondition and 4 on an I/O failure.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "voxanon/asv_scoring.hpp"
#include "voxanon/audio_io.hpp"
#include "voxanon/error.hpp"
#include "voxanon/line_reader.hpp"
#include "voxanon/manifest.hpp"
#include "voxanon/mcadams.hpp"
#include "voxanon/metrics.hpp"
#include "voxanon/parallel.hpp"
#include "voxanon/ranking.hpp"
#include "voxanon/toy_embedding.hpp"
#include "voxanon/version.hpp"

namespace fs = std::filesystem;
using namespace voxanon;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitIo = 4;

// Utterances held in memory at once while anonymizing.
constexpr std::size_t kChunk = 64;

struct Options {
  std::uint64_t seed = 0;
  double alpha_min = 0.5;
  double alpha_max = 0.9;
  int lpc_order = 20;
  unsigned workers = default_workers();
  bool strict = true;
  bool table = false;
  bool match_energy = false;
  bool binary = false;
  bool prune = false;
  bool strip_punctuation = false;
  fs::path data_dir, out_dir, out, scores, trials, ref, hyp, emotions, results, root;
  fs::path enroll, trial_embeddings;
  std::vector<std::string> blocks;
};

std::string fixed(double v, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

/// Collects KEY=value pairs and prints them either as lines or as a table.
class Report {
 public:
  explicit Report(bool table) : table_(table) {}
  void add(std::string key, std::string value) { rows_.emplace_back(std::move(key), std::move(value)); }
  ~Report() {
    std::size_t width = 0;
    for (const auto &[k, v] : rows_) width = std::max(width, k.size());
    for (const auto &[k, v] : rows_) {
      if (table_)
        std::cout << k << std::string(width - k.size() + 2, ' ') << v << '\n';
      else
        std::cout << k << '=' << v << '\n';
    }
  }

 private:
  bool table_;
  std::vector<std::pair<std::string, std::string>> rows_;
};

// Output files may name directories that do not exist yet.
const fs::path &output_file(const fs::path &p) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  return p;
}

McAdamsConfig mcadams_config(const Options &o) {
  McAdamsConfig cfg;
  cfg.alpha_min = o.alpha_min;
  cfg.alpha_max = o.alpha_max;
  cfg.lpc_order = o.lpc_order;
  cfg.master_seed = o.seed;
  cfg.match_energy = o.match_energy;
  cfg.validate();
  return cfg;
}

int cmd_anonymize(const Options &o) {
  const McAdamsConfig cfg = mcadams_config(o);
  const DataDir in = load_data_dir(o.data_dir);
  fs::create_directories(o.out_dir);

  std::vector<std::string> utts;
  for (const auto &[utt, path] : in.wav_index) utts.push_back(utt);

  std::string alpha_log;
  Eigen::Index frames = 0, passthrough = 0;
  std::size_t clipped = 0;
  for (std::size_t start = 0; start < utts.size(); start += kChunk) {
    const std::size_t end = std::min(utts.size(), start + kChunk);
    std::vector<BatchItem> items(end - start);
    parallel_for(items.size(), o.workers, [&](std::size_t i) {
      const std::string &utt = utts[start + i];
      try {
        items[i] = {utt, read_wav(in.wav_path(utt))};
      } catch (const Error &e) {
        throw Error(e.kind(), "utterance " + utt + ": " + e.what());
      }
    });
    const auto results = anonymize_batch(items, cfg, o.workers);
    parallel_for(items.size(), o.workers, [&](std::size_t i) {
      write_wav(results[i].waveform, o.out_dir / (items[i].utterance_id + ".wav"));
    });
    for (std::size_t i = 0; i < items.size(); ++i) {
      alpha_log += items[i].utterance_id + ' ' + fixed(results[i].alpha, 9) + '\n';
      frames += results[i].frames;
      passthrough += results[i].passthrough_frames;
      if (results[i].peak_before_clamp > 1.0) ++clipped;
    }
  }

  DataDir out = in;
  out.root = o.out_dir;
  for (auto &[utt, path] : out.wav_index) path = utt + ".wav";
  save_data_dir(out, o.out_dir);
  write_text_file(o.out_dir / "utt2alpha", alpha_log);

  Report r(o.table);
  r.add("UTTERANCES", std::to_string(utts.size()));
  r.add("FRAMES", std::to_string(frames));
  r.add("PASSTHROUGH_FRAMES", std::to_string(passthrough));
  r.add("CLIPPED_UTTERANCES", std::to_string(clipped));
  return 0;
}

int cmd_embed(const Options &o) {
  const DataDir in = load_data_dir(o.data_dir);
  std::vector<std::string> utts;
  for (const auto &[utt, path] : in.wav_index) utts.push_back(utt);
  std::vector<Embedding> embs(utts.size());
  parallel_for(utts.size(), o.workers, [&](std::size_t i) {
    try {
      embs[i] = {utts[i], toy_embedding(read_wav(in.wav_path(utts[i])), o.lpc_order)};
    } catch (const Error &e) {
      throw Error(e.kind(), "utterance " + utts[i] + ": " + e.what());
    }
  });
  if (o.binary)
    write_embeddings_binary(embs, output_file(o.out));
  else
    write_embeddings_text(embs, output_file(o.out));
  Report r(o.table);
  r.add("EMBEDDINGS", std::to_string(embs.size()));
  r.add("DIMENSION", std::to_string(embs.empty() ? 0 : embs.front().vector.size()));
  return 0;
}

int cmd_score_asv(const Options &o) {
  const DataDir enroll_dir = load_data_dir(o.data_dir);
  const auto enroll = read_embeddings(o.enroll);
  const auto trial_vectors = index_embeddings(read_embeddings(o.trial_embeddings));
  const auto trials = read_trials(o.trials);
  const auto scores = score_trials(group_by_speaker(enroll, enroll_dir.utt2spk), trials, trial_vectors);
  write_scores(scores, output_file(o.scores));
  const TrialCounts c = count_trials(trials);
  Report r(o.table);
  r.add("TRIALS", std::to_string(c.total()));
  r.add("TARGET", std::to_string(c.same_speaker));
  r.add("NONTARGET", std::to_string(c.different_speaker));
  return 0;
}

int cmd_eer(const Options &o) {
  const auto trials = read_trials(o.trials);
  const EerResult e = compute_eer(read_labeled_scores(o.scores, trials));
  Report r(o.table);
  r.add("EER", fixed(e.eer_percent));
  r.add("THRESHOLD", fixed(e.threshold, 6));
  return 0;
}

int cmd_wer(const Options &o) {
  const TextNormalization norm{true, o.strip_punctuation};
  const WerReport w = evaluate_wer(read_transcripts(o.ref, norm), read_transcripts(o.hyp, norm), o.workers);
  Report r(o.table);
  r.add("WER", fixed(w.wer_percent));
  r.add("N_SUB", std::to_string(w.total.n_sub));
  r.add("N_DEL", std::to_string(w.total.n_del));
  r.add("N_INS", std::to_string(w.total.n_ins));
  r.add("N_REF", std::to_string(w.total.n_ref));
  return 0;
}

int cmd_uar(const Options &o) {
  const UarReport u = evaluate_uar(read_emotions(o.emotions), o.strict);
  Report r(o.table);
  for (std::size_t f = 0; f < kFolds; ++f) r.add("UAR_FOLD" + std::to_string(f + 1), fixed(u.fold_uar[f]));
  r.add("UAR", fixed(u.average));
  return 0;
}

SummaryConfig summary_config(const Options &o, const CLI::App &sub) {
  SummaryConfig cfg;
  if (sub.count("--seed")) cfg.seed = o.seed;
  if (sub.count("--alpha-min")) cfg.alpha_min = o.alpha_min;
  if (sub.count("--alpha-max")) cfg.alpha_max = o.alpha_max;
  return cfg;
}

int cmd_rank(const Options &o, const CLI::App &sub) {
  const auto systems = read_system_results(o.results);
  const auto rankings = rank_all_conditions(systems, {.prune_per_team = o.prune});
  fs::create_directories(o.out_dir);
  write_text_file(o.out_dir / "ranking.tsv", format_ranking_tsv(rankings));
  emit_results_summary(o.out_dir / "results_summary", summary_config(o, sub), summary_blocks(systems));
  Report r(o.table);
  r.add("SYSTEMS", std::to_string(systems.size()));
  for (const ConditionRanking &c : rankings) {
    std::string ids;
    for (const RankEntry &e : c.wer_order) ids += (ids.empty() ? "" : ",") + e.system_id;
    r.add("CONDITION" + std::to_string(c.interval.index) + "_WER_ORDER", ids.empty() ? "-" : ids);
    ids.clear();
    for (const RankEntry &e : c.uar_order) ids += (ids.empty() ? "" : ",") + e.system_id;
    r.add("CONDITION" + std::to_string(c.interval.index) + "_UAR_ORDER", ids.empty() ? "-" : ids);
  }
  return 0;
}

// --block NAME=FILE, where FILE holds KEY=value lines as printed by the
// metric subcommands. Blocks sharing a name are merged in order given.
int cmd_summarize(const Options &o, const CLI::App &sub) {
  std::vector<DatasetMetrics> blocks;
  for (const std::string &arg : o.blocks) {
    const auto eq = arg.find('=');
    if (eq == std::string::npos || eq == 0)
      throw Error(ErrorKind::InvalidArgument, "--block expects NAME=FILE, got '" + arg + "'");
    const std::string name = arg.substr(0, eq);
    const fs::path file = arg.substr(eq + 1);
    auto it = std::find_if(blocks.begin(), blocks.end(), [&](const DatasetMetrics &d) { return d.name == name; });
    if (it == blocks.end()) it = blocks.insert(blocks.end(), DatasetMetrics{name, {}, {}, {}});
    for_each_record(file, [&](std::size_t line, const std::vector<std::string_view> &f) {
      if (f.size() != 1 || f[0].find('=') == std::string_view::npos) throw_malformed(file, line, "expected KEY=value");
      const std::string_view key = f[0].substr(0, f[0].find('='));
      const std::string_view value = f[0].substr(f[0].find('=') + 1);
      if (key == "EER") it->eer = parse_double(value, file, line);
      if (key == "WER") it->wer = parse_double(value, file, line);
      if (key == "UAR") it->uar = parse_double(value, file, line);
    });
  }
  emit_results_summary(output_file(o.out), summary_config(o, sub), blocks);
  Report r(o.table);
  r.add("BLOCKS", std::to_string(blocks.size()));
  return 0;
}

int cmd_validate_layout(const Options &o) {
  const LayoutReport rep = validate_submission_layout(o.root);
  Report r(o.table);
  r.add("COMPLETE", rep.complete() ? "1" : "0");
  for (const std::string &m : rep.missing) r.add("MISSING", m);
  for (const std::string &e : rep.extra) r.add("EXTRA", e);
  return 0;
}

int cmd_count_trials(const Options &o) {
  const auto trials = read_trials(o.trials);
  Report r(o.table);
  const TrialCounts all = count_trials(trials);
  r.add("TARGET", std::to_string(all.same_speaker));
  r.add("NONTARGET", std::to_string(all.different_speaker));
  if (!o.data_dir.empty()) {
    const DataDir d = load_data_dir(o.data_dir);
    std::vector<TrialPair> female, male;
    for (const TrialPair &t : trials) {
      const auto g = d.spk2gender.find(t.enroll_speaker);
      if (g == d.spk2gender.end()) throw Error(ErrorKind::MissingGender, t.enroll_speaker);
      (g->second == Gender::Female ? female : male).push_back(t);
    }
    const TrialCounts f = count_trials(female), m = count_trials(male);
    r.add("TARGET_F", std::to_string(f.same_speaker));
    r.add("NONTARGET_F", std::to_string(f.different_speaker));
    r.add("TARGET_M", std::to_string(m.same_speaker));
    r.add("NONTARGET_M", std::to_string(m.different_speaker));
  }
  return 0;
}

void add_mcadams_flags(CLI::App *sub, Options &o) {
  sub->add_option("--seed", o.seed, "Master seed for per-utterance alpha draws");
  sub->add_option("--alpha-min", o.alpha_min, "Lower end of the McAdams coefficient range");
  sub->add_option("--alpha-max", o.alpha_max, "Upper end of the McAdams coefficient range");
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"voxanon: McAdams anonymization and privacy/utility scoring"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  Options o;
  auto table = [&](CLI::App *sub) { sub->add_flag("--table", o.table, "Print a human-readable table"); };
  auto workers = [&](CLI::App *sub) {
    sub->add_option("--workers", o.workers, "Worker threads")->check(CLI::PositiveNumber);
  };

  auto *anon = app.add_subcommand("anonymize", "Anonymize every utterance of a data directory");
  anon->add_option("--data-dir", o.data_dir, "Input data directory")->required();
  anon->add_option("--out-dir", o.out_dir, "Output directory for wavs and manifests")->required();
  add_mcadams_flags(anon, o);
  anon->add_option("--lpc-order", o.lpc_order, "LPC order")->check(CLI::PositiveNumber);
  anon->add_flag("--match-energy", o.match_energy, "Match each synthesized frame's energy to its input");
  workers(anon);
  table(anon);

  auto *embed = app.add_subcommand("embed", "Extract toy spectral-envelope embeddings");
  embed->add_option("--data-dir", o.data_dir, "Data directory")->required();
  embed->add_option("--out", o.out, "Embedding file to write")->required();
  embed->add_option("--lpc-order", o.lpc_order, "LPC order")->check(CLI::PositiveNumber);
  embed->add_flag("--binary", o.binary, "Write the binary embedding format");
  workers(embed);
  table(embed);

  auto *score = app.add_subcommand("score-asv", "Cosine-score trials against averaged enrollment vectors");
  score->add_option("--data-dir", o.data_dir, "Enrollment data directory (for utt2spk)")->required();
  score->add_option("--enroll", o.enroll, "Enrollment embeddings")->required();
  score->add_option("--trial-embeddings", o.trial_embeddings, "Trial embeddings")->required();
  score->add_option("--trials", o.trials, "Trial list")->required();
  score->add_option("--scores", o.scores, "Score file to write")->required();
  table(score);

  auto *eer = app.add_subcommand("eer", "Equal error rate of a score file");
  eer->add_option("--scores", o.scores, "Score file")->required();
  eer->add_option("--trials", o.trials, "Trial list with labels")->required();
  table(eer);

  auto *wer = app.add_subcommand("wer", "Corpus word error rate");
  wer->add_option("--ref", o.ref, "Reference transcripts")->required();
  wer->add_option("--hyp", o.hyp, "Hypothesis transcripts")->required();
  wer->add_flag("--strip-punctuation", o.strip_punctuation, "Remove punctuation before scoring");
  workers(wer);
  table(wer);

  auto *uar = app.add_subcommand("uar", "Five-fold unweighted average recall");
  uar->add_option("--emotions", o.emotions, "Emotion predictions")->required();
  uar->add_flag("--strict,!--lenient", o.strict, "Fail on a class missing from a fold (default) or skip it");
  table(uar);

  auto *rank = app.add_subcommand("rank", "Rank systems per minimum-EER condition");
  rank->add_option("--results", o.results, "System results table")->required();
  rank->add_option("--out-dir", o.out_dir, "Directory for ranking.tsv and results_summary")->required();
  rank->add_flag("--prune-per-team", o.prune, "Keep only each team's best-WER and best-UAR systems");
  add_mcadams_flags(rank, o);
  table(rank);

  auto *summarize = app.add_subcommand("summarize", "Assemble a results summary from metric outputs");
  summarize->add_option("--block", o.blocks, "NAME=FILE with KEY=value metric lines")->required();
  summarize->add_option("--out", o.out, "Summary file to write")->required();
  add_mcadams_flags(summarize, o);
  table(summarize);

  auto *layout = app.add_subcommand("validate-layout", "Check a submission directory tree");
  layout->add_option("--root", o.root, "Submission root")->required();
  table(layout);

  auto *count = app.add_subcommand("count-trials", "Count same- and different-speaker trials");
  count->add_option("--trials", o.trials, "Trial list")->required();
  count->add_option("--data-dir", o.data_dir, "Enrollment data directory with spk2gender (per-gender counts)");
  table(count);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }

  try {
    if (*anon) return cmd_anonymize(o);
    if (*embed) return cmd_embed(o);
    if (*score) return cmd_score_asv(o);
    if (*eer) return cmd_eer(o);
    if (*wer) return cmd_wer(o);
    if (*uar) return cmd_uar(o);
    if (*rank) return cmd_rank(o, *rank);
    if (*summarize) return cmd_summarize(o, *summarize);
    if (*layout) return cmd_validate_layout(o);
    if (*count) return cmd_count_trials(o);
  } catch (const Error &e) {
    std::cerr << "voxanon: " << e.what() << '\n';
    switch (e.category()) {
      case ErrorCategory::Parse: return kExitParse;
      case ErrorCategory::Precondition: return kExitPrecondition;
      case ErrorCategory::Io: return kExitIo;
    }
  } catch (const fs::filesystem_error &e) {
    std::cerr << "voxanon: " << e.what() << '\n';
    return kExitIo;
  }
  return 1;
}
