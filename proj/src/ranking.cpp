// voxanon/ranking.cpp

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

#include "voxanon/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include "voxanon/error.hpp"
#include "voxanon/line_reader.hpp"
#include "voxanon/version.hpp"

namespace voxanon {

namespace {

std::string fixed2(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

void SystemResult::validate() const {
  auto pct = [this](double v, const char *what) {
    if (!(v >= 0.0 && v <= 100.0))
      throw Error(ErrorKind::InvalidArgument, system_id + ": " + what + " " + std::to_string(v) + " outside [0, 100]");
  };
  pct(eer_dev, "eer_dev");
  pct(eer_eval, "eer_eval");
  pct(uar_dev, "uar_dev");
  pct(uar_eval, "uar_eval");
  if (!(wer_dev >= 0.0 && std::isfinite(wer_dev)) || !(wer_eval >= 0.0 && std::isfinite(wer_eval)))
    throw Error(ErrorKind::InvalidArgument, system_id + ": negative or non-finite WER");
}

bool EerInterval::contains(double eer) const {
  return eer >= lower && (eer < upper || (upper == 100.0 && eer == 100.0));
}

std::string EerInterval::label() const {
  return "[" + std::to_string(int(lower)) + "," + std::to_string(int(upper)) + (upper == 100.0 ? "]" : ")");
}

EerInterval EerInterval::condition(int index) {
  if (index < 1 || index > int(kMinTargetEers.size()))
    throw Error(ErrorKind::InvalidArgument, "condition index " + std::to_string(index));
  const auto i = std::size_t(index - 1);
  const double upper = i + 1 < kMinTargetEers.size() ? kMinTargetEers[i + 1] : 100.0;
  return {index, kMinTargetEers[i], upper};
}

std::vector<int> assign_conditions(const SystemResult &s) {
  std::vector<int> out;
  for (std::size_t i = 0; i < kMinTargetEers.size(); ++i)
    if (s.eer_eval >= kMinTargetEers[i]) out.push_back(int(i + 1));
  return out;
}

std::optional<EerInterval> interval_of(double eer) {
  for (int i = 1; i <= int(kMinTargetEers.size()); ++i) {
    const EerInterval iv = EerInterval::condition(i);
    if (iv.contains(eer)) return iv;
  }
  return std::nullopt;
}

ConditionRanking rank_condition(std::span<const SystemResult> systems, const EerInterval &interval,
                                const RankOptions &options) {
  ConditionRanking out;
  out.interval = interval;
  std::vector<const SystemResult *> members;
  for (const SystemResult &s : systems) {
    if (!interval.contains(s.eer_eval)) continue;
    if (s.role == SystemRole::Submission)
      members.push_back(&s);
    else
      out.references.push_back(s);
  }
  std::sort(out.references.begin(), out.references.end(),
            [](const SystemResult &a, const SystemResult &b) { return a.system_id < b.system_id; });

  auto by_wer = [](const SystemResult *a, const SystemResult *b) {
    return a->wer_eval < b->wer_eval || (a->wer_eval == b->wer_eval && a->system_id < b->system_id);
  };
  auto by_uar = [](const SystemResult *a, const SystemResult *b) {
    return a->uar_eval > b->uar_eval || (a->uar_eval == b->uar_eval && a->system_id < b->system_id);
  };

  if (options.prune_per_team) {
    std::map<std::string, std::vector<const SystemResult *>> teams;
    for (const SystemResult *s : members) teams[s->team].push_back(s);
    std::vector<const SystemResult *> kept;
    for (auto &[team, list] : teams) {
      if (list.size() < 3) {
        kept.insert(kept.end(), list.begin(), list.end());
        continue;
      }
      const SystemResult *best_wer = *std::min_element(list.begin(), list.end(), by_wer);
      const SystemResult *best_uar = *std::min_element(list.begin(), list.end(), by_uar);
      kept.push_back(best_wer);
      if (best_uar != best_wer) kept.push_back(best_uar);
    }
    members = std::move(kept);
  }

  auto fill = [&members](std::vector<RankEntry> &order, auto cmp, auto value) {
    std::vector<const SystemResult *> sorted = members;
    std::sort(sorted.begin(), sorted.end(), cmp);
    int rank = 0;
    for (const SystemResult *s : sorted) order.push_back({s->system_id, ++rank, value(*s)});
  };
  fill(out.wer_order, by_wer, [](const SystemResult &s) { return s.wer_eval; });
  fill(out.uar_order, by_uar, [](const SystemResult &s) { return s.uar_eval; });
  return out;
}

std::vector<ConditionRanking> rank_all_conditions(std::span<const SystemResult> systems, const RankOptions &options) {
  std::vector<ConditionRanking> out;
  for (int i = 1; i <= int(kMinTargetEers.size()); ++i)
    out.push_back(rank_condition(systems, EerInterval::condition(i), options));
  return out;
}

std::string format_ranking_tsv(std::span<const ConditionRanking> rankings) {
  std::string text = "condition\torder\trank\tsystem\tvalue\n";
  for (const ConditionRanking &r : rankings) {
    const std::string cond = r.interval.label();
    for (const RankEntry &e : r.wer_order)
      text += cond + "\tWER\t" + std::to_string(e.rank) + "\t" + e.system_id + "\t" + fixed2(e.value) + "\n";
    for (const RankEntry &e : r.uar_order)
      text += cond + "\tUAR\t" + std::to_string(e.rank) + "\t" + e.system_id + "\t" + fixed2(e.value) + "\n";
    for (const SystemResult &s : r.references) {
      text += cond + "\tWER\t-\t" + s.system_id + "\t" + fixed2(s.wer_eval) + "\n";
      text += cond + "\tUAR\t-\t" + s.system_id + "\t" + fixed2(s.uar_eval) + "\n";
    }
  }
  return text;
}

std::vector<SystemResult> read_system_results(const std::filesystem::path &path) {
  std::vector<SystemResult> out;
  std::set<std::string> seen;
  for_each_record(path, [&](std::size_t line, const std::vector<std::string_view> &f) {
    if (f[0].front() == '#') return;
    if (f.size() != 9)
      throw_malformed(path, line,
                      "expected '<system_id> <team> <role> <eer_dev> <eer_eval> <wer_dev> <wer_eval> <uar_dev> <uar_eval>'");
    SystemResult s;
    s.system_id = std::string(f[0]);
    s.team = std::string(f[1]);
    if (f[2] == "submission")
      s.role = SystemRole::Submission;
    else if (f[2] == "baseline")
      s.role = SystemRole::Baseline;
    else if (f[2] == "original")
      s.role = SystemRole::Original;
    else
      throw_malformed(path, line, "role must be submission, baseline or original");
    double *fields[] = {&s.eer_dev, &s.eer_eval, &s.wer_dev, &s.wer_eval, &s.uar_dev, &s.uar_eval};
    for (std::size_t k = 0; k < 6; ++k) *fields[k] = parse_double(f[3 + k], path, line);
    try {
      s.validate();
    } catch (const Error &e) {
      throw_malformed(path, line, e.what());
    }
    if (!seen.insert(s.system_id).second) throw_malformed(path, line, "duplicate system id " + s.system_id);
    out.push_back(std::move(s));
  });
  return out;
}

std::string format_results_summary(const SummaryConfig &config, std::span<const DatasetMetrics> datasets) {
  std::string text = "# voxanon results summary\n";
  text += std::string("# tool_version: ") + kVersion + "\n";
  if (config.seed) text += "# seed: " + std::to_string(*config.seed) + "\n";
  if (config.alpha_min) text += "# alpha_min: " + fixed2(*config.alpha_min) + "\n";
  if (config.alpha_max) text += "# alpha_max: " + fixed2(*config.alpha_max) + "\n";
  for (const DatasetMetrics &d : datasets) {
    text += "\n[" + d.name + "]\n";
    if (d.eer) text += "EER=" + fixed2(*d.eer) + "\n";
    if (d.wer) text += "WER=" + fixed2(*d.wer) + "\n";
    if (d.uar) text += "UAR=" + fixed2(*d.uar) + "\n";
  }
  return text;
}

void emit_results_summary(const std::filesystem::path &path, const SummaryConfig &config,
                          std::span<const DatasetMetrics> datasets) {
  write_text_file(path, format_results_summary(config, datasets));
}

std::vector<DatasetMetrics> summary_blocks(std::span<const SystemResult> systems) {
  std::vector<DatasetMetrics> out;
  for (const SystemResult &s : systems) {
    out.push_back({s.system_id + "/dev", s.eer_dev, s.wer_dev, s.uar_dev});
    out.push_back({s.system_id + "/eval", s.eer_eval, s.wer_eval, s.uar_eval});
  }
  return out;
}

}  // namespace voxanon
