// voxanon/ranking.hpp

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

// Minimum-target-EER conditions, per-condition utility rankings and the
// results-summary file.

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace voxanon {

enum class SystemRole { Submission, Baseline, Original };

struct SystemResult {
  std::string system_id;
  std::string team;
  SystemRole role = SystemRole::Submission;
  double eer_dev = 0, eer_eval = 0;
  double wer_dev = 0, wer_eval = 0;
  double uar_dev = 0, uar_eval = 0;

  /// EER and UAR in [0, 100], WER >= 0 (it may exceed 100).
  void validate() const;
};

inline constexpr std::array<double, 4> kMinTargetEers = {10.0, 20.0, 30.0, 40.0};

/// Ranking bracket [lower, upper) for condition `index` (1-based). The last
/// bracket also holds EER == 100.
struct EerInterval {
  int index = 1;
  double lower = 10;
  double upper = 20;

  bool contains(double eer) const;
  std::string label() const;
  static EerInterval condition(int index);
};

/// 1-based indices i with eer_eval >= EER_i.
std::vector<int> assign_conditions(const SystemResult &s);

/// Bracket containing eer, or nothing below the first minimum target.
std::optional<EerInterval> interval_of(double eer);

struct RankEntry {
  std::string system_id;
  int rank = 0;
  double value = 0;
};

struct ConditionRanking {
  EerInterval interval;
  std::vector<RankEntry> wer_order;  // increasing evaluation WER
  std::vector<RankEntry> uar_order;  // decreasing evaluation UAR
  // Baselines and original data falling in this bracket, unranked.
  std::vector<SystemResult> references;
};

struct RankOptions {
  // With three or more submissions from one team in a condition, keep only
  // that team's lowest-WER and highest-UAR systems.
  bool prune_per_team = false;
};

/// Ranks the submissions whose evaluation EER lies in the interval. Ties
/// are broken by system id.
ConditionRanking rank_condition(std::span<const SystemResult> systems, const EerInterval &interval,
                                const RankOptions &options = {});

std::vector<ConditionRanking> rank_all_conditions(std::span<const SystemResult> systems,
                                                  const RankOptions &options = {});

/// Tab-separated export: condition, order, rank, system, value. Reference
/// rows carry "-" as rank.
std::string format_ranking_tsv(std::span<const ConditionRanking> rankings);

/// "<system_id> <team> <submission|baseline|original> <eer_dev> <eer_eval>
///  <wer_dev> <wer_eval> <uar_dev> <uar_eval>" per line, '#' comments.
std::vector<SystemResult> read_system_results(const std::filesystem::path &path);

struct DatasetMetrics {
  std::string name;
  std::optional<double> eer;
  std::optional<double> wer;
  std::optional<double> uar;
};

struct SummaryConfig {
  std::optional<std::uint64_t> seed;
  std::optional<double> alpha_min;
  std::optional<double> alpha_max;
};

/// Header with the tool version and configuration, then one block per
/// dataset with its metrics as percentages to two decimals.
std::string format_results_summary(const SummaryConfig &config, std::span<const DatasetMetrics> datasets);

void emit_results_summary(const std::filesystem::path &path, const SummaryConfig &config,
                          std::span<const DatasetMetrics> datasets);

/// Dev and eval metric blocks for every system, named "<id>/dev" and "<id>/eval".
std::vector<DatasetMetrics> summary_blocks(std::span<const SystemResult> systems);

}  // namespace voxanon
