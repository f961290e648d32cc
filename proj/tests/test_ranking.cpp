// tests/test_ranking.cpp

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

#include "doctest.h"

#include <algorithm>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "scratch.hpp"
#include "voxanon/error.hpp"
#include "voxanon/ranking.hpp"
#include "voxanon/version.hpp"

using namespace voxanon;

namespace {

SystemResult sys(std::string id, std::string team, double eer, double wer, double uar,
                 SystemRole role = SystemRole::Submission) {
  return {std::move(id), std::move(team), role, eer, eer, wer, wer, uar, uar};
}

std::vector<std::string> ids(const std::vector<RankEntry> &order) {
  std::vector<std::string> out;
  for (const RankEntry &e : order) out.push_back(e.system_id);
  return out;
}

using Table = std::map<std::string, std::pair<std::vector<std::string>, std::vector<std::string>>>;

Table table_of(const std::vector<ConditionRanking> &rankings) {
  Table t;
  for (const ConditionRanking &r : rankings) t[r.interval.label()] = {ids(r.wer_order), ids(r.uar_order)};
  return t;
}

}  // namespace

TEST_CASE("condition gating and intervals") {
  CHECK(assign_conditions(sys("B5", "org", 34.34, 4.37, 38.17)) == std::vector<int>{1, 2, 3});
  CHECK(interval_of(34.34)->label() == "[30,40)");
  CHECK(assign_conditions(sys("orig", "org", 4.59, 1.85, 71.06)).empty());
  CHECK_FALSE(interval_of(4.59).has_value());
  CHECK(interval_of(10.0)->label() == "[10,20)");
  CHECK(interval_of(19.999)->label() == "[10,20)");
  CHECK(interval_of(20.0)->label() == "[20,30)");
  CHECK(interval_of(100.0)->label() == "[40,100]");
  CHECK(assign_conditions(sys("x", "t", 40.0, 1, 1)) == std::vector<int>{1, 2, 3, 4});

  // Gating agrees with the bracket's lower edge everywhere.
  for (int k = 0; k <= 10000; ++k) {
    const double eer = k / 100.0;
    const auto conds = assign_conditions(sys("x", "t", eer, 1, 1));
    const auto iv = interval_of(eer);
    if (!iv) {
      CHECK(conds.empty());
      continue;
    }
    CHECK(iv->contains(eer));
    CHECK(conds.size() == std::size_t(iv->index));
    for (int c : conds) CHECK(iv->lower >= kMinTargetEers[std::size_t(c - 1)]);
  }
  CHECK_THROWS_AS(EerInterval::condition(5), Error);
}

TEST_CASE("published baselines land in the published intervals") {
  const std::vector<SystemResult> baselines{
      sys("B3", "org", 27.32, 4.35, 37.57), sys("B4", "org", 30.26, 5.90, 42.78),
      sys("B5", "org", 34.34, 4.37, 38.17), sys("B6", "org", 21.14, 9.09, 36.13)};
  CHECK(interval_of(27.32)->label() == "[20,30)");
  CHECK(interval_of(30.26)->label() == "[30,40)");
  CHECK(interval_of(21.14)->label() == "[20,30)");
  const auto r = rank_condition(baselines, EerInterval::condition(2));
  CHECK(ids(r.wer_order) == std::vector<std::string>{"B3", "B6"});
  CHECK(r.wer_order[0].value == doctest::Approx(4.35));
  CHECK(r.wer_order[1].value == doctest::Approx(9.09));

  // The 4.35-before-5.90 ordering inside one bracket, with EERs moved there.
  const std::vector<SystemResult> pair{sys("B4", "org", 25.0, 5.90, 42.78), sys("B3", "org", 25.0, 4.35, 37.57)};
  CHECK(ids(rank_condition(pair, EerInterval::condition(2)).wer_order) == std::vector<std::string>{"B3", "B4"});

  const std::vector<SystemResult> single{sys("only", "t", 15, 3, 40)};
  const auto s = rank_condition(single, EerInterval::condition(1));
  CHECK(s.wer_order.at(0).rank == 1);
  CHECK(s.uar_order.at(0).rank == 1);
}

TEST_CASE("six-team layout matches the hand-computed table") {
  const std::vector<SystemResult> systems{
      sys("a", "T1", 12, 5, 50), sys("b", "T1", 25, 7, 45), sys("c", "T2", 15, 4, 40),
      sys("d", "T2", 35, 9, 38), sys("e", "T3", 22, 6, 52), sys("f", "T3", 45, 20, 30),
      sys("g", "T4", 28, 6, 48), sys("h", "T5", 33, 8, 38), sys("i", "T6", 8, 2, 60),
      sys("B2", "org", 4.52, 9.95, 53.49, SystemRole::Baseline),
      sys("B6", "org", 21.14, 9.09, 36.13, SystemRole::Baseline),
      sys("orig", "org", 4.59, 1.85, 71.06, SystemRole::Original)};
  const auto rankings = rank_all_conditions(systems);
  REQUIRE(rankings.size() == 4);
  const Table expected{
      {"[10,20)", {{"c", "a"}, {"a", "c"}}},
      {"[20,30)", {{"e", "g", "b"}, {"e", "g", "b"}}},  // e/g tie on WER, id decides
      {"[30,40)", {{"h", "d"}, {"d", "h"}}},            // d/h tie on UAR, id decides
      {"[40,100]", {{"f"}, {"f"}}}};
  CHECK(table_of(rankings) == expected);
  CHECK(rankings[1].references.size() == 1);
  CHECK(rankings[1].references[0].system_id == "B6");
  for (const ConditionRanking &r : rankings)
    for (std::size_t k = 0; k < r.wer_order.size(); ++k) CHECK(r.wer_order[k].rank == int(k + 1));

  const std::string tsv = format_ranking_tsv(rankings);
  CHECK(tsv.starts_with("condition\torder\trank\tsystem\tvalue\n"));
  CHECK(tsv.find("[20,30)\tWER\t1\te\t6.00\n") != std::string::npos);
  CHECK(tsv.find("[20,30)\tWER\t-\tB6\t9.09\n") != std::string::npos);
  CHECK(tsv.find("\ti\t") == std::string::npos);
}

TEST_CASE("per-team pruning keeps the best WER and best UAR system") {
  const std::vector<SystemResult> systems{
      sys("x1", "X", 25, 3, 40), sys("x2", "X", 25, 5, 60), sys("x3", "X", 25, 4, 50), sys("x4", "X", 25, 6, 30),
      sys("y1", "Y", 25, 3.5, 55), sys("y2", "Y", 25, 7, 20)};
  const auto full = rank_condition(systems, EerInterval::condition(2));
  CHECK(full.wer_order.size() == 6);
  const auto pruned = rank_condition(systems, EerInterval::condition(2), {.prune_per_team = true});
  CHECK(ids(pruned.wer_order) == std::vector<std::string>{"x1", "y1", "x2", "y2"});
  CHECK(ids(pruned.uar_order) == std::vector<std::string>{"x2", "y1", "x1", "y2"});
}

TEST_CASE("rank stability and monotonicity") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> eer(0, 60), wer(1, 30), uar(20, 80);
  for (int t = 0; t < 300; ++t) {
    std::vector<SystemResult> systems;
    for (int k = 0; k < 12; ++k)
      systems.push_back(sys("s" + std::to_string(k), "T" + std::to_string(k % 4), eer(rng), wer(rng), uar(rng)));
    const auto base = table_of(rank_all_conditions(systems));

    auto more = systems;
    more.push_back(sys("zz", "T9", std::uniform_real_distribution<double>(0, 9.99)(rng), 0.1, 99));
    CHECK(table_of(rank_all_conditions(more)) == base);

    const std::size_t k = std::size_t(t % 12);
    const auto iv = interval_of(systems[k].eer_eval);
    if (!iv) continue;
    auto rank_of = [&](const std::vector<SystemResult> &s) {
      for (const RankEntry &e : rank_condition(s, *iv).wer_order)
        if (e.system_id == systems[k].system_id) return e.rank;
      return -1;
    };
    auto better = systems;
    better[k].wer_eval *= 0.5;
    CHECK(rank_of(better) <= rank_of(systems));
  }
}

TEST_CASE("system result files") {
  scratch::Dir dir("ranking_results");
  scratch::write(dir / "results",
                 "# id team role eer_dev eer_eval wer_dev wer_eval uar_dev uar_eval\n"
                 "B2 org baseline 7.48 4.52 10.44 9.95 55.61 53.49\n"
                 "s1 T1 submission 25 27 5 6 50 51\n");
  const auto r = read_system_results(dir / "results");
  REQUIRE(r.size() == 2);
  CHECK(r[0].role == SystemRole::Baseline);
  CHECK(r[1].uar_eval == 51.0);
  scratch::write(dir / "bad", "s1 T1 submission 25 270 5 6 50 51\n");
  CHECK_THROWS_WITH_AS(read_system_results(dir / "bad"), doctest::Contains(":1:"), Error);
  scratch::write(dir / "dup", "s1 T1 submission 25 27 5 6 50 51\ns1 T1 submission 25 27 5 6 50 51\n");
  CHECK_THROWS_AS(read_system_results(dir / "dup"), Error);
}

TEST_CASE("results summary") {
  const std::string empty = format_results_summary({}, {});
  CHECK(empty == std::string("# voxanon results summary\n# tool_version: ") + kVersion + "\n");

  const std::vector<SystemResult> b2{sys("B2", "org", 0, 0, 0, SystemRole::Baseline)};
  auto blocks = summary_blocks(b2);
  blocks[0].eer = 7.48;
  blocks[0].wer = 10.44;
  blocks[0].uar = 55.61;
  const SummaryConfig cfg{42, 0.5, 0.9};
  const std::string text = format_results_summary(cfg, blocks);
  CHECK(text.find("[B2/dev]\nEER=7.48\nWER=10.44\nUAR=55.61\n") != std::string::npos);
  CHECK(text.find("# seed: 42\n# alpha_min: 0.50\n# alpha_max: 0.90\n") != std::string::npos);

  scratch::Dir dir("ranking_summary");
  emit_results_summary(dir / "a", cfg, blocks);
  emit_results_summary(dir / "b", cfg, blocks);
  CHECK(scratch::slurp(dir / "a") == scratch::slurp(dir / "b"));
  CHECK(scratch::slurp(dir / "a") == text);
}
