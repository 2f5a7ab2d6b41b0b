// Copyright 2026 The vqlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <map>
#include <set>

#include "oracles.hpp"
#include "vqlab/nsga2.hpp"

using namespace vqlab;

namespace {

std::vector<Individual> population_from(
    const std::vector<std::vector<double>>& objectives) {
  std::vector<Individual> pop(objectives.size());
  for (std::size_t i = 0; i < objectives.size(); ++i) {
    pop[i].objectives = objectives[i];
  }
  return pop;
}

BatchEvaluator toy_evaluator() {
  return [](const std::vector<std::vector<double>>& batch) {
    std::vector<std::optional<std::array<double, 2>>> out(batch.size());
    for (std::size_t i = 0; i < batch.size(); ++i) {
      const double g = batch[i][0];
      out[i] = std::array<double, 2>{g * g, (g - 2.0) * (g - 2.0)};
    }
    return out;
  };
}

}  // namespace

TEST_CASE("dominance is component-wise with strictness") {
  CHECK(dominates({0.0, 0.0}, {1.0, 1.0}));
  CHECK_FALSE(dominates({0.0, 2.0}, {1.0, 1.0}));
  CHECK_FALSE(dominates({1.0, 1.0}, {0.0, 2.0}));
  CHECK_FALSE(dominates({1.0, 1.0}, {1.0, 1.0}));
  CHECK(dominates({1.0, 0.5}, {1.0, 1.0}));
  CHECK_THROWS_AS(dominates({1.0}, {1.0, 2.0}), ShapeError);
}

TEST_CASE("non-dominated sorting matches the worked example") {
  auto pop = population_from({{0, 0}, {1, 1}, {0, 2}, {2, 0}});
  const auto fronts = fast_nondominated_sort(pop);
  REQUIRE(fronts.size() == 2);
  CHECK(fronts[0] == std::vector<std::size_t>{0});
  CHECK(std::set<std::size_t>(fronts[1].begin(), fronts[1].end()) ==
        std::set<std::size_t>{1, 2, 3});
  CHECK(pop[0].rank == 0);
  CHECK(pop[1].rank == 1);
}

TEST_CASE("identical objectives collapse into a single front") {
  auto pop = population_from({{1, 1}, {1, 1}, {1, 1}});
  const auto fronts = fast_nondominated_sort(pop);
  REQUIRE(fronts.size() == 1);
  CHECK(fronts[0].size() == 3);
}

TEST_CASE("a dominance chain yields singleton fronts") {
  auto pop = population_from({{0, 0}, {1, 1}, {2, 2}});
  const auto fronts = fast_nondominated_sort(pop);
  REQUIRE(fronts.size() == 3);
  for (const auto& front : fronts) CHECK(front.size() == 1);
}

TEST_CASE("sorting agrees with the brute-force oracle on random populations") {
  SplitMix64 rng(321);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng.next_index(30);
    std::vector<std::vector<double>> objectives(n);
    for (auto& o : objectives) {
      // small integer grid provokes plenty of ties
      o = {static_cast<double>(rng.next_index(5)),
           static_cast<double>(rng.next_index(5))};
    }
    auto pop = population_from(objectives);
    const auto fronts = fast_nondominated_sort(pop);
    const auto expected = oracle::nondominated_fronts(objectives);
    REQUIRE(fronts.size() == expected.size());
    for (std::size_t f = 0; f < fronts.size(); ++f) {
      CHECK(std::set<std::size_t>(fronts[f].begin(), fronts[f].end()) ==
            std::set<std::size_t>(expected[f].begin(), expected[f].end()));
    }
  }
}

TEST_CASE("crowding distance boundary and interior rules") {
  SECTION("two members are both boundaries") {
    auto pop = population_from({{0, 1}, {1, 0}});
    const std::vector<std::size_t> front = {0, 1};
    const auto d = crowding_distance(front, pop);
    CHECK(std::isinf(d[0]));
    CHECK(std::isinf(d[1]));
  }

  SECTION("three evenly spaced points give the middle 2.0") {
    auto pop = population_from({{0, 2}, {1, 1}, {2, 0}});
    const std::vector<std::size_t> front = {0, 1, 2};
    const auto d = crowding_distance(front, pop);
    CHECK(std::isinf(d[0]));
    CHECK(d[1] == Catch::Approx(2.0));
    CHECK(std::isinf(d[2]));
  }

  SECTION("a constant objective contributes nothing") {
    auto pop = population_from({{0, 5}, {1, 5}, {2, 5}});
    const std::vector<std::size_t> front = {0, 1, 2};
    const auto d = crowding_distance(front, pop);
    CHECK(d[1] == Catch::Approx(1.0));  // only the varying objective counts
  }

  SECTION("empty front is rejected") {
    auto pop = population_from({{0, 0}});
    CHECK_THROWS_AS(crowding_distance({}, pop), ConfigError);
  }
}

TEST_CASE("sbx with u = 0.5 reproduces the parents") {
  const auto [c1, c2] = sbx_gene(1.25, 3.5, 0.5, 15.0);
  CHECK(c1 == Catch::Approx(1.25).margin(1e-12));
  CHECK(c2 == Catch::Approx(3.5).margin(1e-12));
}

TEST_CASE("sbx preserves the parent midpoint") {
  SplitMix64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const double p1 = 10.0 * rng.next_double() - 5.0;
    const double p2 = 10.0 * rng.next_double() - 5.0;
    const auto [c1, c2] = sbx_gene(p1, p2, rng.next_double(), 15.0);
    CHECK(c1 + c2 == Catch::Approx(p1 + p2).margin(1e-9));
  }
}

TEST_CASE("polynomial mutation respects the box") {
  SplitMix64 rng(6);
  for (int trial = 0; trial < 1000; ++trial) {
    const double lo = -2.0, hi = 3.0;
    const double x = lo + (hi - lo) * rng.next_double();
    const double y = polynomial_mutate_gene(x, lo, hi, rng.next_double(), 20.0);
    CHECK(y >= lo);
    CHECK(y <= hi);
  }

  SECTION("pinned gene stays put") {
    CHECK(polynomial_mutate_gene(1.0, 1.0, 1.0, 0.3, 20.0) == 1.0);
  }
}

TEST_CASE("the toy biobjective front spans the analytic pareto set") {
  Bounds bounds{{{-5.0, 5.0}}};
  NsgaConfig cfg;
  cfg.pop_size = 40;
  cfg.generations = 50;
  cfg.seed = 42;
  const ParetoFront front = evolve(toy_evaluator(), bounds, cfg);

  REQUIRE(front.members.size() >= 10);
  double lo = 1e9, hi = -1e9;
  for (const auto& m : front.members) {
    lo = std::min(lo, m.genes[0]);
    hi = std::max(hi, m.genes[0]);
    CHECK(m.genes[0] >= -5.0);
    CHECK(m.genes[0] <= 5.0);
  }
  CHECK(lo <= 0.1);
  CHECK(hi >= 1.9);

  SECTION("returned front is pairwise non-dominated") {
    for (const auto& a : front.members) {
      for (const auto& b : front.members) {
        CHECK_FALSE(dominates(a.objectives, b.objectives));
      }
    }
  }

  SECTION("same seed reproduces the front bit for bit") {
    const ParetoFront again = evolve(toy_evaluator(), bounds, cfg);
    REQUIRE(again.members.size() == front.members.size());
    for (std::size_t i = 0; i < front.members.size(); ++i) {
      CHECK(again.members[i].genes == front.members[i].genes);
      CHECK(again.members[i].objectives == front.members[i].objectives);
    }
  }

  SECTION("different seeds explore differently") {
    NsgaConfig other = cfg;
    other.seed = 43;
    const ParetoFront variant = evolve(toy_evaluator(), bounds, other);
    bool any_difference = variant.members.size() != front.members.size();
    for (std::size_t i = 0;
         !any_difference && i < std::min(variant.members.size(),
                                         front.members.size());
         ++i) {
      any_difference = variant.members[i].genes != front.members[i].genes;
    }
    CHECK(any_difference);
  }
}

TEST_CASE("genes remain inside their bounds throughout evolution") {
  BatchEvaluator eval = [](const std::vector<std::vector<double>>& batch) {
    std::vector<std::optional<std::array<double, 2>>> out(batch.size());
    for (std::size_t i = 0; i < batch.size(); ++i) {
      for (double g : batch[i]) {
        REQUIRE(g >= 0.25);
        REQUIRE(g <= 0.75);
      }
      out[i] = std::array<double, 2>{batch[i][0], batch[i][1]};
    }
    return out;
  };
  Bounds bounds{{{0.25, 0.75}, {0.25, 0.75}}};
  NsgaConfig cfg;
  cfg.pop_size = 16;
  cfg.generations = 10;
  cfg.seed = 9;
  const ParetoFront front = evolve(eval, bounds, cfg);
  CHECK_FALSE(front.members.empty());
}

TEST_CASE("degenerate equal bounds pin a gene") {
  BatchEvaluator eval = [](const std::vector<std::vector<double>>& batch) {
    std::vector<std::optional<std::array<double, 2>>> out(batch.size());
    for (std::size_t i = 0; i < batch.size(); ++i) {
      REQUIRE(batch[i][0] == 1.5);
      out[i] = std::array<double, 2>{batch[i][1], -batch[i][1]};
    }
    return out;
  };
  Bounds bounds{{{1.5, 1.5}, {0.0, 1.0}}};
  NsgaConfig cfg;
  cfg.pop_size = 8;
  cfg.generations = 5;
  cfg.seed = 1;
  const ParetoFront front = evolve(eval, bounds, cfg);
  for (const auto& m : front.members) CHECK(m.genes[0] == 1.5);
}

TEST_CASE("failed evaluations are flagged worst and the run continues") {
  BatchEvaluator eval = [](const std::vector<std::vector<double>>& batch) {
    std::vector<std::optional<std::array<double, 2>>> out(batch.size());
    for (std::size_t i = 0; i < batch.size(); ++i) {
      const double g = batch[i][0];
      if (g < 0.0) continue;  // failure
      out[i] = std::array<double, 2>{g * g, (g - 2.0) * (g - 2.0)};
    }
    return out;
  };
  Bounds bounds{{{-5.0, 5.0}}};
  NsgaConfig cfg;
  cfg.pop_size = 20;
  cfg.generations = 20;
  cfg.seed = 3;
  const ParetoFront front = evolve(eval, bounds, cfg);
  REQUIRE_FALSE(front.members.empty());
  for (const auto& m : front.members) {
    CHECK(m.genes[0] >= 0.0);
    CHECK_FALSE(m.failed);
  }
}

TEST_CASE("duplicate genomes are evaluated only once") {
  std::map<std::vector<std::int64_t>, int> eval_counts;
  BatchEvaluator eval = [&](const std::vector<std::vector<double>>& batch) {
    std::vector<std::optional<std::array<double, 2>>> out(batch.size());
    for (std::size_t i = 0; i < batch.size(); ++i) {
      ++eval_counts[quantized_gene_key(batch[i])];
      const double g = batch[i][0];
      out[i] = std::array<double, 2>{g * g, (g - 2.0) * (g - 2.0)};
    }
    return out;
  };
  Bounds bounds{{{-5.0, 5.0}}};
  NsgaConfig cfg;
  cfg.pop_size = 16;
  cfg.generations = 15;
  cfg.seed = 11;
  evolve(eval, bounds, cfg);
  for (const auto& [key, count] : eval_counts) CHECK(count == 1);
}

TEST_CASE("configuration is validated") {
  Bounds bounds{{{0.0, 1.0}}};
  NsgaConfig cfg;
  cfg.pop_size = 5;  // odd
  CHECK_THROWS_AS(evolve(toy_evaluator(), bounds, cfg), ConfigError);
  cfg.pop_size = 2;  // too small
  CHECK_THROWS_AS(evolve(toy_evaluator(), bounds, cfg), ConfigError);
  Bounds bad{{{1.0, 0.0}}};
  cfg.pop_size = 8;
  CHECK_THROWS_AS(evolve(toy_evaluator(), bad, cfg), ConfigError);
  CHECK_THROWS_AS(evolve(toy_evaluator(), Bounds{}, cfg), ConfigError);
}
