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
//
// Elitist non-dominated sorting genetic algorithm (two objectives,
// minimization convention) with simulated binary crossover and polynomial
// mutation. The random stream is consumed only in the sequential
// selection/variation phase; candidate evaluation may run in parallel
// without affecting results.

#ifndef VQLAB_NSGA2_HPP_
#define VQLAB_NSGA2_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <vector>

#include "vqlab/errors.hpp"
#include "vqlab/utils.hpp"

namespace vqlab {

struct GeneBounds {
  double low = 0.0;
  double high = 1.0;
};

// Box bounds for the genome. Equal low/high pins a gene to a constant.
struct Bounds {
  std::vector<GeneBounds> genes;

  std::size_t size() const { return genes.size(); }

  void validate() const {
    if (genes.empty()) throw ConfigError("bounds must cover at least one gene");
    for (const auto& g : genes) {
      if (g.low > g.high) throw ConfigError("gene bound has low > high");
    }
  }
};

struct Individual {
  std::vector<double> genes;
  std::vector<double> objectives;  // empty until evaluated
  int rank = -1;
  double crowding = 0.0;
  bool failed = false;

  bool evaluated() const { return !objectives.empty(); }
};

struct ParetoFront {
  std::vector<Individual> members;
};

struct NsgaConfig {
  int pop_size = 24;
  int generations = 30;
  double crossover_prob = 0.9;
  double mutation_prob = 0.0;  // 0 selects the 1/n_genes default
  double eta_c = 15.0;
  double eta_m = 20.0;
  std::uint64_t seed = 0;
};

// Objectives assigned when an evaluation fails; dominated by any real point.
inline constexpr double kFailedObjective = 1e30;

// true iff a is no worse in every component and strictly better in one.
inline bool dominates(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw ShapeError("objective vectors differ in length");
  bool strictly_better = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
    if (a[i] < b[i]) strictly_better = true;
  }
  return strictly_better;
}

// Deb's fast non-dominated sort; assigns rank (0-based front index) to each
// individual and returns the fronts as index lists.
inline std::vector<std::vector<std::size_t>> fast_nondominated_sort(
    std::vector<Individual>& pop) {
  const std::size_t n = pop.size();
  std::vector<std::vector<std::size_t>> dominated(n);
  std::vector<int> domination_count(n, 0);
  std::vector<std::vector<std::size_t>> fronts;
  std::vector<std::size_t> current;
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      if (p == q) continue;
      if (dominates(pop[p].objectives, pop[q].objectives)) {
        dominated[p].push_back(q);
      } else if (dominates(pop[q].objectives, pop[p].objectives)) {
        ++domination_count[p];
      }
    }
    if (domination_count[p] == 0) {
      pop[p].rank = 0;
      current.push_back(p);
    }
  }
  while (!current.empty()) {
    fronts.push_back(current);
    std::vector<std::size_t> next;
    for (std::size_t p : current) {
      for (std::size_t q : dominated[p]) {
        if (--domination_count[q] == 0) {
          pop[q].rank = static_cast<int>(fronts.size());
          next.push_back(q);
        }
      }
    }
    current = std::move(next);
  }
  return fronts;
}

// Crowding distances for one front; boundary individuals get +infinity and
// objectives with zero range contribute nothing.
inline std::vector<double> crowding_distance(
    const std::vector<std::size_t>& front, const std::vector<Individual>& pop) {
  const std::size_t n = front.size();
  if (n == 0) throw ConfigError("crowding distance of an empty front");
  std::vector<double> distance(n, 0.0);
  const std::size_t n_obj = pop[front[0]].objectives.size();
  std::vector<std::size_t> order(n);
  for (std::size_t m = 0; m < n_obj; ++m) {
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return pop[front[a]].objectives[m] < pop[front[b]].objectives[m];
    });
    distance[order.front()] = std::numeric_limits<double>::infinity();
    distance[order.back()] = std::numeric_limits<double>::infinity();
    const double lo = pop[front[order.front()]].objectives[m];
    const double hi = pop[front[order.back()]].objectives[m];
    const double range = hi - lo;
    if (range <= 0.0) continue;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double prev = pop[front[order[i - 1]]].objectives[m];
      const double next = pop[front[order[i + 1]]].objectives[m];
      distance[order[i]] += (next - prev) / range;
    }
  }
  return distance;
}

// One SBX gene given the uniform draw u; u = 0.5 reproduces the parents.
inline std::pair<double, double> sbx_gene(double p1, double p2, double u,
                                          double eta_c) {
  double beta;
  if (u <= 0.5) {
    beta = std::pow(2.0 * u, 1.0 / (eta_c + 1.0));
  } else {
    beta = std::pow(1.0 / (2.0 * (1.0 - u)), 1.0 / (eta_c + 1.0));
  }
  const double c1 = 0.5 * ((1.0 + beta) * p1 + (1.0 - beta) * p2);
  const double c2 = 0.5 * ((1.0 - beta) * p1 + (1.0 + beta) * p2);
  return {c1, c2};
}

// Bounded polynomial mutation of one gene given the uniform draw u.
inline double polynomial_mutate_gene(double x, double low, double high, double u,
                                     double eta_m) {
  const double range = high - low;
  if (range <= 0.0) return x;
  double delta_q;
  if (u <= 0.5) {
    const double d = (x - low) / range;
    const double val =
        2.0 * u + (1.0 - 2.0 * u) * std::pow(1.0 - d, eta_m + 1.0);
    delta_q = std::pow(val, 1.0 / (eta_m + 1.0)) - 1.0;
  } else {
    const double d = (high - x) / range;
    const double val =
        2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(1.0 - d, eta_m + 1.0);
    delta_q = 1.0 - std::pow(val, 1.0 / (eta_m + 1.0));
  }
  return x + delta_q * range;
}

// Evaluates a batch of genomes; nullopt marks a failed candidate. Batching
// lets the caller fan evaluations out to a worker pool.
using BatchEvaluator = std::function<std::vector<std::optional<std::array<double, 2>>>(
    const std::vector<std::vector<double>>&)>;

// Genes quantized to a 1e-4 grid; the key under which evaluations are
// memoized and cross-referenced with report records.
inline std::vector<std::int64_t> quantized_gene_key(
    const std::vector<double>& genes) {
  std::vector<std::int64_t> key(genes.size());
  for (std::size_t i = 0; i < genes.size(); ++i) {
    key[i] = static_cast<std::int64_t>(std::llround(genes[i] * 1e4));
  }
  return key;
}

namespace detail {

using Rng = SplitMix64;

// Evaluation memo on a 1e-4 gene grid; repeated candidates are scored once.
class EvalMemo {
 public:
  explicit EvalMemo(BatchEvaluator evaluate) : evaluate_(std::move(evaluate)) {}

  void ensure_evaluated(std::vector<Individual>& pop) {
    std::vector<std::vector<double>> batch;
    std::vector<std::vector<std::int64_t>> batch_keys;
    for (const Individual& ind : pop) {
      auto key = quantized_gene_key(ind.genes);
      if (cache_.find(key) == cache_.end() &&
          std::find(batch_keys.begin(), batch_keys.end(), key) == batch_keys.end()) {
        batch.push_back(ind.genes);
        batch_keys.push_back(std::move(key));
      }
    }
    if (!batch.empty()) {
      const auto results = evaluate_(batch);
      if (results.size() != batch.size()) {
        throw ConfigError("evaluator returned a mismatched batch");
      }
      for (std::size_t i = 0; i < batch.size(); ++i) {
        cache_[batch_keys[i]] = results[i];
      }
    }
    for (Individual& ind : pop) {
      const auto& cached = cache_.at(quantized_gene_key(ind.genes));
      if (cached) {
        ind.objectives = {(*cached)[0], (*cached)[1]};
        ind.failed = false;
      } else {
        ind.objectives = {kFailedObjective, kFailedObjective};
        ind.failed = true;
      }
    }
  }

 private:
  BatchEvaluator evaluate_;
  std::map<std::vector<std::int64_t>, std::optional<std::array<double, 2>>> cache_;
};

inline const Individual& tournament(const std::vector<Individual>& pop, Rng& rng) {
  const Individual& a = pop[rng.next_index(pop.size())];
  const Individual& b = pop[rng.next_index(pop.size())];
  if (a.rank != b.rank) return a.rank < b.rank ? a : b;
  if (a.crowding != b.crowding) return a.crowding > b.crowding ? a : b;
  return a;
}

inline void rank_population(std::vector<Individual>& pop) {
  const auto fronts = fast_nondominated_sort(pop);
  for (const auto& front : fronts) {
    const auto distances = crowding_distance(front, pop);
    for (std::size_t i = 0; i < front.size(); ++i) {
      pop[front[i]].crowding = distances[i];
    }
  }
}

}  // namespace detail

// Canonical NSGA-II loop; fully deterministic for a fixed seed. Failed
// evaluations receive worst-case objectives and the run continues.
inline ParetoFront evolve(const BatchEvaluator& evaluate, const Bounds& bounds,
                          const NsgaConfig& cfg) {
  bounds.validate();
  if (cfg.pop_size < 4 || cfg.pop_size % 2 != 0) {
    throw ConfigError("pop_size must be even and at least 4");
  }
  const std::size_t n_genes = bounds.size();
  const double mutation_prob =
      cfg.mutation_prob > 0.0 ? cfg.mutation_prob : 1.0 / static_cast<double>(n_genes);

  detail::Rng rng(cfg.seed);
  detail::EvalMemo memo(evaluate);

  std::vector<Individual> pop(cfg.pop_size);
  for (Individual& ind : pop) {
    ind.genes.resize(n_genes);
    for (std::size_t g = 0; g < n_genes; ++g) {
      const auto& gb = bounds.genes[g];
      ind.genes[g] = gb.low + (gb.high - gb.low) * rng.next_double();
    }
  }
  memo.ensure_evaluated(pop);
  detail::rank_population(pop);

  for (int gen = 0; gen < cfg.generations; ++gen) {
    std::vector<Individual> offspring;
    offspring.reserve(cfg.pop_size);
    while (static_cast<int>(offspring.size()) < cfg.pop_size) {
      const Individual& p1 = detail::tournament(pop, rng);
      const Individual& p2 = detail::tournament(pop, rng);
      Individual c1, c2;
      c1.genes = p1.genes;
      c2.genes = p2.genes;
      if (rng.next_double() < cfg.crossover_prob) {
        for (std::size_t g = 0; g < n_genes; ++g) {
          const auto [v1, v2] =
              sbx_gene(p1.genes[g], p2.genes[g], rng.next_double(), cfg.eta_c);
          c1.genes[g] = v1;
          c2.genes[g] = v2;
        }
      }
      for (Individual* child : {&c1, &c2}) {
        for (std::size_t g = 0; g < n_genes; ++g) {
          const auto& gb = bounds.genes[g];
          if (rng.next_double() < mutation_prob) {
            child->genes[g] = polynomial_mutate_gene(child->genes[g], gb.low,
                                                     gb.high, rng.next_double(),
                                                     cfg.eta_m);
          }
          child->genes[g] = std::clamp(child->genes[g], gb.low, gb.high);
        }
      }
      offspring.push_back(std::move(c1));
      offspring.push_back(std::move(c2));
    }
    memo.ensure_evaluated(offspring);

    std::vector<Individual> combined = pop;
    combined.insert(combined.end(), offspring.begin(), offspring.end());
    const auto fronts = fast_nondominated_sort(combined);

    std::vector<Individual> next;
    next.reserve(cfg.pop_size);
    for (const auto& front : fronts) {
      const auto distances = crowding_distance(front, combined);
      for (std::size_t i = 0; i < front.size(); ++i) {
        combined[front[i]].crowding = distances[i];
      }
      if (next.size() + front.size() <= static_cast<std::size_t>(cfg.pop_size)) {
        for (std::size_t i : front) next.push_back(combined[i]);
      } else {
        std::vector<std::size_t> order(front.size());
        for (std::size_t i = 0; i < front.size(); ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) {
                           return combined[front[a]].crowding >
                                  combined[front[b]].crowding;
                         });
        for (std::size_t i : order) {
          if (next.size() == static_cast<std::size_t>(cfg.pop_size)) break;
          next.push_back(combined[front[i]]);
        }
      }
      if (next.size() == static_cast<std::size_t>(cfg.pop_size)) break;
    }
    pop = std::move(next);
    detail::rank_population(pop);
  }

  ParetoFront front;
  for (const Individual& ind : pop) {
    if (ind.rank == 0 && !ind.failed) front.members.push_back(ind);
  }
  return front;
}

}  // namespace vqlab

#endif  // VQLAB_NSGA2_HPP_
