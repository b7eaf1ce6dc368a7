#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "embedlab/quantum_embed.hpp"

namespace embedlab {

// a deterministic update rule on {0, ..., d-1}, i.e. a 0/1-valued column-
// stochastic matrix stored as its action table
struct FunctionMap {
  std::vector<int> table;

  explicit FunctionMap(std::vector<int> t) : table(std::move(t)) {
    require(!table.empty(), "function map: empty table");
    for (int v : table)
      require(v >= 0 && v < d(), "function map: value out of range");
  }

  int d() const { return static_cast<int>(table.size()); }
  int operator()(int i) const { return table[i]; }

  bool is_identity() const {
    for (int i = 0; i < d(); ++i)
      if (table[i] != i) return false;
    return true;
  }

  StochasticMatrix to_stochastic() const {
    Matrix p = Matrix::Zero(d(), d());
    for (int j = 0; j < d(); ++j) p(table[j], j) = 1.0;
    return StochasticMatrix(std::move(p));
  }
};

struct FunctionStats {
  std::int64_t domain = 0;
  std::int64_t fixed_points = 0;
  std::int64_t image_size = 0;
  std::int64_t cycles = 0;  // distinct periodic orbits; fixed points count as 1-cycles
};

inline FunctionStats function_stats(const FunctionMap& f) {
  const int d = f.d();
  FunctionStats s;
  s.domain = d;
  std::vector<bool> in_image(d, false);
  for (int i = 0; i < d; ++i) {
    if (f(i) == i) ++s.fixed_points;
    in_image[f(i)] = true;
  }
  for (int i = 0; i < d; ++i) s.image_size += in_image[i];
  // every weakly connected component of the functional graph owns one cycle;
  // walk each unvisited node forward and count first arrivals on fresh cycles
  std::vector<int> mark(d, -1);  // walk id that first touched the node, -1 fresh
  std::vector<bool> settled(d, false);
  for (int start = 0; start < d; ++start) {
    if (settled[start]) continue;
    int x = start;
    while (!settled[x] && mark[x] != start) {
      mark[x] = start;
      x = f(x);
    }
    if (!settled[x]) ++s.cycles;  // closed the loop inside this walk
    x = start;
    while (!settled[x]) {
      settled[x] = true;
      x = f(x);
    }
  }
  return s;
}

struct CostReport {
  std::int64_t m = 0;
  // no finite one-step count exists at this memory budget (a nontrivial
  // bijection with zero memory states)
  bool infinite = false;
  // the exact count is the ceiling term plus an unresolved one-step slack, so
  // it lies in [interval_lo, interval_hi] with interval_hi = interval_lo + 1
  std::int64_t interval_lo = 0;
  std::int64_t interval_hi = 0;
  std::int64_t lower_bound = 0;
  int quantum_cost = 2;  // one-step count sufficient with zero quantum memory
  int quantum_memory = 0;
};

namespace detail {

inline std::int64_t ceil_div(std::int64_t num, std::int64_t den) {
  return (num + den - 1) / den;
}

}  // namespace detail

// minimal number of one-step stochastic factors implementing the rule with m
// auxiliary states, exact up to a one-step ambiguity, in exact integer
// arithmetic; the identity needs no step at all and is reported as zero
inline CostReport classical_time_cost(const FunctionStats& s, std::int64_t m) {
  require(m >= 0, "classical_time_cost: negative memory count");
  require(s.domain >= 1 && s.image_size >= 1 && s.image_size <= s.domain &&
              s.fixed_points <= s.image_size && s.cycles >= 1,
          "classical_time_cost: inconsistent statistics");
  CostReport r;
  r.m = m;
  r.quantum_cost = s.image_size == s.domain ? 1 : 2;
  if (s.fixed_points == s.domain) {  // identity
    return r;
  }
  const std::int64_t den = m + s.domain - s.image_size;
  if (den == 0) {
    r.infinite = true;
    return r;
  }
  const std::int64_t slack = std::max<std::int64_t>(s.cycles - m, 0);
  r.interval_lo =
      detail::ceil_div(m + s.domain + slack - s.fixed_points, den);
  r.interval_hi = r.interval_lo + 1;
  r.lower_bound = detail::ceil_div(m + s.domain - s.fixed_points, den);
  return r;
}

inline CostReport classical_time_cost(const FunctionMap& f, std::int64_t m) {
  return classical_time_cost(function_stats(f), m);
}

// split f into a bijection followed by an idempotent collapse, f = f_I ∘ f_pi:
// image elements keep their label, each surplus preimage is parked on a
// distinct non-image label, and the collapse folds the parking blocks back
inline std::pair<FunctionMap, FunctionMap> decompose_function(const FunctionMap& f) {
  const int d = f.d();
  std::vector<bool> in_image(d, false);
  for (int i = 0; i < d; ++i) in_image[f(i)] = true;
  std::vector<int> labels;  // image elements ascending, then the rest ascending
  labels.reserve(d);
  for (int i = 0; i < d; ++i)
    if (in_image[i]) labels.push_back(i);
  const int r = static_cast<int>(labels.size());
  for (int i = 0; i < d; ++i)
    if (!in_image[i]) labels.push_back(i);

  std::vector<std::vector<int>> preimage(r);
  std::vector<int> slot_of(d, -1);
  for (int k = 0; k < r; ++k) slot_of[labels[k]] = k;
  for (int x = 0; x < d; ++x) preimage[slot_of[f(x)]].push_back(x);

  std::vector<int> f_pi(d, -1), f_i(d);
  for (int i = 0; i < d; ++i) f_i[i] = i;
  int next_parking = r;
  for (int k = 0; k < r; ++k) {
    f_pi[preimage[k][0]] = labels[k];
    for (std::size_t j = 1; j < preimage[k].size(); ++j) {
      const int parked = labels[next_parking++];
      f_pi[preimage[k][j]] = parked;
      f_i[parked] = labels[k];
    }
  }
  return {FunctionMap(std::move(f_pi)), FunctionMap(std::move(f_i))};
}

// two-leg schedule realizing the rule with zero auxiliary states: a coherent
// leg for the bijective part and a rate-matrix leg collapsing the parking
// blocks, each dropped when trivial
inline MarkovianRealization quantum_realization_of_function(const FunctionMap& f,
                                                            double t_trunc) {
  require(t_trunc > 0.0 && std::isfinite(t_trunc),
          "quantum_realization_of_function: bad truncation time");
  const int d = f.d();
  auto [f_pi, f_i] = decompose_function(f);
  std::vector<RealizationStage> stages;
  if (!f_pi.is_identity()) {
    // exp(+iH) is the permutation, so the forward-time leg carries -H
    stages.push_back(LindbladStage(
        Lindbladian(-permutation_hamiltonian(f_pi.table), {}), 1.0));
  }
  if (!f_i.is_identity()) {
    Matrix l = Matrix::Zero(d, d);
    for (int v = 0; v < d; ++v) {
      if (f_i(v) == v) continue;
      l(v, v) = -1.0;
      l(f_i(v), v) = 1.0;
    }
    stages.push_back(ClassicalStage(GeneratorMatrix(std::move(l)), t_trunc));
  }
  if (stages.empty())
    stages.push_back(LindbladStage(Lindbladian(CMatrix::Zero(d, d), {}), 0.0));
  return make_realization(f.to_stochastic(), std::move(stages));
}

struct TypicalitySample {
  std::int64_t dimension = 0;
  std::int64_t trials = 0;
  double mean_image = 0.0;
  double mean_fixed = 0.0;
  double se_image = 0.0;  // empirical standard errors of the two means
  double se_fixed = 0.0;
  // binomial predictions for a uniformly random rule
  double predicted_image_mean = 0.0;
  double predicted_image_se = 0.0;
  double predicted_fixed_mean = 1.0;
  double predicted_fixed_se = 0.0;
};

// image size and fixed-point count of uniformly random rules; each trial runs
// on its own seeded stream so trials can be reproduced independently
inline TypicalitySample typicality_sample(int d, int trials, std::uint64_t seed) {
  require(d >= 1, "typicality_sample: bad dimension");
  require(trials >= 1, "typicality_sample: need at least one trial");
  TypicalitySample out;
  out.dimension = d;
  out.trials = trials;
  const double inv_e = 1.0 / std::exp(1.0);
  out.predicted_image_mean = d * (1.0 - inv_e);
  out.predicted_image_se = std::sqrt(d * inv_e * (1.0 - inv_e) / trials);
  out.predicted_fixed_se = std::sqrt((1.0 - 1.0 / d) / trials);

  double img_sum = 0.0, img_sq = 0.0, fix_sum = 0.0, fix_sq = 0.0;
  std::vector<int> stamp(d, -1);
  for (int t = 0; t < trials; ++t) {
    std::mt19937_64 g(seed + 0x9e3779b97f4a7c15ull * (t + 1));
    int img = 0, fix = 0;
    for (int i = 0; i < d; ++i) {
      // modulo draw keeps the stream identical across standard libraries; the
      // bias at d much smaller than 2^64 is far below sampling noise
      const int v = static_cast<int>(g() % std::uint64_t(d));
      fix += v == i;
      if (stamp[v] != t) {
        stamp[v] = t;
        ++img;
      }
    }
    img_sum += img;
    img_sq += double(img) * img;
    fix_sum += fix;
    fix_sq += double(fix) * fix;
  }
  out.mean_image = img_sum / trials;
  out.mean_fixed = fix_sum / trials;
  if (trials > 1) {
    const double img_var =
        (img_sq - trials * out.mean_image * out.mean_image) / (trials - 1);
    const double fix_var =
        (fix_sq - trials * out.mean_fixed * out.mean_fixed) / (trials - 1);
    out.se_image = std::sqrt(std::max(img_var, 0.0) / trials);
    out.se_fixed = std::sqrt(std::max(fix_var, 0.0) / trials);
  }
  return out;
}

enum class NamedFunction {
  AddOneModD,       // i -> i + 1 mod d: the clock update, a single d-cycle
  SaturatingShift,  // i -> min(i + 2^(s/2), d - 1): shift with absorbing cap
};

// closed-form statistics at bit-width s, valid far beyond tabulation range
inline FunctionStats named_function_stats(NamedFunction which, int bits) {
  require(bits >= 2 && bits <= 62, "named_function_stats: bit width out of range");
  const std::int64_t d = std::int64_t(1) << bits;
  FunctionStats s;
  s.domain = d;
  switch (which) {
    case NamedFunction::AddOneModD:
      s.fixed_points = 0;
      s.image_size = d;
      s.cycles = 1;
      break;
    case NamedFunction::SaturatingShift: {
      require(bits % 2 == 0, "named_function_stats: shift needs even bit width");
      const std::int64_t step = std::int64_t(1) << (bits / 2);
      s.fixed_points = 1;  // only the cap stays put
      s.image_size = d - step;
      s.cycles = 1;
      break;
    }
  }
  return s;
}

inline FunctionMap named_function_table(NamedFunction which, int bits) {
  require(bits >= 2 && bits <= 20, "named_function_table: table would be huge");
  const int d = 1 << bits;
  std::vector<int> t(d);
  switch (which) {
    case NamedFunction::AddOneModD:
      for (int i = 0; i < d; ++i) t[i] = (i + 1) % d;
      break;
    case NamedFunction::SaturatingShift: {
      require(bits % 2 == 0, "named_function_table: shift needs even bit width");
      const int step = 1 << (bits / 2);
      for (int i = 0; i < d; ++i) t[i] = std::min(i + step, d - 1);
      break;
    }
  }
  return FunctionMap(std::move(t));
}

// one row per memory budget; the quantum column carries the universal
// zero-memory two-step guarantee rather than the per-rule optimum, matching
// how the trade-off is usually drawn
inline std::vector<CostReport> tradeoff_table(const FunctionStats& s,
                                              const std::vector<std::int64_t>& ms) {
  std::vector<CostReport> rows;
  rows.reserve(ms.size());
  for (std::int64_t m : ms) {
    CostReport r = classical_time_cost(s, m);
    r.quantum_cost = 2;
    r.quantum_memory = 0;
    rows.push_back(r);
  }
  return rows;
}

inline std::vector<CostReport> tradeoff_table(const FunctionMap& f,
                                              const std::vector<std::int64_t>& ms) {
  return tradeoff_table(function_stats(f), ms);
}

// the trade-off curves are usually drawn unceiled; expose that value for plots
inline double tradeoff_curve_value(const FunctionStats& s, std::int64_t m) {
  const std::int64_t den = m + s.domain - s.image_size;
  require(den > 0, "tradeoff_curve_value: no finite cost at this memory count");
  return double(m + s.domain - s.fixed_points) / double(den);
}

}  // namespace embedlab
