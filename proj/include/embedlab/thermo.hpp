#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "embedlab/accessibility.hpp"
#include "embedlab/embeddability.hpp"

namespace embedlab {

struct EnergySpec {
  std::vector<double> levels;
  double beta = 1.0;

  EnergySpec(std::vector<double> e, double b) : levels(std::move(e)), beta(b) {
    require(!levels.empty(), "energy spec: no levels");
    for (double v : levels)
      require(std::isfinite(v), "energy spec: non-finite level");
    require(std::isfinite(beta) && beta >= 0.0,
            "energy spec: inverse temperature must be finite and nonnegative");
  }

  int d() const { return static_cast<int>(levels.size()); }
};

inline ProbVector gibbs_state(const EnergySpec& spec) {
  // shift by the minimum so the weights never overflow
  const double floor_e =
      *std::min_element(spec.levels.begin(), spec.levels.end());
  Vector w(spec.d());
  for (int i = 0; i < spec.d(); ++i)
    w(i) = std::exp(-spec.beta * (spec.levels[i] - floor_e));
  return ProbVector(w / w.sum());
}

namespace detail {

inline double shannon_nats(const Vector& p) {
  double h = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i)
    if (p(i) > 0.0) h -= p(i) * std::log(p(i));
  return h;
}

}  // namespace detail

inline double free_energy(const ProbVector& p, const EnergySpec& spec) {
  require(p.d() == spec.d(), "free energy: dimension mismatch");
  require(spec.beta > 0.0, "free energy: undefined at infinite temperature");
  double mean_e = 0.0;
  for (int i = 0; i < p.d(); ++i) mean_e += p(i) * spec.levels[i];
  return mean_e - detail::shannon_nats(p.vec()) / spec.beta;
}

inline double quantum_free_energy(const DensityMatrix& rho,
                                  const EnergySpec& spec) {
  require(rho.d() == spec.d(), "free energy: dimension mismatch");
  require(spec.beta > 0.0, "free energy: undefined at infinite temperature");
  double mean_e = 0.0;
  for (int i = 0; i < rho.d(); ++i) mean_e += rho(i, i).real() * spec.levels[i];
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho.mat(), Eigen::EigenvaluesOnly);
  Vector spectrum = es.eigenvalues().cwiseMax(0.0);
  return mean_e - detail::shannon_nats(spectrum) / spec.beta;
}

// entropy gained by erasing coherence in the energy eigenbasis; the coherent
// share of the free energy, and zero exactly on diagonal states
inline double asymmetry(const DensityMatrix& rho, const EnergySpec& spec) {
  require(rho.d() == spec.d(), "asymmetry: dimension mismatch");
  Vector diag(rho.d());
  for (int i = 0; i < rho.d(); ++i) diag(i) = rho(i, i).real();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho.mat(), Eigen::EigenvaluesOnly);
  Vector spectrum = es.eigenvalues().cwiseMax(0.0);
  const double a =
      detail::shannon_nats(diag.cwiseMax(0.0)) - detail::shannon_nats(spectrum);
  require(a >= -1e-10, "asymmetry: dephasing lowered the entropy");
  return a;
}

struct FreeEnergyAudit {
  std::vector<double> times;
  std::vector<double> f_classical;
  std::vector<double> f_quantum;
  std::vector<double> asym;
  bool monotone_ok = false;
  bool backflow_detected = false;
};

inline FreeEnergyAudit audit_trajectory(const std::vector<double>& times,
                                        const std::vector<DensityMatrix>& states,
                                        const EnergySpec& spec) {
  require(times.size() == states.size(), "audit: times and states differ");
  require(states.size() >= 2, "audit: need at least two samples");
  FreeEnergyAudit out;
  out.times = times;
  for (const auto& rho : states) {
    Vector diag(rho.d());
    for (int i = 0; i < rho.d(); ++i) diag(i) = rho(i, i).real();
    out.f_classical.push_back(
        free_energy(ProbVector(diag.cwiseMax(0.0)), spec));
    out.f_quantum.push_back(quantum_free_energy(rho, spec));
    out.asym.push_back(asymmetry(rho, spec));
  }
  out.monotone_ok = true;
  for (std::size_t k = 1; k < out.f_quantum.size(); ++k)
    if (out.f_quantum[k] > out.f_quantum[k - 1] + 1e-8) out.monotone_ok = false;
  // dip-then-rise in the classical component: find the first global minimum
  // and ask whether anything later climbs visibly above it
  std::size_t m = 0;
  for (std::size_t k = 1; k < out.f_classical.size(); ++k)
    if (out.f_classical[k] < out.f_classical[m]) m = k;
  double rise = 0.0;
  for (std::size_t k = m + 1; k < out.f_classical.size(); ++k)
    rise = std::max(rise, out.f_classical[k] - out.f_classical[m]);
  out.backflow_detected = m > 0 && rise > 1e-6;
  return out;
}

// the stepwise extremal evolution records one state per unit of time
inline FreeEnergyAudit audit_trajectory(const PathTrajectory& traj,
                                        const EnergySpec& spec) {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
  times.push_back(0.0);
  states.push_back(traj.start.to_density());
  for (std::size_t k = 0; k < traj.steps.size(); ++k) {
    times.push_back(static_cast<double>(k + 1));
    states.push_back(traj.steps[k].rho);
  }
  return audit_trajectory(times, states, spec);
}

// duration of the single partial-thermalisation stage realising ground-to-
// excited leakage P01 without memory; saturating the detailed-balance bound
// takes forever, exceeding it is impossible
inline double partial_thermalization_time(double p01, double beta_e, double r) {
  require(std::isfinite(p01) && p01 >= 0.0,
          "partial thermalization: leakage out of range");
  require(r > 0.0 && std::isfinite(r), "partial thermalization: bad rate");
  const double cap = detailed_balance_threshold(beta_e);
  const double ratio = p01 / cap;
  require(ratio <= 1.0 + 1e-12,
          "partial thermalization: leakage beyond the memoryless bound");
  if (ratio >= 1.0) return std::numeric_limits<double>::infinity();
  return -std::log1p(-ratio) / r;
}

}  // namespace embedlab
