#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "embedlab/thermo.hpp"
#include "test_support.hpp"

using namespace embedlab;
namespace et = embedlab::testing;

namespace {

ProbVector pv(std::initializer_list<double> xs) {
  Vector v(static_cast<int>(xs.size()));
  int i = 0;
  for (double x : xs) v(i++) = x;
  return ProbVector(std::move(v));
}

DensityMatrix plus_state() {
  CMatrix m(2, 2);
  m << 0.5, 0.5, 0.5, 0.5;
  return DensityMatrix(std::move(m));
}

double partition_function(const EnergySpec& spec) {
  double z = 0.0;
  for (double e : spec.levels) z += std::exp(-spec.beta * e);
  return z;
}

}  // namespace

TEST_CASE("boltzmann weights at the reference points", "[thermo]") {
  {
    ProbVector g = gibbs_state(EnergySpec({0.0, 1.0}, 1.0));
    const double e = std::exp(1.0);
    REQUIRE(g(0) == Catch::Approx(e / (1.0 + e)).epsilon(1e-14));
    REQUIRE(g(1) == Catch::Approx(1.0 / (1.0 + e)).epsilon(1e-14));
    REQUIRE(g(0) == Catch::Approx(0.73106).epsilon(1e-4));
    REQUIRE(g(1) == Catch::Approx(0.26894).epsilon(1e-4));
  }
  {
    // infinite temperature flattens everything
    ProbVector g = gibbs_state(EnergySpec({3.0, -1.0, 7.0}, 0.0));
    for (int i = 0; i < 3; ++i) REQUIRE(g(i) == Catch::Approx(1.0 / 3.0));
  }
  {
    // degenerate levels share their weight equally
    ProbVector g = gibbs_state(EnergySpec({0.5, 0.5, 2.0}, 1.3));
    REQUIRE(g(0) == Catch::Approx(g(1)).epsilon(1e-14));
    REQUIRE(g(2) < g(0));
  }
  {
    // extreme spectra must not overflow
    ProbVector g = gibbs_state(EnergySpec({1000.0, 2000.0}, 5.0));
    REQUIRE(g(0) == Catch::Approx(1.0).margin(1e-12));
  }
}

TEST_CASE("equilibrium minimises the free energy", "[thermo]") {
  auto g = et::rng(7117);
  for (int rep = 0; rep < 40; ++rep) {
    const int d = 2 + static_cast<int>(g() % 4);
    std::vector<double> levels(d);
    std::uniform_real_distribution<double> le(-1.0, 2.0);
    for (double& e : levels) e = le(g);
    EnergySpec spec(levels, 0.5 + (g() % 5) * 0.5);
    ProbVector gamma = gibbs_state(spec);
    const double f_gamma = free_energy(gamma, spec);
    REQUIRE(f_gamma ==
            Catch::Approx(-std::log(partition_function(spec)) / spec.beta)
                .margin(1e-12));
    for (int s = 0; s < 25; ++s) {
      ProbVector p(et::random_distribution(g, d));
      REQUIRE(free_energy(p, spec) >= f_gamma - 1e-12);
    }
  }
}

TEST_CASE("free energy of a pure ground state is its energy", "[thermo]") {
  EnergySpec spec({0.0, 1.0}, 1.0);
  REQUIRE(free_energy(pv({1.0, 0.0}), spec) == Catch::Approx(0.0).margin(1e-14));
  REQUIRE_THROWS_AS(free_energy(pv({0.5, 0.5}), EnergySpec({0.0, 1.0}, 0.0)),
                    std::invalid_argument);
}

TEST_CASE("quantum free energy extends the classical one", "[thermo]") {
  auto g = et::rng(992);
  for (int rep = 0; rep < 30; ++rep) {
    const int d = 2 + static_cast<int>(g() % 3);
    std::vector<double> levels(d);
    std::uniform_real_distribution<double> le(0.0, 2.0);
    for (double& e : levels) e = le(g);
    EnergySpec spec(levels, 1.0);
    ProbVector p(et::random_distribution(g, d));
    REQUIRE(quantum_free_energy(diagonal_state(p), spec) ==
            Catch::Approx(free_energy(p, spec)).margin(1e-10));
  }
  EnergySpec qubit({0.0, 1.0}, 1.0);
  REQUIRE(quantum_free_energy(plus_state(), qubit) ==
          Catch::Approx(0.5).margin(1e-12));
  ProbVector gamma = gibbs_state(qubit);
  REQUIRE(quantum_free_energy(diagonal_state(gamma), qubit) ==
          Catch::Approx(-std::log(partition_function(qubit))).margin(1e-12));
  REQUIRE_THROWS_AS(quantum_free_energy(plus_state(), EnergySpec({0.0, 1.0}, 0.0)),
                    std::invalid_argument);
}

TEST_CASE("coherence share vanishes on diagonal states and is never negative",
          "[thermo]") {
  auto g = et::rng(515151);
  EnergySpec qubit({0.0, 1.0}, 1.0);
  REQUIRE(asymmetry(plus_state(), qubit) ==
          Catch::Approx(std::log(2.0)).margin(1e-12));
  for (int rep = 0; rep < 1000; ++rep) {
    const int d = 2 + static_cast<int>(g() % 4);
    std::vector<double> levels(d, 0.0);
    for (int i = 0; i < d; ++i) levels[i] = i;
    EnergySpec spec(levels, 1.0);
    DensityMatrix rho = et::random_density(g, d);
    const double a = asymmetry(rho, spec);
    REQUIRE(a >= -1e-10);
    ProbVector p(et::random_distribution(g, d));
    REQUIRE(asymmetry(diagonal_state(p), spec) <= 1e-12);
    // the split of the quantum free energy is exact
    Vector diag(d);
    for (int i = 0; i < d; ++i) diag(i) = rho(i, i).real();
    const double f = free_energy(ProbVector(diag), spec);
    REQUIRE(quantum_free_energy(rho, spec) ==
            Catch::Approx(f + a / spec.beta).margin(1e-9));
  }
}

TEST_CASE("audit of a classical relaxation is monotone with no coherent share",
          "[thermo]") {
  // two-level amplitude damping balanced against the thermal weights
  const double beta_e = 1.0;
  EnergySpec spec({0.0, beta_e}, 1.0);
  Matrix l(2, 2);
  l << -std::exp(-beta_e), 1.0, std::exp(-beta_e), -1.0;
  std::vector<double> times;
  std::vector<DensityMatrix> states;
  Vector p0(2);
  p0 << 0.2, 0.8;
  for (int k = 0; k <= 50; ++k) {
    const double t = 0.1 * k;
    times.push_back(t);
    states.push_back(diagonal_state(ProbVector(expm(l, t) * p0)));
  }
  FreeEnergyAudit audit = audit_trajectory(times, states, spec);
  REQUIRE(audit.monotone_ok);
  REQUIRE_FALSE(audit.backflow_detected);
  for (double a : audit.asym) REQUIRE(a <= 1e-12);
  for (std::size_t k = 0; k < audit.times.size(); ++k)
    REQUIRE(audit.f_quantum[k] ==
            Catch::Approx(audit.f_classical[k]).margin(1e-10));
}

TEST_CASE("audit of a resting equilibrium state is flat", "[thermo]") {
  EnergySpec spec({0.0, std::log(3.0)}, 1.0);
  ProbVector gamma = gibbs_state(spec);
  std::vector<double> times{0.0, 1.0, 2.0};
  std::vector<DensityMatrix> states(3, diagonal_state(gamma));
  FreeEnergyAudit audit = audit_trajectory(times, states, spec);
  REQUIRE(audit.monotone_ok);
  REQUIRE_FALSE(audit.backflow_detected);
  REQUIRE(std::abs(audit.f_classical.front() - audit.f_classical.back()) <=
          1e-12);
}

TEST_CASE("audit of the climbing path sees free energy pass through coherence",
          "[thermo]") {
  // gap matched to the fixed point bias 1/2
  const double zeta = 0.5;
  EnergySpec spec({0.0, std::log((1.0 + zeta) / (1.0 - zeta))}, 1.0);
  PathTrajectory traj =
      extremal_path_evolve(BlochState(0.0, 0.0, -1.0 / 3.0), zeta, 1.0 / 90.0);
  REQUIRE(traj.steps.size() >= 80);
  FreeEnergyAudit audit = audit_trajectory(traj, spec);
  REQUIRE(audit.monotone_ok);
  REQUIRE(audit.backflow_detected);
  std::size_t m = 0;
  for (std::size_t k = 1; k < audit.f_classical.size(); ++k)
    if (audit.f_classical[k] < audit.f_classical[m]) m = k;
  REQUIRE(m > 0);
  REQUIRE(m + 1 < audit.f_classical.size());
  REQUIRE(audit.asym[m] > 1e-4);
}

TEST_CASE("coherence-pumping relaxation keeps the quantum free energy falling",
          "[thermo]") {
  const double g0 = 0.7;
  EnergySpec spec({0.0, std::log(g0 / (1.0 - g0))}, 1.0);
  Lindbladian l = exotic_thermalizer(g0);
  CMatrix lhat = Superoperator::of_lindbladian(l).mat();
  auto g = et::rng(8080);
  for (int rep = 0; rep < 5; ++rep) {
    DensityMatrix rho0 = et::random_density(g, 2);
    std::vector<double> times;
    std::vector<DensityMatrix> states;
    for (int k = 0; k <= 60; ++k) {
      const double t = 0.2 * k;
      Superoperator prop(expm(lhat, Complex(t, 0.0)));
      CMatrix rho = prop.apply_raw(rho0.mat());
      times.push_back(t);
      states.push_back(DensityMatrix(0.5 * (rho + rho.adjoint())));
    }
    FreeEnergyAudit audit = audit_trajectory(times, states, spec);
    REQUIRE(audit.monotone_ok);
  }
}

TEST_CASE("partial relaxation timing follows the closed form", "[thermo]") {
  REQUIRE(partial_thermalization_time(0.0, 1.0, 1.0) == 0.0);
  REQUIRE(partial_thermalization_time(0.5, 1.0, 1.0) ==
          Catch::Approx(1.1519).epsilon(1e-4));
  const double cap = detailed_balance_threshold(1.0);
  REQUIRE(std::isinf(partial_thermalization_time(cap, 1.0, 1.0)));
  REQUIRE_THROWS_AS(partial_thermalization_time(cap + 1e-6, 1.0, 1.0),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(partial_thermalization_time(0.1, 1.0, 0.0),
                    std::invalid_argument);
  // doubling the rate halves the clock
  REQUIRE(partial_thermalization_time(0.3, 1.0, 2.0) ==
          Catch::Approx(0.5 * partial_thermalization_time(0.3, 1.0, 1.0))
              .epsilon(1e-12));
}
