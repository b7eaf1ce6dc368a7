#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "embedlab/embeddability.hpp"
#include "embedlab/linalg.hpp"

namespace embedlab {

// one leg of a piecewise-constant quantum Markov schedule; classical legs keep
// their rate matrix alongside the lifted form so they serialise as rates
using RealizationStage = std::variant<LindbladStage, ClassicalStage>;

inline Superoperator stage_propagator(const RealizationStage& stage) {
  if (const auto* q = std::get_if<LindbladStage>(&stage)) {
    if (q->generator.jump_ops.empty()) {
      // coherent leg: exponentiate the Hamiltonian directly
      CMatrix u = expm(q->generator.hamiltonian,
                       Complex(0.0, -q->effective_duration()));
      return Superoperator::left_right(u, u.adjoint());
    }
    return q->propagator();
  }
  const auto& c = std::get<ClassicalStage>(stage);
  return LindbladStage(lindblad_from_generator(c.generator),
                       c.effective_duration())
      .propagator();
}

inline int stage_dimension(const RealizationStage& stage) {
  if (const auto* q = std::get_if<LindbladStage>(&stage)) return q->generator.d();
  return std::get<ClassicalStage>(stage).generator.d();
}

// transition probabilities actually produced by running the schedule on each
// basis state and reading populations at the end
inline StochasticMatrix extract_stochastic(const std::vector<RealizationStage>& stages,
                                           int d) {
  std::vector<Superoperator> props;
  props.reserve(stages.size());
  for (const auto& s : stages) {
    require(stage_dimension(s) == d, "extract_stochastic: stage dimension mismatch");
    props.push_back(stage_propagator(s));
  }
  Matrix p(d, d);
  for (int j = 0; j < d; ++j) {
    CMatrix rho = basis_state(d, j).mat();
    for (const auto& e : props) rho = e.apply_raw(rho);
    for (int i = 0; i < d; ++i) p(i, j) = rho(i, i).real();
  }
  return StochasticMatrix(std::move(p));
}

struct MarkovianRealization {
  StochasticMatrix target;
  std::vector<RealizationStage> stages;
  double achieved_error = 0.0;  // measured by re-extraction, never assumed
};

inline MarkovianRealization make_realization(StochasticMatrix target,
                                             std::vector<RealizationStage> stages) {
  StochasticMatrix extracted = extract_stochastic(stages, target.d());
  const double err = (extracted.mat() - target.mat()).cwiseAbs().maxCoeff();
  return MarkovianRealization{std::move(target), std::move(stages), err};
}

inline Matrix permutation_matrix(const std::vector<int>& f) {
  const int d = static_cast<int>(f.size());
  std::vector<bool> hit(d, false);
  Matrix m = Matrix::Zero(d, d);
  for (int j = 0; j < d; ++j) {
    require(f[j] >= 0 && f[j] < d && !hit[f[j]],
            "permutation_matrix: table is not a bijection");
    hit[f[j]] = true;
    m(f[j], j) = 1.0;
  }
  return m;
}

// Hermitian phase ramp over the Fourier modes of each cycle; exp(+iH) equals
// the permutation matrix of f, and for the d-cycle exp(+iHm) shifts by m
inline CMatrix permutation_hamiltonian(const std::vector<int>& f) {
  const int d = static_cast<int>(f.size());
  permutation_matrix(f);  // validates bijectivity
  CMatrix h = CMatrix::Zero(d, d);
  std::vector<bool> seen(d, false);
  for (int start = 0; start < d; ++start) {
    if (seen[start]) continue;
    std::vector<int> cycle;
    for (int x = start; !seen[x]; x = f[x]) {
      seen[x] = true;
      cycle.push_back(x);
    }
    const int len = static_cast<int>(cycle.size());
    if (len == 1) continue;  // fixed points carry zero phase
    for (int n = 1; n < len; ++n) {
      CVector mode = CVector::Zero(d);
      for (int k = 0; k < len; ++k)
        mode(cycle[k]) =
            std::polar(1.0 / std::sqrt(double(len)), -2.0 * M_PI * k * n / len);
      h += (2.0 * M_PI * n / len) * mode * mode.adjoint();
    }
  }
  return h;
}

inline CMatrix permutation_hamiltonian(int d) {
  require(d > 0, "permutation_hamiltonian: bad dimension");
  std::vector<int> shift(d);
  for (int k = 0; k < d; ++k) shift[k] = (k + 1) % d;
  return permutation_hamiltonian(shift);
}

// principal-branch Hermitian generator with exp(-iH) = u; unitary inputs are
// normal, so the Schur form is diagonal up to roundoff
inline CMatrix hamiltonian_generating(const CMatrix& u) {
  require(u.rows() == u.cols() && u.rows() > 0, "hamiltonian_generating: not square");
  require((u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols()))
                  .cwiseAbs()
                  .maxCoeff() <= 1e-10,
          "hamiltonian_generating: input is not unitary");
  Eigen::ComplexSchur<CMatrix> schur(u);
  const CMatrix& t = schur.matrixT();
  const CMatrix& q = schur.matrixU();
  CVector phases(u.rows());
  for (Eigen::Index k = 0; k < u.rows(); ++k) {
    double phi = std::arg(t(k, k));
    // nudge the branch cut so a -1 eigenvalue logs stably
    if (phi > M_PI - 1e-12) phi = M_PI - 1e-12;
    phases(k) = Complex(-phi, 0.0);
  }
  CMatrix h = q * phases.asDiagonal() * q.adjoint();
  h = 0.5 * (h + h.adjoint());
  if ((expm(h, Complex(0.0, -1.0)) - u).cwiseAbs().maxCoeff() > 1e-10)
    throw std::runtime_error("hamiltonian_generating: log reproduction failed");
  return h;
}

inline RealizationStage unitary_stage(const CMatrix& u) {
  return LindbladStage(Lindbladian(hamiltonian_generating(u), {}), 1.0);
}

inline RealizationStage dephasing_stage(int d) {
  std::vector<CMatrix> jumps = dephasing_channel(d).ops();
  return LindbladStage(Lindbladian(CMatrix::Zero(d, d), std::move(jumps)), 0.0,
                       /*infinite=*/true);
}

// transition matrix of a unitary realised by the coherent leg alone: entry
// (i, j) is the squared modulus of <j|u|i>
inline MarkovianRealization unistochastic_channel(const CMatrix& u) {
  require(u.rows() == u.cols() && u.rows() > 0, "unistochastic_channel: not square");
  const int d = static_cast<int>(u.rows());
  Matrix p(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) p(i, j) = std::norm(u(j, i));
  return make_realization(StochasticMatrix(std::move(p)),
                          {unitary_stage(u.transpose())});
}

// sequential composition: run b's schedule, pinch away coherences, then run
// a's schedule; the pinch makes classical targets compose exactly
inline MarkovianRealization compose_markovian(const MarkovianRealization& a,
                                              const MarkovianRealization& b) {
  require(a.target.d() == b.target.d(), "compose_markovian: dimension mismatch");
  std::vector<RealizationStage> stages = b.stages;
  stages.push_back(dephasing_stage(a.target.d()));
  stages.insert(stages.end(), a.stages.begin(), a.stages.end());
  return make_realization(StochasticMatrix(a.target.mat() * b.target.mat()),
                          std::move(stages));
}

// every two-level stochastic matrix splits into an embeddable core and at most
// one basis swap in front
inline MarkovianRealization decompose_2x2(const StochasticMatrix& p) {
  require(p.d() == 2, "decompose_2x2: dimension must be 2");
  const double det = p.mat().determinant();
  if (det >= -tol::verdict) {
    EmbedVerdict v = check_embeddable_2x2(p);
    std::vector<RealizationStage> stages;
    for (const auto& s : *v.witness) stages.emplace_back(s);
    return make_realization(p, std::move(stages));
  }
  Matrix swap(2, 2);
  swap << 0, 1, 1, 0;
  StochasticMatrix flipped(swap * p.mat());
  MarkovianRealization core = decompose_2x2(flipped);
  MarkovianRealization swap_leg =
      make_realization(StochasticMatrix(swap), {unitary_stage(swap.cast<Complex>())});
  return compose_markovian(swap_leg, core);
}

struct PinchFactor {
  Matrix p2;               // 2x2 column-stochastic block
  int level_i = 0;         // embedded two-level subspace
  int level_j = 1;
  std::vector<int> perm;   // relabeling applied around the embedded block
};

namespace detail {

inline Matrix embed_two_level(const Matrix& block, int i, int j, int d) {
  Matrix m = Matrix::Identity(d, d);
  m(i, i) = block(0, 0);
  m(i, j) = block(0, 1);
  m(j, i) = block(1, 0);
  m(j, j) = block(1, 1);
  return m;
}

inline RealizationStage conjugate_stage(const RealizationStage& stage,
                                        const Matrix& r) {
  const CMatrix rc = r.cast<Complex>();
  if (const auto* q = std::get_if<LindbladStage>(&stage)) {
    CMatrix h = rc * q->generator.hamiltonian * rc.adjoint();
    std::vector<CMatrix> jumps;
    for (const auto& k : q->generator.jump_ops)
      jumps.push_back(rc * k * rc.adjoint());
    return LindbladStage(Lindbladian(std::move(h), std::move(jumps)), q->duration,
                         q->infinite);
  }
  const auto& c = std::get<ClassicalStage>(stage);
  return ClassicalStage(GeneratorMatrix(r * c.generator.mat() * r.transpose()),
                        c.duration, c.infinite);
}

}  // namespace detail

// chained two-level relabeled pinches: each factor acts on one pair of levels
// inside a permutation frame, and factors compose left to right in list order
inline MarkovianRealization pinching_product(const std::vector<PinchFactor>& factors,
                                             int d) {
  require(d >= 2, "pinching_product: bad dimension");
  require(!factors.empty(), "pinching_product: no factors");
  std::optional<MarkovianRealization> acc;
  for (const auto& f : factors) {
    require(f.level_i != f.level_j, "pinching_product: factor indices collide");
    require(f.level_i >= 0 && f.level_i < d && f.level_j >= 0 && f.level_j < d,
            "pinching_product: factor indices out of range");
    require(static_cast<int>(f.perm.size()) == d,
            "pinching_product: permutation length mismatch");
    Matrix r = permutation_matrix(f.perm);
    MarkovianRealization two = decompose_2x2(StochasticMatrix(f.p2));
    std::vector<RealizationStage> lifted;
    for (const auto& s : two.stages) {
      RealizationStage wide = std::visit(
          [&](const auto& leg) -> RealizationStage {
            using T = std::decay_t<decltype(leg)>;
            if constexpr (std::is_same_v<T, LindbladStage>) {
              CMatrix h = CMatrix::Zero(d, d);
              h(f.level_i, f.level_i) = leg.generator.hamiltonian(0, 0);
              h(f.level_i, f.level_j) = leg.generator.hamiltonian(0, 1);
              h(f.level_j, f.level_i) = leg.generator.hamiltonian(1, 0);
              h(f.level_j, f.level_j) = leg.generator.hamiltonian(1, 1);
              std::vector<CMatrix> jumps;
              for (const auto& k : leg.generator.jump_ops) {
                CMatrix kw = CMatrix::Zero(d, d);
                kw(f.level_i, f.level_i) = k(0, 0);
                kw(f.level_i, f.level_j) = k(0, 1);
                kw(f.level_j, f.level_i) = k(1, 0);
                kw(f.level_j, f.level_j) = k(1, 1);
                jumps.push_back(std::move(kw));
              }
              return LindbladStage(Lindbladian(std::move(h), std::move(jumps)),
                                   leg.duration, leg.infinite);
            } else {
              Matrix wide_gen = Matrix::Zero(d, d);
              wide_gen(f.level_i, f.level_i) = leg.generator(0, 0);
              wide_gen(f.level_i, f.level_j) = leg.generator(0, 1);
              wide_gen(f.level_j, f.level_i) = leg.generator(1, 0);
              wide_gen(f.level_j, f.level_j) = leg.generator(1, 1);
              return ClassicalStage(GeneratorMatrix(std::move(wide_gen)),
                                    leg.duration, leg.infinite);
            }
          },
          s);
      lifted.push_back(detail::conjugate_stage(wide, r));
    }
    Matrix target =
        r * detail::embed_two_level(f.p2, f.level_i, f.level_j, d) * r.transpose();
    MarkovianRealization factor_real =
        make_realization(StochasticMatrix(std::move(target)), std::move(lifted));
    acc = acc ? compose_markovian(factor_real, *acc) : std::move(factor_real);
  }
  return std::move(*acc);
}

enum class CirculantClass {
  ClassicalEmbeddable,
  QuantumViaPermutedClassical,
  QuantumViaUnistochastic,
  Unknown,
};

inline const char* to_string(CirculantClass c) {
  switch (c) {
    case CirculantClass::ClassicalEmbeddable: return "ClassicalEmbeddable";
    case CirculantClass::QuantumViaPermutedClassical:
      return "QuantumViaPermutedClassical";
    case CirculantClass::QuantumViaUnistochastic: return "QuantumViaUnistochastic";
    case CirculantClass::Unknown: return "Unknown";
  }
  return "?";
}

// first witness family that covers the point wins, from cheapest to hardest;
// a miss on all three is reported honestly as Unknown rather than impossible
inline CirculantClass classify_circulant_point(double a, double b) {
  const double c = 1.0 - a - b;
  if (check_circulant3(a, b).status == EmbedStatus::Embeddable)
    return CirculantClass::ClassicalEmbeddable;
  if (check_circulant3(b, c).status == EmbedStatus::Embeddable ||
      check_circulant3(c, a).status == EmbedStatus::Embeddable)
    return CirculantClass::QuantumViaPermutedClassical;
  if (check_unistochastic_circulant3(a, b))
    return CirculantClass::QuantumViaUnistochastic;
  return CirculantClass::Unknown;
}

}  // namespace embedlab
