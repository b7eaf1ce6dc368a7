#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "embedlab/linalg.hpp"

namespace embedlab {

enum class EmbedStatus { Embeddable, NotEmbeddable, NecessaryOnlyPass };

inline const char* to_string(EmbedStatus s) {
  switch (s) {
    case EmbedStatus::Embeddable: return "Embeddable";
    case EmbedStatus::NotEmbeddable: return "NotEmbeddable";
    case EmbedStatus::NecessaryOnlyPass: return "NecessaryOnly-Pass";
  }
  return "?";
}

struct EmbedVerdict {
  EmbedStatus status;
  std::optional<ClassicalSchedule> witness;
  std::string reason;
};

// necessary test in every dimension: the product of holding probabilities must
// dominate a nonnegative determinant for any divisible continuous realisation
inline EmbedVerdict check_goodman(const StochasticMatrix& p) {
  const double det = p.mat().determinant();
  if (det < -tol::verdict)
    return {EmbedStatus::NotEmbeddable, std::nullopt,
            "determinant " + std::to_string(det) + " is negative"};
  double diag_product = 1.0;
  for (int i = 0; i < p.d(); ++i) diag_product *= p(i, i);
  if (diag_product < det - tol::verdict)
    return {EmbedStatus::NotEmbeddable, std::nullopt,
            "diagonal product " + std::to_string(diag_product) +
                " falls below determinant " + std::to_string(det)};
  return {EmbedStatus::NecessaryOnlyPass, std::nullopt,
          "necessary inequalities hold; no sufficiency claimed"};
}

// two-level case is fully decided by the determinant sign; the witness rate
// matrix shares the eigenbasis of the input so one exponential reproduces it
inline EmbedVerdict check_embeddable_2x2(const StochasticMatrix& p) {
  require(p.d() == 2, "check_embeddable_2x2: dimension must be 2");
  const double det = p.mat().determinant();
  if (det < -tol::verdict)
    return {EmbedStatus::NotEmbeddable, std::nullopt,
            "determinant " + std::to_string(det) + " is negative"};
  if (det > 1e-15) {
    Matrix l = p.mat() - Matrix::Identity(2, 2);
    if (det < 1.0) l *= std::log(det) / (det - 1.0);
    return {EmbedStatus::Embeddable,
            ClassicalSchedule{ClassicalStage(GeneratorMatrix(std::move(l)), 1.0)},
            "determinant is positive; single-rate-matrix witness attached"};
  }
  // singular case: both columns coincide up to rounding and the target is only
  // reached in the long-time limit
  Vector shared = 0.5 * (p.mat().col(0) + p.mat().col(1));
  Matrix limit(2, 2);
  limit.col(0) = shared;
  limit.col(1) = shared;
  return {EmbedStatus::Embeddable,
          ClassicalSchedule{
              ClassicalStage(GeneratorMatrix(limit - Matrix::Identity(2, 2)), 0.0,
                             /*infinite=*/true)},
          "determinant vanishes; witness converges in the infinite-time limit"};
}

// boundary of two-level detailed-balanced embeddability in the excitation slot
inline double detailed_balance_threshold(double beta_e) {
  require(std::isfinite(beta_e), "detailed_balance_threshold: non-finite argument");
  return 1.0 / (1.0 + std::exp(-beta_e));
}

inline StochasticMatrix circulant3_matrix(double a, double b) {
  require(a >= -tol::clamp && b >= -tol::clamp && a + b <= 1.0 + tol::clamp,
          "circulant3: parameters must satisfy a, b >= 0 and a + b <= 1");
  a = std::max(a, 0.0);
  b = std::max(b, 0.0);
  const double c = std::max(1.0 - a - b, 0.0);
  Matrix p(3, 3);
  p << c, a, b,
       b, c, a,
       a, b, c;
  return StochasticMatrix(std::move(p));
}

namespace detail {

// spectrum of the three-level circulant on the nontrivial Fourier branch
inline Complex circulant3_branch_eigenvalue(double a, double b) {
  const double c = 1.0 - a - b;
  const Complex wbar = std::polar(1.0, -2.0 * M_PI / 3.0);
  return c + a * wbar + b * wbar * wbar;
}

}  // namespace detail

// damping criterion for the three-level circulant family: every eigenvalue
// r e^{i theta} (principal branch) must satisfy r <= exp(-theta tan(pi/3));
// passing spectra convert into a pair of cyclic hop rates witnessing the claim
inline EmbedVerdict check_circulant3(double a, double b) {
  circulant3_matrix(a, b);  // validates the parameter simplex
  const Complex lambda = detail::circulant3_branch_eigenvalue(a, b);
  const double r = std::abs(lambda);
  const double theta = std::arg(lambda);  // ties at the cut resolve toward +pi
  // the conjugate branch carries (r, -theta), so both inequalities reduce to
  // r <= exp(-sqrt(3) |theta|)
  const double bound = std::exp(-std::sqrt(3.0) * std::abs(theta));
  if (r > bound + tol::verdict)
    return {EmbedStatus::NotEmbeddable, std::nullopt,
            "eigenvalue modulus " + std::to_string(r) +
                " exceeds damping bound " + std::to_string(bound) +
                " at phase " + std::to_string(theta)};

  Matrix shift = Matrix::Zero(3, 3);  // |n> -> |n+1 mod 3>
  shift(1, 0) = shift(2, 1) = shift(0, 2) = 1.0;
  const Matrix hop_fwd = shift - Matrix::Identity(3, 3);
  const Matrix hop_bwd = shift * shift - Matrix::Identity(3, 3);

  if (r < 1e-15) {
    // fully contracted spectrum: the uniform mixer reaches it at infinite time
    return {EmbedStatus::Embeddable,
            ClassicalSchedule{ClassicalStage(GeneratorMatrix(hop_fwd + hop_bwd),
                                             0.0, /*infinite=*/true)},
            "spectrum collapses to zero; uniform-mixing witness in the limit"};
  }
  // match log-modulus and phase with nonnegative rates in the two hop cycles;
  // hop_bwd advances the same cycle direction as parameter a, hop_fwd as b
  const double rate_a = -std::log(r) / 3.0 - theta / std::sqrt(3.0);
  const double rate_b = -std::log(r) / 3.0 + theta / std::sqrt(3.0);
  Matrix l = std::max(rate_b, 0.0) * hop_fwd + std::max(rate_a, 0.0) * hop_bwd;
  return {EmbedStatus::Embeddable,
          ClassicalSchedule{ClassicalStage(GeneratorMatrix(std::move(l)), 1.0)},
          "spectrum inside the damping region; cyclic-rate witness attached"};
}

// triangle closure of the column-overlap links decides unistochasticity for
// the circulant family; kept oracle-gated against the direct unitary search
inline bool check_unistochastic_circulant3(double a, double b) {
  StochasticMatrix p = circulant3_matrix(a, b);
  const double l1 = std::sqrt(p(0, 0) * p(0, 1));
  const double l2 = std::sqrt(p(1, 0) * p(1, 1));
  const double l3 = std::sqrt(p(2, 0) * p(2, 1));
  return l3 >= std::abs(l1 - l2) - tol::verdict && l3 <= l1 + l2 + tol::verdict;
}

struct UnistochasticSearch {
  bool unistochastic = false;
  double residual = 0.0;  // best value of sum_ij (|U_ji|^2 - P_ij)^2
  CMatrix witness;        // best unitary found, row/column convention |U_ji|^2 = P_ij
};

namespace detail {

inline CMatrix nearest_unitary(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

inline double moduli_residual(const CMatrix& u, const Matrix& target_sq) {
  double acc = 0.0;
  for (Eigen::Index j = 0; j < u.cols(); ++j)
    for (Eigen::Index i = 0; i < u.rows(); ++i) {
      const double diff = std::norm(u(i, j)) - target_sq(i, j);
      acc += diff * diff;
    }
  return acc;
}

// alternating projection between the fixed-modulus set and the unitary group
inline double refine_moduli(CMatrix& u, const Matrix& target, const Matrix& target_sq,
                            int max_iters) {
  const Eigen::Index d = u.rows();
  double best = moduli_residual(u, target_sq);
  CMatrix v(d, d);
  int stalled = 0;
  for (int it = 0; it < max_iters; ++it) {
    for (Eigen::Index j = 0; j < d; ++j)
      for (Eigen::Index i = 0; i < d; ++i) {
        const double mag = std::abs(u(i, j));
        v(i, j) = mag > 1e-300 ? Complex(target(i, j)) * (u(i, j) / mag)
                               : Complex(target(i, j));
      }
    u = nearest_unitary(v);
    const double res = moduli_residual(u, target_sq);
    if (res < 1e-26) return res;
    if (res > best - 1e-18) {
      if (++stalled > 40) return std::min(res, best);
    } else {
      stalled = 0;
    }
    best = std::min(best, res);
  }
  return best;
}

}  // namespace detail

// searches for a unitary whose squared moduli reproduce the transition matrix
// (transposed slot convention). Restarts are drawn as exponentials of random
// anti-Hermitian matrices and refined projection-wise; a found witness is a
// certificate, a miss is best-effort with the residual reported
inline UnistochasticSearch check_unistochastic_search(const StochasticMatrix& p,
                                                      std::uint64_t seed = 0,
                                                      int restarts = 24) {
  require(p.d() <= 4, "check_unistochastic_search: unsupported dimension (d > 4)");
  require(restarts >= 1, "check_unistochastic_search: restarts must be positive");
  const int d = p.d();
  const Matrix target_sq = p.mat().transpose();
  const Matrix target = target_sq.cwiseSqrt();

  std::mt19937_64 gen(seed ^ 0x9e3779b97f4a7c15ull);
  std::normal_distribution<double> gauss(0.0, 1.0);

  UnistochasticSearch out;
  out.residual = std::numeric_limits<double>::infinity();
  for (int attempt = 0; attempt < restarts; ++attempt) {
    CMatrix u;
    if (attempt == 0) {
      u = detail::nearest_unitary(target.cast<Complex>());
    } else if (attempt == 1) {
      // Fourier start: exact for flat columns, a good basin for near-circulants
      u.resize(d, d);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          u(i, j) = std::polar(1.0 / std::sqrt(double(d)),
                               2.0 * M_PI * i * j / double(d));
    } else {
      CMatrix h(d, d);
      for (int i = 0; i < d; ++i) {
        h(i, i) = gauss(gen);
        for (int j = i + 1; j < d; ++j) {
          h(i, j) = Complex(gauss(gen), gauss(gen));
          h(j, i) = std::conj(h(i, j));
        }
      }
      u = expm(h, Complex(0.0, 1.0));
    }
    const double res = detail::refine_moduli(u, target, target_sq, 1200);
    if (res < out.residual) {
      out.residual = res;
      out.witness = u;  // already in the |U_ji|^2 = P_ij slot convention
    }
    if (out.residual < 1e-22) break;
  }
  out.unistochastic = out.residual < 1e-10;
  return out;
}

}  // namespace embedlab
