#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace embedlab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXd;
using CMatrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXd;
using CVector = Eigen::VectorXcd;

namespace tol {
// contract tolerances; shared across all modules
inline constexpr double clamp = 1e-12;      // negatives above this are hard errors
inline constexpr double sum = 1e-10;        // probability / trace normalisation
inline constexpr double herm = 1e-10;       // Hermiticity / completeness
inline constexpr double psd = 1e-10;        // eigenvalue floor for states
inline constexpr double verdict = 1e-12;    // slack on embeddability inequalities
}  // namespace tol

// stand-in duration for limit cases that only converge as t -> infinity
inline constexpr double kInfiniteTimeTruncation = 40.0;

inline void require(bool cond, const std::string& what) {
  if (!cond) throw std::invalid_argument(what);
}

inline bool finite(const Matrix& m) { return m.allFinite(); }
inline bool finite(const CMatrix& m) { return m.allFinite(); }

// entries in [-clamp, 0) are rounding debris and get snapped to zero;
// anything more negative is a real contract violation handled by the caller
inline Matrix clamp_nonnegative(Matrix m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (m(i, j) < 0.0 && m(i, j) >= -tol::clamp) m(i, j) = 0.0;
  return m;
}

class ProbVector {
 public:
  explicit ProbVector(Vector v) : v_(std::move(v)) {
    require(v_.size() > 0, "probability vector: empty");
    require(v_.allFinite(), "probability vector: non-finite entry");
    for (Eigen::Index i = 0; i < v_.size(); ++i) {
      if (v_(i) < 0.0 && v_(i) >= -tol::clamp) v_(i) = 0.0;
      require(v_(i) >= 0.0, "probability vector: negative entry");
    }
    require(std::abs(v_.sum() - 1.0) <= tol::sum,
            "probability vector: entries sum to " + std::to_string(v_.sum()));
  }

  int d() const { return static_cast<int>(v_.size()); }
  double operator()(int i) const { return v_(i); }
  const Vector& vec() const { return v_; }

 private:
  Vector v_;
};

// column-stochastic: entry (i, j) is the probability of output i given input j,
// so every column sums to one
class StochasticMatrix {
 public:
  explicit StochasticMatrix(Matrix m) : m_(std::move(m)) {
    require(m_.rows() == m_.cols() && m_.rows() > 0, "stochastic matrix: not square");
    require(finite(m_), "stochastic matrix: non-finite entry");
    m_ = clamp_nonnegative(std::move(m_));
    require((m_.array() >= 0.0).all(), "stochastic matrix: negative entry");
    for (Eigen::Index j = 0; j < m_.cols(); ++j)
      require(std::abs(m_.col(j).sum() - 1.0) <= tol::sum,
              "stochastic matrix: column " + std::to_string(j) + " sums to " +
                  std::to_string(m_.col(j).sum()));
  }

  int d() const { return static_cast<int>(m_.rows()); }
  double operator()(int i, int j) const { return m_(i, j); }
  const Matrix& mat() const { return m_; }

  ProbVector apply(const ProbVector& p) const {
    require(p.d() == d(), "stochastic matrix: dimension mismatch");
    return ProbVector(m_ * p.vec());
  }

 private:
  Matrix m_;
};

// continuous-time rate matrix: nonnegative off-diagonal rates, columns sum to zero
class GeneratorMatrix {
 public:
  explicit GeneratorMatrix(Matrix m) : m_(std::move(m)) {
    require(m_.rows() == m_.cols() && m_.rows() > 0, "generator matrix: not square");
    require(finite(m_), "generator matrix: non-finite entry");
    for (Eigen::Index j = 0; j < m_.cols(); ++j)
      for (Eigen::Index i = 0; i < m_.rows(); ++i) {
        if (i == j) continue;
        if (m_(i, j) < 0.0 && m_(i, j) >= -tol::clamp) m_(i, j) = 0.0;
        require(m_(i, j) >= 0.0, "generator matrix: negative off-diagonal rate");
      }
    for (Eigen::Index j = 0; j < m_.cols(); ++j)
      require(std::abs(m_.col(j).sum()) <= tol::sum,
              "generator matrix: column " + std::to_string(j) + " sums to " +
                  std::to_string(m_.col(j).sum()));
  }

  int d() const { return static_cast<int>(m_.rows()); }
  double operator()(int i, int j) const { return m_(i, j); }
  const Matrix& mat() const { return m_; }

 private:
  Matrix m_;
};

class DensityMatrix {
 public:
  explicit DensityMatrix(CMatrix m) : m_(std::move(m)) {
    require(m_.rows() == m_.cols() && m_.rows() > 0, "density matrix: not square");
    require(finite(m_), "density matrix: non-finite entry");
    require((m_ - m_.adjoint()).cwiseAbs().maxCoeff() <= tol::herm,
            "density matrix: not Hermitian");
    require(std::abs(m_.trace().real() - 1.0) <= tol::sum &&
                std::abs(m_.trace().imag()) <= tol::sum,
            "density matrix: trace is not one");
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (m_ + m_.adjoint()),
                                              Eigen::EigenvaluesOnly);
    require(es.eigenvalues().minCoeff() >= -tol::psd,
            "density matrix: negative eigenvalue " +
                std::to_string(es.eigenvalues().minCoeff()));
  }

  int d() const { return static_cast<int>(m_.rows()); }
  Complex operator()(int i, int j) const { return m_(i, j); }
  const CMatrix& mat() const { return m_; }

 private:
  CMatrix m_;
};

inline DensityMatrix basis_state(int d, int j) {
  CMatrix m = CMatrix::Zero(d, d);
  m(j, j) = 1.0;
  return DensityMatrix(std::move(m));
}

inline DensityMatrix diagonal_state(const ProbVector& p) {
  CMatrix m = CMatrix::Zero(p.d(), p.d());
  for (int i = 0; i < p.d(); ++i) m(i, i) = p(i);
  return DensityMatrix(std::move(m));
}

class KrausChannel {
 public:
  explicit KrausChannel(std::vector<CMatrix> ops) : ops_(std::move(ops)) {
    require(!ops_.empty(), "kraus channel: no operators");
    const Eigen::Index d = ops_.front().rows();
    require(d > 0 && ops_.front().cols() == d, "kraus channel: operator not square");
    CMatrix sum = CMatrix::Zero(d, d);
    for (const auto& k : ops_) {
      require(k.rows() == d && k.cols() == d, "kraus channel: mixed dimensions");
      require(finite(k), "kraus channel: non-finite entry");
      sum += k.adjoint() * k;
    }
    require((sum - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff() <= tol::herm,
            "kraus channel: operators do not resolve the identity");
  }

  int d() const { return static_cast<int>(ops_.front().rows()); }
  const std::vector<CMatrix>& ops() const { return ops_; }

  CMatrix apply_raw(const CMatrix& rho) const {
    CMatrix out = CMatrix::Zero(rho.rows(), rho.cols());
    for (const auto& k : ops_) out += k * rho * k.adjoint();
    return out;
  }
  DensityMatrix apply(const DensityMatrix& rho) const {
    return DensityMatrix(apply_raw(rho.mat()));
  }

 private:
  std::vector<CMatrix> ops_;
};

// generator of a quantum Markov semigroup in standard form: a Hamiltonian part
// plus a completely positive part given by Kraus-style jump operators (the jump
// set need not resolve the identity; the anticommutator term restores trace)
struct Lindbladian {
  CMatrix hamiltonian;
  std::vector<CMatrix> jump_ops;

  Lindbladian(CMatrix h, std::vector<CMatrix> jumps)
      : hamiltonian(std::move(h)), jump_ops(std::move(jumps)) {
    require(hamiltonian.rows() == hamiltonian.cols() && hamiltonian.rows() > 0,
            "lindbladian: hamiltonian not square");
    require(finite(hamiltonian), "lindbladian: non-finite hamiltonian");
    require((hamiltonian - hamiltonian.adjoint()).cwiseAbs().maxCoeff() <= tol::herm,
            "lindbladian: hamiltonian not Hermitian");
    for (const auto& k : jump_ops) {
      require(k.rows() == hamiltonian.rows() && k.cols() == hamiltonian.cols(),
              "lindbladian: jump operator dimension mismatch");
      require(finite(k), "lindbladian: non-finite jump operator");
    }
  }

  int d() const { return static_cast<int>(hamiltonian.rows()); }

  CMatrix apply_raw(const CMatrix& rho) const {
    const CMatrix& h = hamiltonian;
    CMatrix out = Complex(0.0, -1.0) * (h * rho - rho * h);
    if (!jump_ops.empty()) {
      CMatrix absorbed = CMatrix::Zero(rho.rows(), rho.cols());
      for (const auto& k : jump_ops) {
        out += k * rho * k.adjoint();
        absorbed += k.adjoint() * k;
      }
      out -= 0.5 * (absorbed * rho + rho * absorbed);
    }
    return out;
  }
};

inline CVector vec_column_major(const CMatrix& m) {
  return Eigen::Map<const CVector>(m.data(), m.size());
}

inline CMatrix unvec_column_major(const CVector& v, int d) {
  return Eigen::Map<const CMatrix>(v.data(), d, d);
}

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// matrix acting on column-major vectorised operators: vec(A X B) = (B^T (x) A) vec(X)
class Superoperator {
 public:
  explicit Superoperator(CMatrix s) : s_(std::move(s)) {
    require(s_.rows() == s_.cols() && s_.rows() > 0, "superoperator: not square");
    const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(double(s_.rows()))));
    require(d * d == s_.rows(), "superoperator: side is not a perfect square");
    require(finite(s_), "superoperator: non-finite entry");
  }

  int d() const { return static_cast<int>(std::llround(std::sqrt(double(s_.rows())))); }
  const CMatrix& mat() const { return s_; }

  CMatrix apply_raw(const CMatrix& rho) const {
    return unvec_column_major(s_ * vec_column_major(rho), d());
  }

  static Superoperator left_right(const CMatrix& a, const CMatrix& b) {
    return Superoperator(kron(b.transpose(), a));
  }

  static Superoperator of_lindbladian(const Lindbladian& gen) {
    const int d = gen.d();
    const CMatrix id = CMatrix::Identity(d, d);
    const CMatrix& h = gen.hamiltonian;
    CMatrix s = Complex(0.0, -1.0) * (kron(id, h) - kron(h.transpose(), id));
    if (!gen.jump_ops.empty()) {
      CMatrix absorbed = CMatrix::Zero(d, d);
      for (const auto& k : gen.jump_ops) {
        s += kron(k.conjugate(), k);
        absorbed += k.adjoint() * k;
      }
      s -= 0.5 * (kron(id, absorbed) + kron(absorbed.transpose(), id));
    }
    return Superoperator(std::move(s));
  }

  static Superoperator of_channel(const KrausChannel& e) {
    const int d = e.d();
    CMatrix s = CMatrix::Zero(d * d, d * d);
    for (const auto& k : e.ops()) s += kron(k.conjugate(), k);
    return Superoperator(std::move(s));
  }

 private:
  CMatrix s_;
};

// scaling-and-squaring Pade exponential (relative accuracy ~1e-12 for ||M t|| <= 50)
inline Matrix expm(const Matrix& m, double t = 1.0) {
  require(finite(m) && std::isfinite(t), "expm: non-finite input");
  return (m * t).exp();
}

inline CMatrix expm(const CMatrix& m, Complex t = Complex(1.0, 0.0)) {
  require(finite(m) && std::isfinite(t.real()) && std::isfinite(t.imag()),
          "expm: non-finite input");
  return (m * t).exp();
}

inline StochasticMatrix expm(const GeneratorMatrix& gen, double t) {
  require(t >= 0.0, "expm: negative duration for a rate matrix");
  return StochasticMatrix(expm(gen.mat(), t));
}

// one segment of a piecewise-constant rate schedule; infinite segments are
// truncated at kInfiniteTimeTruncation, which leaves a residual of order
// exp(-gap * truncation) in the slowest decaying mode
struct ClassicalStage {
  GeneratorMatrix generator;
  double duration = 1.0;
  bool infinite = false;

  ClassicalStage(GeneratorMatrix gen, double t, bool inf = false)
      : generator(std::move(gen)), duration(t), infinite(inf) {
    require(std::isfinite(duration) && duration >= 0.0,
            "classical stage: negative duration");
  }

  double effective_duration() const {
    return infinite ? kInfiniteTimeTruncation : duration;
  }
};

using ClassicalSchedule = std::vector<ClassicalStage>;

// ordered product of segment exponentials; the first segment acts first
inline StochasticMatrix propagate_classical(const ClassicalSchedule& schedule, int d) {
  require(d > 0, "propagate_classical: bad dimension");
  Matrix acc = Matrix::Identity(d, d);
  for (const auto& stage : schedule) {
    require(stage.generator.d() == d, "propagate_classical: dimension mismatch");
    acc = expm(stage.generator.mat(), stage.effective_duration()) * acc;
  }
  return StochasticMatrix(std::move(acc));
}

struct LindbladStage {
  Lindbladian generator;
  double duration = 1.0;
  bool infinite = false;

  LindbladStage(Lindbladian gen, double t, bool inf = false)
      : generator(std::move(gen)), duration(t), infinite(inf) {
    require(std::isfinite(duration) && duration >= 0.0,
            "lindblad stage: negative duration");
  }

  double effective_duration() const {
    return infinite ? kInfiniteTimeTruncation : duration;
  }

  Superoperator propagator() const {
    return Superoperator(
        expm(Superoperator::of_lindbladian(generator).mat(),
             Complex(effective_duration(), 0.0)));
  }
};

inline DensityMatrix propagate_lindblad(const std::vector<LindbladStage>& stages,
                                        const DensityMatrix& rho) {
  CMatrix cur = rho.mat();
  for (const auto& stage : stages) {
    require(stage.generator.d() == rho.d(), "propagate_lindblad: dimension mismatch");
    cur = stage.propagator().apply_raw(cur);
  }
  return DensityMatrix(std::move(cur));
}

// classical transition probabilities observed on basis states through a channel
inline StochasticMatrix channel_to_stochastic(const KrausChannel& e) {
  const int d = e.d();
  Matrix p(d, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) {
      double acc = 0.0;
      for (const auto& k : e.ops()) acc += std::norm(k(i, j));
      p(i, j) = acc;
    }
  return StochasticMatrix(std::move(p));
}

inline KrausChannel dephasing_channel(int d) {
  require(d > 0, "dephasing channel: bad dimension");
  std::vector<CMatrix> ops;
  ops.reserve(d);
  for (int k = 0; k < d; ++k) {
    CMatrix op = CMatrix::Zero(d, d);
    op(k, k) = 1.0;
    ops.push_back(std::move(op));
  }
  return KrausChannel(std::move(ops));
}

// rate matrix lifted to a dissipator with jumps sqrt(rate) |i><j|; restricted to
// diagonal states this reproduces the classical semigroup exactly and kills
// coherences at rates set by the exit rates
inline Lindbladian lindblad_from_generator(const GeneratorMatrix& gen) {
  const int d = gen.d();
  std::vector<CMatrix> jumps;
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) {
      if (i == j || gen(i, j) == 0.0) continue;
      CMatrix k = CMatrix::Zero(d, d);
      k(i, j) = std::sqrt(gen(i, j));
      jumps.push_back(std::move(k));
    }
  return Lindbladian(CMatrix::Zero(d, d), std::move(jumps));
}

// unitary conjugation as a channel
inline KrausChannel unitary_channel(const CMatrix& u) {
  require(u.rows() == u.cols() && u.rows() > 0, "unitary channel: not square");
  require((u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols()))
                  .cwiseAbs()
                  .maxCoeff() <= tol::herm,
          "unitary channel: matrix is not unitary");
  return KrausChannel({u});
}

}  // namespace embedlab
