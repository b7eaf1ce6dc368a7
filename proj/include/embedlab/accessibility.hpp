#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "embedlab/lp.hpp"
#include "embedlab/quantum_embed.hpp"

namespace embedlab {

// ---------------------------------------------------------------------------
// classical accessibility with memory: a direct feasibility oracle
// ---------------------------------------------------------------------------

// is there any stochastic matrix (memory allowed) carrying p to q while fixing
// gamma? phrased literally as a linear feasibility problem in the d^2 entries
inline bool accessible_with_memory(const ProbVector& p, const ProbVector& q,
                                   const ProbVector& gamma) {
  const int d = p.d();
  require(q.d() == d && gamma.d() == d, "accessible_with_memory: dimension mismatch");
  for (int i = 0; i < d; ++i)
    require(gamma(i) > 0.0, "accessible_with_memory: fixed point must be full rank");
  Matrix a = Matrix::Zero(3 * d, d * d);
  Vector b(3 * d);
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) a(j, j * d + i) = 1.0;
    b(j) = 1.0;
  }
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      a(d + i, j * d + i) = p(j);
      a(2 * d + i, j * d + i) = gamma(j);
    }
    b(d + i) = q(i);
    b(2 * d + i) = gamma(i);
  }
  return lp_feasible(a, b);
}

inline bool majorises(const ProbVector& p, const ProbVector& q) {
  const int d = p.d();
  require(q.d() == d, "majorises: dimension mismatch");
  std::vector<double> ps(d), qs(d);
  for (int i = 0; i < d; ++i) {
    ps[i] = p(i);
    qs[i] = q(i);
  }
  std::sort(ps.begin(), ps.end(), std::greater<>());
  std::sort(qs.begin(), qs.end(), std::greater<>());
  double pp = 0.0, qq = 0.0;
  for (int k = 0; k < d; ++k) {
    pp += ps[k];
    qq += qs[k];
    if (pp < qq - 1e-12) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// two-level closed forms for a thermal fixed point (energies 0 and E)
// ---------------------------------------------------------------------------

// ground population of the fixed point itself
inline double thermal_ground_population(double beta_e) {
  require(std::isfinite(beta_e), "thermal_ground_population: non-finite argument");
  return 1.0 / (1.0 + std::exp(-beta_e));
}

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// reachable ground populations without memory: the segment between the start
// and the fixed point, nothing beyond it
inline Interval qubit_memoryless_classical_interval(double p, double beta_e) {
  require(p >= 0.0 && p <= 1.0, "qubit interval: population out of range");
  const double g = thermal_ground_population(beta_e);
  return {std::min(p, g), std::max(p, g)};
}

// with memory the boundary extends to the full swap limit 1 - e^{-betaE} p on
// the far side of the fixed point
inline Interval qubit_memory_classical_interval(double p, double beta_e) {
  require(p >= 0.0 && p <= 1.0, "qubit interval: population out of range");
  const double g = thermal_ground_population(beta_e);
  const double swapped = 1.0 - std::exp(-beta_e) * p;
  if (p <= g) return {p, swapped};
  return {swapped, p};
}

// ---------------------------------------------------------------------------
// uniform-fixed-point constructive path: permutation + partial swaps
// ---------------------------------------------------------------------------

// symmetric hopping between i and j; annihilates the uniform distribution
inline GeneratorMatrix partial_swap_generator(int i, int j, int d) {
  require(i != j && i >= 0 && j >= 0 && i < d && j < d,
          "partial_swap_generator: bad index pair");
  Matrix l = Matrix::Zero(d, d);
  l(i, i) = -0.5;
  l(j, j) = -0.5;
  l(i, j) = 0.5;
  l(j, i) = 0.5;
  return GeneratorMatrix(std::move(l));
}

struct PartialSwapStage {
  int i = 0;
  int j = 0;
  double duration = 0.0;
  bool infinite = false;  // full averaging of the pair, reached only in the limit
};

struct SwapSchedule {
  std::vector<int> permutation;  // relabeling applied before the swap stages
  std::vector<PartialSwapStage> stages;

  ProbVector apply(const ProbVector& p) const {
    const int d = p.d();
    require(static_cast<int>(permutation.size()) == d,
            "swap schedule: dimension mismatch");
    Vector v(d);
    for (int k = 0; k < d; ++k) v(permutation[k]) = p(k);
    for (const auto& s : stages) {
      const double t =
          s.infinite ? kInfiniteTimeTruncation : s.duration;
      Matrix step = expm(partial_swap_generator(s.i, s.j, d).mat(), t);
      v = step * v;
    }
    return ProbVector(std::move(v));
  }
};

// send p to q through gamma-free operations when the fixed point is uniform:
// first relabel p to be ordered like q, then chain pairwise averagings, each a
// T-transform; at most d - 1 of them are needed
inline SwapSchedule uniform_fixed_point_path(const ProbVector& p,
                                             const ProbVector& q) {
  const int d = p.d();
  require(q.d() == d, "uniform_fixed_point_path: dimension mismatch");
  require(majorises(p, q),
          "uniform_fixed_point_path: target is not accessible (no dominance)");

  std::vector<int> order_p(d), order_q(d);
  std::iota(order_p.begin(), order_p.end(), 0);
  std::iota(order_q.begin(), order_q.end(), 0);
  std::stable_sort(order_p.begin(), order_p.end(),
                   [&](int a, int b) { return p(a) > p(b); });
  std::stable_sort(order_q.begin(), order_q.end(),
                   [&](int a, int b) { return q(a) > q(b); });

  SwapSchedule out;
  out.permutation.assign(d, 0);
  for (int k = 0; k < d; ++k) out.permutation[order_p[k]] = order_q[k];

  std::vector<double> cur(d), tgt(d);
  for (int k = 0; k < d; ++k) cur[out.permutation[k]] = p(k);
  for (int k = 0; k < d; ++k) tgt[k] = q(k);

  // scan in target-descending order: there the first mismatch is always a
  // surplus, a deficit follows it, and the surplus level sits strictly above
  // the deficit level, so every averaging coefficient stays in (0, 1]
  const double tol = 1e-13;
  for (int guard = 0; guard <= d; ++guard) {
    int i = -1, j = -1;
    int ki = -1;
    for (int k = 0; k < d; ++k)
      if (cur[order_q[k]] > tgt[order_q[k]] + tol) {
        ki = k;
        i = order_q[k];
        break;
      }
    if (i < 0) break;
    for (int k = ki + 1; k < d; ++k)
      if (cur[order_q[k]] < tgt[order_q[k]] - tol) {
        j = order_q[k];
        break;
      }
    require(j >= 0, "uniform_fixed_point_path: greedy ran out of deficit slots");
    const double transfer = std::min(cur[i] - tgt[i], tgt[j] - cur[j]);
    const double gap = cur[i] - cur[j];
    const double lambda = 2.0 * transfer / gap;
    PartialSwapStage stage;
    stage.i = i;
    stage.j = j;
    if (lambda >= 1.0 - 1e-14) {
      stage.infinite = true;  // both levels meet at the pair average
    } else {
      stage.duration = -std::log1p(-lambda);
    }
    out.stages.push_back(stage);
    cur[i] -= transfer;
    cur[j] += transfer;
  }
  for (int k = 0; k < d; ++k)
    require(std::abs(cur[k] - tgt[k]) <= 1e-10,
            "uniform_fixed_point_path: greedy failed to converge");
  require(static_cast<int>(out.stages.size()) <= d - 1,
          "uniform_fixed_point_path: too many stages");
  return out;
}

// ---------------------------------------------------------------------------
// qubit Bloch-ball geometry for a fixed point on the z axis
// ---------------------------------------------------------------------------

struct BlochState {
  double x = 0.0, y = 0.0, z = 0.0;

  BlochState() = default;
  BlochState(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {
    require(std::isfinite(x) && std::isfinite(y) && std::isfinite(z),
            "bloch state: non-finite component");
    require(x * x + y * y + z * z <= 1.0 + 1e-10,
            "bloch state: outside the unit ball");
  }

  CMatrix to_matrix() const {
    CMatrix m(2, 2);
    m << Complex(0.5 * (1.0 + z), 0.0), Complex(0.5 * x, -0.5 * y),
        Complex(0.5 * x, 0.5 * y), Complex(0.5 * (1.0 - z), 0.0);
    return m;
  }
  DensityMatrix to_density() const { return DensityMatrix(to_matrix()); }
};

inline BlochState bloch_of(const CMatrix& rho) {
  require(rho.rows() == 2 && rho.cols() == 2, "bloch_of: not a qubit");
  return BlochState(2.0 * rho(1, 0).real(), 2.0 * rho(1, 0).imag(),
                    (rho(0, 0) - rho(1, 1)).real());
}

struct QubitMonotones {
  double r_plus = 0.0;
  double r_minus = 0.0;
  double delta = 0.0;
};

// the azimuth is free (z rotations commute with the fixed point), so only the
// transverse magnitude enters
inline QubitMonotones qubit_monotones(const BlochState& s, double zeta) {
  require(std::abs(zeta) <= 1.0, "qubit_monotones: fixed point outside the ball");
  const double xe = std::hypot(s.x, s.y);
  QubitMonotones m;
  m.delta = std::sqrt((s.z - zeta) * (s.z - zeta) + xe * xe * (1.0 - zeta * zeta));
  m.r_plus = m.delta + zeta * s.z;
  m.r_minus = m.delta - zeta * s.z;
  return m;
}

inline bool qubit_accessible(const BlochState& from, const BlochState& to,
                             double zeta) {
  QubitMonotones a = qubit_monotones(from, zeta);
  QubitMonotones b = qubit_monotones(to, zeta);
  return b.r_plus <= a.r_plus + 1e-12 && b.r_minus <= a.r_minus + 1e-12;
}

struct ExtremalCircles {
  double c0 = 0.0, r0 = 0.0;  // constant-R+ circle: center (0,0,c0), radius r0
  double c1 = 0.0, r1 = 0.0;  // constant-R- circle
};

inline ExtremalCircles extremal_circles(const BlochState& s, double zeta) {
  require(std::abs(zeta) < 1.0,
          "extremal_circles: fixed point must be full rank (|zeta| < 1)");
  QubitMonotones m = qubit_monotones(s, zeta);
  ExtremalCircles c;
  c.r0 = (m.r_plus - zeta * zeta) / (1.0 - zeta * zeta);
  c.c0 = zeta * (1.0 - c.r0);
  c.r1 = (m.r_minus + zeta * zeta) / (1.0 - zeta * zeta);
  c.c1 = zeta * (1.0 + c.r1);
  return c;
}

// ---------------------------------------------------------------------------
// channel factory for qubit fixed-point-preserving maps
// ---------------------------------------------------------------------------

namespace detail {

inline CMatrix z_rotation(double phi) {
  CMatrix u = CMatrix::Zero(2, 2);
  u(0, 0) = std::polar(1.0, 0.5 * phi);
  u(1, 1) = std::polar(1.0, -0.5 * phi);
  return u;
}

// real unit vector with Bloch direction (bx, 0, bz)
inline Eigen::Vector2d section_vector(double bx, double bz) {
  const double theta = std::atan2(bx, bz);
  return {std::cos(0.5 * theta), std::sin(0.5 * theta)};
}

struct SectionState {
  double x = 0.0;  // transverse magnitude, >= 0
  double z = 0.0;
};

// Kraus triple moving `from` to `to` along one of the two extremal circles of
// `from`; the closed-form parameters leave a basis orientation free, so
// all four (psi <-> psi-perp) gauges are tried and the result is validated
// directly; nullopt when every gauge degenerates
inline std::optional<std::vector<CMatrix>> circle_kraus(const SectionState& from,
                                                        const SectionState& to,
                                                        double zeta, int branch) {
  ExtremalCircles circles =
      extremal_circles(BlochState(from.x, 0.0, from.z), zeta);
  const double c = branch == 0 ? circles.c0 : circles.c1;
  const double r = branch == 0 ? circles.r0 : circles.r1;
  if (r < 1e-12) return std::nullopt;
  const double sgn = branch == 0 ? 1.0 : -1.0;

  const Matrix gamma_mat =
      (Matrix(2, 2) << 0.5 * (1.0 + zeta), 0.0, 0.0, 0.5 * (1.0 - zeta))
          .finished();
  const Matrix rho_from =
      (Matrix(2, 2) << 0.5 * (1.0 + from.z), 0.5 * from.x, 0.5 * from.x,
       0.5 * (1.0 - from.z))
          .finished();
  const Matrix rho_to = (Matrix(2, 2) << 0.5 * (1.0 + to.z), 0.5 * to.x,
                         0.5 * to.x, 0.5 * (1.0 - to.z))
                            .finished();

  for (int gauge = 0; gauge < 4; ++gauge) {
    Eigen::Vector2d psi = section_vector(sgn * from.x / r, sgn * (from.z - c) / r);
    Eigen::Vector2d psi_p = section_vector(sgn * to.x / r, sgn * (to.z - c) / r);
    Matrix u(2, 2), u_p(2, 2);
    u << psi(0), psi(1), -psi(1), psi(0);
    u_p << psi_p(0), psi_p(1), -psi_p(1), psi_p(0);
    if (gauge & 1) u = (Matrix(2, 2) << 0, 1, 1, 0).finished() * u;
    if (gauge & 2) u_p = (Matrix(2, 2) << 0, 1, 1, 0).finished() * u_p;

    const Matrix g = u * gamma_mat * u.transpose();
    const Matrix g_p = u_p * gamma_mat * u_p.transpose();
    const double a = g(0, 0), a_p = g_p(0, 0);
    const double mod = std::sqrt(std::max(a * (1.0 - a), 0.0));
    const double mod_p = std::sqrt(std::max(a_p * (1.0 - a_p), 0.0));
    const double eps = mod > 1e-12 ? g(0, 1) / mod : 0.0;
    const double eps_p = mod_p > 1e-12 ? g_p(0, 1) / mod_p : 0.0;

    if (a_p < 1e-12 || 1.0 - a < 1e-12) continue;
    const double den = 1.0 - (a / a_p) * (1.0 - eps * eps);
    if (std::abs(den) < 1e-10) continue;
    if (a_p - a < -1e-12) continue;  // this gauge has the populations misordered
    const double rise = std::max(a_p - a, 0.0);
    const double gamma_num = (1.0 - eps_p * eps_p) - (a / a_p) * (1.0 - eps * eps);
    const double gamma_ratio = gamma_num / den;
    if (gamma_ratio < -1e-12) continue;

    const double alpha = std::sqrt(a * (1.0 - a_p) / (a_p * (1.0 - a))) * eps *
                         eps_p / den;
    const double beta =
        std::sqrt(rise * (1.0 - a_p) / ((1.0 - a) * a_p)) * eps_p / den;
    const double gamma_c = std::sqrt(std::max(gamma_ratio, 0.0)) *
                           std::sqrt((1.0 - a_p) / (1.0 - a));
    const double omega = std::sqrt(rise / (1.0 - a));

    Matrix a_star = (Matrix(2, 2) << 1, 0, 0, alpha).finished();
    Matrix b_star = (Matrix(2, 2) << 0, omega, 0, beta).finished();
    Matrix c_star = (Matrix(2, 2) << 0, 0, 0, gamma_c).finished();
    std::vector<Matrix> kraus{u_p.transpose() * a_star * u,
                              u_p.transpose() * b_star * u,
                              u_p.transpose() * c_star * u};

    Matrix completeness = Matrix::Zero(2, 2);
    Matrix mapped_gamma = Matrix::Zero(2, 2);
    Matrix mapped_rho = Matrix::Zero(2, 2);
    for (const auto& k : kraus) {
      completeness += k.transpose() * k;
      mapped_gamma += k * gamma_mat * k.transpose();
      mapped_rho += k * rho_from * k.transpose();
    }
    if ((completeness - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() > 1e-10)
      continue;
    if ((mapped_gamma - gamma_mat).cwiseAbs().maxCoeff() > 1e-10) continue;
    if ((mapped_rho - rho_to).cwiseAbs().maxCoeff() > 1e-10) continue;

    std::vector<CMatrix> out;
    for (const auto& k : kraus) out.push_back(k.cast<Complex>());
    return out;
  }
  return std::nullopt;
}

// recursive arc split: a failed direct build is replaced by the composition of
// two half-arc channels, which keeps every residual at validation level
inline std::optional<std::vector<CMatrix>> circle_kraus_split(
    const SectionState& from, const SectionState& to, double zeta, int branch,
    int depth) {
  if (auto direct = circle_kraus(from, to, zeta, branch)) return direct;
  if (depth == 0) return std::nullopt;
  ExtremalCircles circles =
      extremal_circles(BlochState(from.x, 0.0, from.z), zeta);
  const double c = branch == 0 ? circles.c0 : circles.c1;
  const double r = branch == 0 ? circles.r0 : circles.r1;
  // midpoint along the arc, by angle
  const double th_a = std::atan2(from.x, from.z - c);
  const double th_b = std::atan2(to.x, to.z - c);
  const double th_m = 0.5 * (th_a + th_b);
  SectionState mid{r * std::sin(th_m), c + r * std::cos(th_m)};
  auto first = circle_kraus_split(from, mid, zeta, branch, depth - 1);
  if (!first) return std::nullopt;
  auto second = circle_kraus_split(mid, to, zeta, branch, depth - 1);
  if (!second) return std::nullopt;
  std::vector<CMatrix> out;
  for (const auto& k2 : *second)
    for (const auto& k1 : *first) out.push_back(k2 * k1);
  return out;
}

// maximally mixed fixed point: the extremal construction degenerates (the
// three-operator denominators vanish identically), but the channel algebra is
// simpler there — rotate the section and shrink toward the centre
inline std::vector<CMatrix> unital_section_kraus(const SectionState& from,
                                                 const SectionState& to) {
  const double rf = std::hypot(from.x, from.z);
  const double rt = std::hypot(to.x, to.z);
  require(rf > 0.0, "unital qubit map: start is already the fixed point");
  const double shrink = std::min(rt / rf, 1.0);
  const double phi =
      std::atan2(to.x, to.z) - std::atan2(from.x, from.z);  // rotation about y
  Matrix u(2, 2);
  u << std::cos(0.5 * phi), -std::sin(0.5 * phi), std::sin(0.5 * phi),
      std::cos(0.5 * phi);
  {
    // fix the conjugation orientation empirically: the section vector must map
    // onto the target direction, not its mirror image
    const double tx = rt > 0.0 ? to.x / rt : 0.0;
    const double tz = rt > 0.0 ? to.z / rt : 1.0;
    Matrix rho = (Matrix(2, 2) << 0.5 * (1.0 + from.z / rf), 0.5 * from.x / rf,
                  0.5 * from.x / rf, 0.5 * (1.0 - from.z / rf))
                     .finished();
    Matrix direct = u * rho * u.transpose();
    Matrix mirrored = u.transpose() * rho * u;
    const double err_direct = std::hypot(2.0 * direct(1, 0) - tx,
                                         direct(0, 0) - direct(1, 1) - tz);
    const double err_mirror = std::hypot(2.0 * mirrored(1, 0) - tx,
                                         mirrored(0, 0) - mirrored(1, 1) - tz);
    if (err_mirror < err_direct) u.transposeInPlace();
  }
  std::vector<CMatrix> ops;
  ops.push_back(std::sqrt(shrink) * u.cast<Complex>());
  const double leak = 0.25 * (1.0 - shrink);
  if (leak > 0.0) {
    CMatrix x = CMatrix::Zero(2, 2), y = CMatrix::Zero(2, 2),
            z = CMatrix::Zero(2, 2);
    x(0, 1) = 1.0;
    x(1, 0) = 1.0;
    y(0, 1) = Complex(0.0, -1.0);
    y(1, 0) = Complex(0.0, 1.0);
    z(0, 0) = 1.0;
    z(1, 1) = -1.0;
    ops.push_back(std::sqrt(leak) * CMatrix::Identity(2, 2));
    ops.push_back(std::sqrt(leak) * x);
    ops.push_back(std::sqrt(leak) * y);
    ops.push_back(std::sqrt(leak) * z);
  }
  return ops;
}

inline std::vector<CMatrix> thermal_reset_kraus(double zeta) {
  const double g0 = 0.5 * (1.0 + zeta), g1 = 0.5 * (1.0 - zeta);
  std::vector<CMatrix> ops;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      CMatrix k = CMatrix::Zero(2, 2);
      k(a, b) = std::sqrt(a == 0 ? g0 : g1);
      ops.push_back(std::move(k));
    }
  return ops;
}

}  // namespace detail

// channel with fixed point (0,0,zeta) carrying `from` exactly onto any
// accessible `to`: targets on an extremal circle get the three-operator
// construction; interior targets mix the circle channel reaching the ray exit
// point with a total reset to the fixed point
inline KrausChannel alberti_uhlmann_channel(const BlochState& from,
                                            const BlochState& to, double zeta) {
  require(std::abs(zeta) < 1.0,
          "alberti_uhlmann_channel: fixed point must be full rank");
  require(qubit_accessible(from, to, zeta),
          "alberti_uhlmann_channel: target is not accessible");

  const double phi_from = std::atan2(from.y, from.x);
  const double phi_to = std::atan2(to.y, to.x);
  detail::SectionState f{std::hypot(from.x, from.y), from.z};
  detail::SectionState t{std::hypot(to.x, to.y), to.z};

  auto finish = [&](std::vector<CMatrix> section_ops) {
    const CMatrix undo = detail::z_rotation(-phi_to);
    const CMatrix into = detail::z_rotation(phi_from);
    for (auto& k : section_ops) k = undo * k * into;
    return KrausChannel(std::move(section_ops));
  };

  if (std::abs(f.x - t.x) < 1e-12 && std::abs(f.z - t.z) < 1e-12) {
    std::vector<CMatrix> id{CMatrix::Identity(2, 2)};
    return finish(std::move(id));
  }
  if (std::hypot(t.x, t.z - zeta) < 1e-12)
    return finish(detail::thermal_reset_kraus(zeta));
  if (std::abs(zeta) < 1e-14)
    return finish(detail::unital_section_kraus(f, t));

  // every accessible target sits in the lens cut out by the two extremal
  // disks; the ray from the fixed point through the target leaves the lens at
  // a boundary point sigma on one definite circle
  ExtremalCircles circles = extremal_circles(BlochState(f.x, 0.0, f.z), zeta);
  const double dx = t.x, dz = t.z - zeta;
  const double qa = dx * dx + dz * dz;
  double u_exit = std::numeric_limits<double>::infinity();
  int exit_branch = -1;
  for (int branch = 0; branch < 2; ++branch) {
    const double c = branch == 0 ? circles.c0 : circles.c1;
    const double r = branch == 0 ? circles.r0 : circles.r1;
    const double qb = 2.0 * dz * (zeta - c);
    const double qc = (zeta - c) * (zeta - c) - r * r;
    const double disc = qb * qb - 4.0 * qa * qc;
    if (disc < 0.0) continue;
    const double root = (-qb + std::sqrt(disc)) / (2.0 * qa);  // outward root
    if (root > 0.0 && root < u_exit) {
      u_exit = root;
      exit_branch = branch;
    }
  }
  require(exit_branch >= 0 && std::isfinite(u_exit) && u_exit >= 1.0 - 1e-6,
          "alberti_uhlmann_channel: ray exit not found");
  detail::SectionState sigma{dx * u_exit, zeta + dz * u_exit};
  auto circle_ops = detail::circle_kraus_split(f, sigma, zeta, exit_branch, 2);
  if (!circle_ops && exit_branch >= 0) {
    // the other circle may pass through (numerically) the same exit point
    circle_ops = detail::circle_kraus_split(f, sigma, zeta, 1 - exit_branch, 2);
  }
  if (!circle_ops)
    throw std::runtime_error(
        "alberti_uhlmann_channel: boundary construction degenerated");
  if (u_exit <= 1.0 + 5e-10) {
    // target is on (or a hair outside of) the boundary: snap onto sigma
    return finish(std::move(*circle_ops));
  }
  const double share = 1.0 / u_exit;  // weight of the boundary branch
  std::vector<CMatrix> ops;
  for (const auto& k : *circle_ops) ops.push_back(std::sqrt(share) * k);
  for (const auto& k : detail::thermal_reset_kraus(zeta))
    ops.push_back(std::sqrt(1.0 - share) * k);
  return finish(std::move(ops));
}

// ---------------------------------------------------------------------------
// stepwise memoryless evolution hugging an extremal circle
// ---------------------------------------------------------------------------

enum class StopReason { MonotoneViolated, TargetReached, MaxSteps };

inline const char* to_string(StopReason r) {
  switch (r) {
    case StopReason::MonotoneViolated: return "MonotoneViolated";
    case StopReason::TargetReached: return "TargetReached";
    case StopReason::MaxSteps: return "MaxSteps";
  }
  return "?";
}

struct PathStep {
  BlochState state;
  DensityMatrix rho;
  KrausChannel channel;  // the one-shot map whose Lindbladian drove this step
};

struct PathTrajectory {
  BlochState start;
  std::vector<PathStep> steps;
  double delta = 0.0;
  StopReason stop_reason = StopReason::MaxSteps;
};

// march the z coordinate in increments of delta along the current state's
// extremal circle (upper circle for delta > 0, lower for delta < 0), each step
// evolving for unit time under exp(E - I) of the one-shot channel E
inline PathTrajectory extremal_path_evolve(const BlochState& start, double zeta,
                                           double delta, int max_steps = 10000) {
  require(delta != 0.0 && std::isfinite(delta), "extremal_path_evolve: bad step");
  require(std::abs(zeta) < 1.0,
          "extremal_path_evolve: fixed point must be full rank");
  PathTrajectory traj;
  traj.start = start;
  traj.delta = delta;

  CMatrix rho = start.to_matrix();
  for (int step = 0; step < max_steps; ++step) {
    const BlochState cur = bloch_of(rho);
    ExtremalCircles circles = extremal_circles(cur, zeta);
    const int branch = delta > 0.0 ? 0 : 1;
    const double c = branch == 0 ? circles.c0 : circles.c1;
    const double r = branch == 0 ? circles.r0 : circles.r1;
    const double z_next = cur.z + delta;
    const double disc = r * r - (z_next - c) * (z_next - c);
    if (disc < 0.0) {
      traj.stop_reason = StopReason::TargetReached;
      return traj;
    }
    const BlochState target(std::sqrt(std::max(disc, 0.0)), 0.0, z_next);
    if (!qubit_accessible(cur, target, zeta)) {
      traj.stop_reason = StopReason::MonotoneViolated;
      return traj;
    }
    KrausChannel one_shot = alberti_uhlmann_channel(cur, target, zeta);
    Superoperator generator(Superoperator::of_channel(one_shot).mat() -
                            CMatrix::Identity(4, 4));
    rho = Superoperator(expm(generator.mat(), Complex(1.0, 0.0))).apply_raw(rho);
    rho = 0.5 * (rho + rho.adjoint());
    traj.steps.push_back(
        PathStep{bloch_of(rho), DensityMatrix(rho), std::move(one_shot)});
  }
  traj.stop_reason = StopReason::MaxSteps;
  return traj;
}

// largest distance of any trajectory point from a reference circle, measured
// radially in the (transverse, z) half-plane
inline double max_radial_deviation(const PathTrajectory& traj, double center,
                                   double radius) {
  double worst = 0.0;
  for (const auto& s : traj.steps) {
    const double xe = std::hypot(s.state.x, s.state.y);
    worst = std::max(worst,
                     std::abs(std::hypot(xe, s.state.z - center) - radius));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// a non-classical thermalizer: one-shot map with a thermal fixed point that
// pumps coherence out of the excited level
// ---------------------------------------------------------------------------

inline Lindbladian exotic_thermalizer(double gamma0) {
  require(gamma0 > 0.0 && gamma0 < 1.0,
          "exotic_thermalizer: ground weight must lie strictly inside (0,1)");
  const double gamma1 = 1.0 - gamma0;
  // the |0><0| branch target (gamma - gamma1 |g><g|)/gamma0 loses positivity
  // for a minority ground level, and with it the whole map stops being CP
  require(gamma0 >= 0.5,
          "exotic_thermalizer: construction is completely positive only for "
          "ground weight >= 1/2");
  Eigen::Vector2d g_vec(std::sqrt(gamma0), std::sqrt(gamma1));
  Matrix sigma0 = Matrix::Zero(2, 2);
  sigma0(0, 0) = gamma0;
  sigma0(1, 1) = gamma1;
  sigma0 -= gamma1 * g_vec * g_vec.transpose();
  sigma0 /= gamma0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(sigma0);
  std::vector<CMatrix> jumps;
  for (int k = 0; k < 2; ++k) {
    const double mu = std::max(es.eigenvalues()(k), 0.0);
    if (mu < 1e-15) continue;
    CMatrix op = CMatrix::Zero(2, 2);
    op(0, 0) = std::sqrt(mu) * es.eigenvectors()(0, k);
    op(1, 0) = std::sqrt(mu) * es.eigenvectors()(1, k);
    jumps.push_back(std::move(op));
  }
  CMatrix cap = CMatrix::Zero(2, 2);
  cap(0, 1) = g_vec(0);
  cap(1, 1) = g_vec(1);
  jumps.push_back(std::move(cap));
  return Lindbladian(CMatrix::Zero(2, 2), std::move(jumps));
}

}  // namespace embedlab
