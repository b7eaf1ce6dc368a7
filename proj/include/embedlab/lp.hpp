#pragma once

#include <vector>

#include "embedlab/linalg.hpp"

namespace embedlab {

// phase-1 simplex for the feasibility question {x >= 0, A x = b}: drive the
// artificial variables to zero under Bland's rule (lowest eligible index for
// both entering and leaving), which cannot cycle; small dense problems only
inline bool lp_feasible(const Matrix& a, const Vector& b, double tol = 1e-9) {
  const int rows = static_cast<int>(a.rows());
  const int cols = static_cast<int>(a.cols());
  require(b.size() == rows, "lp_feasible: right-hand side length mismatch");
  require(rows > 0 && cols > 0, "lp_feasible: empty program");

  // tableau [A | I | b] with rows flipped so b >= 0
  Matrix t(rows, cols + rows + 1);
  for (int i = 0; i < rows; ++i) {
    const double sign = b(i) < 0.0 ? -1.0 : 1.0;
    t.row(i).head(cols) = sign * a.row(i);
    t.row(i).segment(cols, rows).setZero();
    t(i, cols + i) = 1.0;
    t(i, cols + rows) = sign * b(i);
  }
  std::vector<int> basis(rows);
  for (int i = 0; i < rows; ++i) basis[i] = cols + i;

  // reduced costs for minimizing the artificial sum, with the artificial
  // basis already priced out
  Vector cost = Vector::Zero(cols + rows);
  for (int j = 0; j < cols; ++j) cost(j) = -t.col(j).sum();
  double objective = -t.col(cols + rows).sum();  // minus the artificial sum

  const int max_pivots = 2000 * (rows + cols);
  for (int pivot = 0; ; ++pivot) {
    require(pivot < max_pivots, "lp_feasible: pivot budget exhausted");
    int enter = -1;
    for (int j = 0; j < cols + rows; ++j)
      if (cost(j) < -tol) {
        enter = j;
        break;
      }
    if (enter < 0) break;
    int leave = -1;
    double best_ratio = 0.0;
    for (int i = 0; i < rows; ++i) {
      if (t(i, enter) <= tol) continue;
      const double ratio = t(i, cols + rows) / t(i, enter);
      if (leave < 0 || ratio < best_ratio - 1e-15 ||
          (ratio < best_ratio + 1e-15 && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    require(leave >= 0, "lp_feasible: phase-1 column unbounded");  // cannot happen
    t.row(leave) /= t(leave, enter);
    for (int i = 0; i < rows; ++i) {
      if (i == leave) continue;
      t.row(i) -= t(i, enter) * t.row(leave);
    }
    objective -= cost(enter) * t(leave, cols + rows);
    cost -= cost(enter) * t.row(leave).head(cols + rows);
    basis[leave] = enter;
  }
  return objective > -tol;
}

}  // namespace embedlab
