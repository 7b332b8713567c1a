#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "speccol/densela.hpp"
#include "speccol/grids.hpp"
#include "speccol/interp.hpp"

namespace speccol {

/// Worked nonlinear Fokker-Planck problem on x in [0,1]:
///
///   y_t = [ -d/dx A(x,t,y) + d^2/dx^2 B(x,t,y) ] y
///
/// with A(x,t,y) = 4y/x - x/3, B(x,t,y) = y, y(x,0) = x^2, y(0,t) = 0,
/// y(1,t) = e^t. The exact solution is y(x,t) = x^2 e^t.
struct FokkerPlanckProblem {
  static double drift(double x, double /*t*/, double y) { return 4.0 * y / x - x / 3.0; }
  static double diffusion(double /*x*/, double /*t*/, double y) { return y; }
  static double left_value(double /*t*/) { return 0.0; }
  static double right_value(double t) { return std::exp(t); }
  static double initial_profile(double x) { return x * x; }
};

inline double exact_solution(double x, double t) { return x * x * std::exp(t); }

/// Residual of the expanded equation
///   y_t = (4y/x^2 - 8 y_x/x + 1/3 + 2 y_xx) y + (x/3 + 2 y_x) y_x
/// under the exact solution. Vanishes identically; kept as an oracle for the
/// algebraic expansion the scheme is built on.
inline double expanded_rhs_check(double x, double t) {
  if (!(x > 0.0)) throw std::domain_error("expanded_rhs_check requires x > 0 (1/x^2 term)");
  const double et = std::exp(t);
  const double y = x * x * et;
  const double yx = 2.0 * x * et;
  const double yxx = 2.0 * et;
  const double yt = x * x * et;
  const double rhs = (4.0 * y / (x * x) - 8.0 * yx / x + 1.0 / 3.0 + 2.0 * yxx) * y +
                     (x / 3.0 + 2.0 * yx) * yx;
  return yt - rhs;
}

/// Parameters of the theta-weighted collocation stepper.
struct SchemeConfig {
  int degree = 7;        // spatial degree N
  double alpha = 0.5;    // Gegenbauer grid parameter
  double theta = 0.5;    // 0 explicit, 1 implicit, 0.5 Crank-Nicolson
  double dt = 1e-3;
  double t_final = 1.0;

  void validate() const {
    if (degree < 2) throw std::invalid_argument("SchemeConfig: degree must be >= 2");
    if (!(alpha > 0.0)) throw std::domain_error("SchemeConfig: alpha must be > 0");
    if (!(theta >= 0.0 && theta <= 1.0)) throw std::domain_error("SchemeConfig: theta must lie in [0,1]");
    if (!(dt > 0.0)) throw std::domain_error("SchemeConfig: dt must be > 0");
    if (!(t_final >= 0.0)) throw std::domain_error("SchemeConfig: t_final must be >= 0");
  }
};

/// Nodal solution values C^n plus the time level they belong to.
struct SolverState {
  DenseVector c;
  double t = 0.0;
  int step_index = 0;
};

/// Sign of the (1-theta) s1 contribution in the history weight of the
/// right-hand side. Plus is the consistent linearization; Minus flips that
/// sign and is retained only so tests can demonstrate it destroys accuracy.
enum class HistoryWeightSign { Plus, Minus };

/// Raised when a time step fails numerically; carries the step index.
class SolverStepError : public std::runtime_error {
 public:
  SolverStepError(int step_index, const std::string& what)
      : std::runtime_error("step " + std::to_string(step_index) + ": " + what),
        step_index_(step_index) {}
  int step_index() const { return step_index_; }

 private:
  int step_index_;
};

/// Frozen-coefficient fields at the interior nodes x_1..x_{N-1}:
///
///   s1(x) = dt (4 y/x^2 - 8 y_x/x + 1/3 + 2 y_xx),  s2(x) = dt (x/3 + 2 y_x)
///
/// with y, y_x = D1 c, y_xx = D2 c taken from the current state.
inline std::pair<DenseVector, DenseVector> coefficient_fields(const SolverState& state,
                                                              const CollocationGrid& grid,
                                                              const DiffMatrices& d,
                                                              double dt) {
  const std::size_t n = grid.size();
  if (state.c.size() != n) throw std::invalid_argument("coefficient_fields: state length mismatch");
  const DenseVector yx = matvec(d.d1, state.c);
  const DenseVector yxx = matvec(d.d2, state.c);
  DenseVector v1(n - 2), v2(n - 2);
  for (std::size_t j = 1; j + 1 < n; ++j) {
    const double x = grid.nodes_x[j];
    if (x == 0.0) throw std::domain_error("coefficient_fields: interior node at the singular point 0");
    v1[j - 1] = dt * (4.0 * state.c[j] / (x * x) - 8.0 * yx[j] / x + 1.0 / 3.0 + 2.0 * yxx[j]);
    v2[j - 1] = dt * (x / 3.0 + 2.0 * yx[j]);
  }
  return {std::move(v1), std::move(v2)};
}

/// Assembles the per-step linear system A C^{n+1} = b.
///
/// Row 0 and row N are the boundary rows (unit rows with b = left/right
/// boundary value at t_next). Interior row j:
///   (1 - theta v1_j) C_j^{n+1} - theta v2_j (D1 C^{n+1})_j
///     = (1 + (1-theta) v1_j) C_j^n + (1-theta) v2_j (D1 C^n)_j.
inline std::pair<DenseMatrix, DenseVector> assemble_system(
    const DenseVector& v1, const DenseVector& v2, double theta, const CollocationGrid& grid,
    const DiffMatrices& d, const DenseVector& c_n, double t_next,
    HistoryWeightSign sign = HistoryWeightSign::Plus) {
  const std::size_t n = grid.size();
  if (v1.size() != n - 2 || v2.size() != n - 2)
    throw std::invalid_argument("assemble_system: coefficient field length mismatch");
  if (c_n.size() != n) throw std::invalid_argument("assemble_system: state length mismatch");

  const double hist = sign == HistoryWeightSign::Plus ? 1.0 : -1.0;
  const DenseVector yx = matvec(d.d1, c_n);

  DenseMatrix a(n, n);
  DenseVector b(n, 0.0);

  a(0, 0) = 1.0;
  b[0] = FokkerPlanckProblem::left_value(t_next);
  a(n - 1, n - 1) = 1.0;
  b[n - 1] = FokkerPlanckProblem::right_value(t_next);

  for (std::size_t j = 1; j + 1 < n; ++j) {
    const double m1 = 1.0 - theta * v1[j - 1];
    const double m2 = theta * v2[j - 1];
    const double m1_hist = 1.0 + hist * (1.0 - theta) * v1[j - 1];
    const double m2_hist = (1.0 - theta) * v2[j - 1];
    for (std::size_t i = 0; i < n; ++i) a(j, i) = -m2 * d.d1(j, i);
    a(j, j) += m1;
    b[j] = m1_hist * c_n[j] + m2_hist * yx[j];
  }
  return {std::move(a), std::move(b)};
}

/// State at t = 0: nodal samples of the initial profile.
inline SolverState initial_state(const CollocationGrid& grid) {
  SolverState s;
  s.c.reserve(grid.size());
  for (double x : grid.nodes_x) s.c.push_back(FokkerPlanckProblem::initial_profile(x));
  return s;
}

/// Advances one step of length config.dt: freezes the coefficient fields at
/// the current level, assembles, solves, returns the new state.
inline SolverState step(const SolverState& state, const SchemeConfig& config,
                        const CollocationGrid& grid, const DiffMatrices& d,
                        HistoryWeightSign sign = HistoryWeightSign::Plus) {
  const int next_index = state.step_index + 1;
  const double t_next = state.t + config.dt;
  auto [v1, v2] = coefficient_fields(state, grid, d, config.dt);
  auto [a, b] = assemble_system(v1, v2, config.theta, grid, d, state.c, t_next, sign);

  DenseVector c_next;
  try {
    c_next = lu_solve(a, b);
  } catch (const SingularMatrixError& e) {
    throw SolverStepError(next_index, e.what());
  }
  for (double v : c_next)
    if (!std::isfinite(v)) throw SolverStepError(next_index, "solution diverged (non-finite values)");
  return {std::move(c_next), t_next, next_index};
}

/// One recorded time level: nodal solution, exact values, and errors.
struct CheckpointRecord {
  double t = 0.0;
  DenseVector values;
  DenseVector exact;
  DenseVector abs_error;
  double max_abs_error = 0.0;
};

struct TrajectoryReport {
  CollocationGrid grid;
  std::vector<CheckpointRecord> checkpoints;
  double max_abs_error = 0.0;
};

namespace detail {

inline CheckpointRecord make_checkpoint(const SolverState& state, const CollocationGrid& grid) {
  CheckpointRecord rec;
  rec.t = state.t;
  rec.values = state.c;
  rec.exact.reserve(grid.size());
  rec.abs_error.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double ex = exact_solution(grid.nodes_x[i], state.t);
    rec.exact.push_back(ex);
    rec.abs_error.push_back(std::abs(state.c[i] - ex));
    rec.max_abs_error = std::max(rec.max_abs_error, rec.abs_error.back());
  }
  return rec;
}

}  // namespace detail

/// Marches the scheme from t = 0 to t_final, recording the t = 0 state, the
/// first state at or past every multiple of checkpoint_interval, and the
/// final state. The last step is shortened when dt does not divide t_final.
inline TrajectoryReport run(const SchemeConfig& config, double checkpoint_interval = 0.1,
                            HistoryWeightSign sign = HistoryWeightSign::Plus) {
  config.validate();
  constexpr double kTimeTol = 1e-12;
  constexpr double kCheckpointTol = 1e-9;

  TrajectoryReport report;
  report.grid = gauss_lobatto_grid(config.degree, config.alpha);
  const DiffMatrices d = make_diff_matrices(report.grid);

  SolverState state = initial_state(report.grid);
  report.checkpoints.push_back(detail::make_checkpoint(state, report.grid));

  double next_checkpoint = checkpoint_interval;
  bool recorded = true;
  while (state.t < config.t_final - kTimeTol) {
    SchemeConfig step_config = config;
    const double remaining = config.t_final - state.t;
    if (remaining < config.dt * (1.0 + kTimeTol)) step_config.dt = remaining;
    state = step(state, step_config, report.grid, d, sign);

    recorded = false;
    if (state.t >= next_checkpoint - kCheckpointTol) {
      report.checkpoints.push_back(detail::make_checkpoint(state, report.grid));
      recorded = true;
      while (state.t >= next_checkpoint - kCheckpointTol) next_checkpoint += checkpoint_interval;
    }
  }
  if (!recorded) report.checkpoints.push_back(detail::make_checkpoint(state, report.grid));

  for (const CheckpointRecord& rec : report.checkpoints)
    report.max_abs_error = std::max(report.max_abs_error, rec.max_abs_error);
  return report;
}

}  // namespace speccol
