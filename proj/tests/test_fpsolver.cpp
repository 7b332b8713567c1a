#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "speccol/fpsolver.hpp"

using namespace speccol;

namespace {

SchemeConfig config(int n, double theta, double dt, double t_final) {
  SchemeConfig c;
  c.degree = n;
  c.alpha = 0.5;
  c.theta = theta;
  c.dt = dt;
  c.t_final = t_final;
  return c;
}

SolverState exact_state(const CollocationGrid& grid, double t) {
  SolverState s;
  s.t = t;
  for (double x : grid.nodes_x) s.c.push_back(exact_solution(x, t));
  return s;
}

// max interior defect of the assembled step equation under the exact solution
double step_defect(const CollocationGrid& grid, const DiffMatrices& d, double t0, double dt,
                   double theta) {
  const SolverState state = exact_state(grid, t0);
  const auto [v1, v2] = coefficient_fields(state, grid, d, dt);
  const auto [a, b] = assemble_system(v1, v2, theta, grid, d, state.c, t0 + dt);
  const SolverState next = exact_state(grid, t0 + dt);
  const DenseVector ac = matvec(a, next.c);
  double worst = 0.0;
  for (std::size_t j = 1; j + 1 < grid.size(); ++j)
    worst = std::max(worst, std::abs(ac[j] - b[j]));
  return worst;
}

}  // namespace

TEST_CASE("exact_solution values") {
  CHECK(exact_solution(0.0, 3.7) == 0.0);
  CHECK(exact_solution(1.0, 0.0) == 1.0);
  CHECK(exact_solution(1.0, 1.0) == Catch::Approx(std::exp(1.0)).epsilon(1e-15));
}

TEST_CASE("problem data is consistent with the exact solution") {
  for (int i = 0; i <= 10; ++i) {
    const double t = 0.1 * i;
    CHECK(exact_solution(0.0, t) == FokkerPlanckProblem::left_value(t));
    CHECK(exact_solution(1.0, t) == FokkerPlanckProblem::right_value(t));
  }
  for (int i = 0; i <= 10; ++i) {
    const double x = 0.1 * i;
    CHECK(exact_solution(x, 0.0) == FokkerPlanckProblem::initial_profile(x));
  }
}

TEST_CASE("expanded equation residual vanishes under the exact solution") {
  CHECK(std::abs(expanded_rhs_check(0.5, 0.0)) <= 1e-12);
  CHECK(std::abs(expanded_rhs_check(1.0, 1.0)) <= 1e-11);
  CHECK(std::abs(expanded_rhs_check(0.1, 0.5)) <= 1e-10);
  CHECK_THROWS_AS(expanded_rhs_check(0.0, 0.5), std::domain_error);
}

TEST_CASE("expanded equation residual over the (0.05,1] x [0,1] sweep") {
  double worst = 0.0;
  for (int i = 1; i <= 50; ++i)
    for (int j = 0; j < 50; ++j) {
      const double x = 0.05 + 0.95 * i / 50.0;
      const double t = j / 49.0;
      worst = std::max(worst, std::abs(expanded_rhs_check(x, t)));
    }
  CHECK(worst <= 1e-10);
}

TEST_CASE("initial_state samples the initial profile") {
  CollocationGrid g;
  g.nodes_x = {0.0, 0.5, 1.0};
  g.nodes_u = {-1.0, 0.0, 1.0};
  g.degree = 2;
  const SolverState s = initial_state(g);
  CHECK(s.c == DenseVector{0.0, 0.25, 1.0});
  CHECK(s.t == 0.0);
  CHECK(s.step_index == 0);

  const CollocationGrid g7 = gauss_lobatto_grid(7, 0.5);
  const SolverState s7 = initial_state(g7);
  CHECK(s7.c.front() == 0.0);
  CHECK(s7.c.back() == 1.0);
}

TEST_CASE("coefficient fields under the quadratic initial profile") {
  const double dt = 1e-3;
  const CollocationGrid grid = gauss_lobatto_grid(7, 0.5);
  const DiffMatrices d = make_diff_matrices(grid);
  const SolverState s = initial_state(grid);
  const auto [v1, v2] = coefficient_fields(s, grid, d, dt);
  REQUIRE(v1.size() == 6);
  REQUIRE(v2.size() == 6);
  // with y = x^2: 4y/x^2 = 4, -8 y_x/x = -16, 2 y_xx = 4, so s1 = dt(-23/3)
  for (std::size_t j = 0; j < v1.size(); ++j) {
    const double x = grid.nodes_x[j + 1];
    CHECK(std::abs(v1[j] - dt * (-23.0 / 3.0)) <= 1e-12);
    CHECK(std::abs(v2[j] - dt * (x / 3.0 + 4.0 * x)) <= 1e-12);
  }
}

TEST_CASE("coefficient fields vanish at dt = 0") {
  const CollocationGrid grid = gauss_lobatto_grid(5, 0.5);
  const DiffMatrices d = make_diff_matrices(grid);
  const auto [v1, v2] = coefficient_fields(initial_state(grid), grid, d, 0.0);
  for (double v : v1) CHECK(v == 0.0);
  for (double v : v2) CHECK(v == 0.0);
}

TEST_CASE("assembled system carries the boundary rows") {
  const CollocationGrid grid = gauss_lobatto_grid(7, 0.5);
  const DiffMatrices d = make_diff_matrices(grid);
  const SolverState s = initial_state(grid);
  const auto [v1, v2] = coefficient_fields(s, grid, d, 1e-3);
  const auto [a, b] = assemble_system(v1, v2, 0.5, grid, d, s.c, 1.0);

  const std::size_t n = grid.size();
  CHECK(a(0, 0) == 1.0);
  for (std::size_t j = 1; j < n; ++j) CHECK(a(0, j) == 0.0);
  CHECK(a(n - 1, n - 1) == 1.0);
  for (std::size_t j = 0; j + 1 < n; ++j) CHECK(a(n - 1, j) == 0.0);
  CHECK(b[0] == 0.0);
  CHECK(b[n - 1] == Catch::Approx(std::exp(1.0)).epsilon(1e-15));
}

TEST_CASE("the interior block equals the diag-scaled selector and derivative stacks") {
  const CollocationGrid grid = gauss_lobatto_grid(7, 0.5);
  const DiffMatrices d = make_diff_matrices(grid);
  const SolverState s = initial_state(grid);
  const double theta = 0.5;
  const double dt = 1e-3;
  const auto [v1, v2] = coefficient_fields(s, grid, d, dt);
  const auto [a, b] = assemble_system(v1, v2, theta, grid, d, s.c, dt);

  const std::size_t n = grid.size();
  DenseMatrix selector(n - 2, n);  // rows 1..N-1 of the identity
  DenseMatrix d1_interior(n - 2, n);
  for (std::size_t j = 1; j + 1 < n; ++j) {
    selector(j - 1, j) = 1.0;
    for (std::size_t i = 0; i < n; ++i) d1_interior(j - 1, i) = d.d1(j, i);
  }
  DenseVector m1(n - 2), m2(n - 2);
  for (std::size_t j = 0; j + 2 < n; ++j) {
    m1[j] = 1.0 - theta * v1[j];
    m2[j] = theta * v2[j];
  }
  const DenseMatrix lhs_a = diag_scale(m1, selector);
  const DenseMatrix lhs_b = diag_scale(m2, d1_interior);
  for (std::size_t j = 0; j + 2 < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      CHECK(a(j + 1, i) == Catch::Approx(lhs_a(j, i) - lhs_b(j, i)).margin(1e-15));
}

TEST_CASE("theta = 0 reduces the interior block to the selector") {
  const CollocationGrid grid = gauss_lobatto_grid(5, 0.5);
  const DiffMatrices d = make_diff_matrices(grid);
  const SolverState s = initial_state(grid);
  const auto [v1, v2] = coefficient_fields(s, grid, d, 1e-3);
  const auto [a, b] = assemble_system(v1, v2, 0.0, grid, d, s.c, 1e-3);
  for (std::size_t j = 1; j + 1 < grid.size(); ++j)
    for (std::size_t i = 0; i < grid.size(); ++i) CHECK(a(j, i) == (i == j ? 1.0 : 0.0));
}

TEST_CASE("theta = 1 with zero coefficient fields degenerates to copying the state") {
  const CollocationGrid grid = gauss_lobatto_grid(5, 0.5);
  const DiffMatrices d = make_diff_matrices(grid);
  const SolverState s = initial_state(grid);
  const DenseVector zero(grid.size() - 2, 0.0);
  const auto [a, b] = assemble_system(zero, zero, 1.0, grid, d, s.c, 0.5);
  for (std::size_t j = 1; j + 1 < grid.size(); ++j) {
    for (std::size_t i = 0; i < grid.size(); ++i) CHECK(a(j, i) == (i == j ? 1.0 : 0.0));
    CHECK(b[j] == s.c[j]);
  }
}

TEST_CASE("one step at the headline configuration stays within the local error budget") {
  const SchemeConfig cfg = config(7, 0.5, 1e-3, 1e-3);
  const CollocationGrid grid = gauss_lobatto_grid(cfg.degree, cfg.alpha);
  const DiffMatrices d = make_diff_matrices(grid);
  const SolverState next = step(initial_state(grid), cfg, grid, d);

  CHECK(next.c.front() == 0.0);  // unit boundary row with zero datum
  CHECK(next.step_index == 1);
  CHECK(next.t == Catch::Approx(1e-3).epsilon(1e-12));
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    worst = std::max(worst, std::abs(next.c[i] - exact_solution(grid.nodes_x[i], next.t)));
  CHECK(worst <= 1e-7);
}

TEST_CASE("two half steps versus one full step shrink like the cube of dt") {
  const CollocationGrid grid = gauss_lobatto_grid(7, 0.5);
  const DiffMatrices d = make_diff_matrices(grid);
  std::vector<double> diffs;
  for (const double dt : {2e-3, 1e-3}) {
    const SolverState full = step(initial_state(grid), config(7, 0.5, dt, dt), grid, d);
    SolverState half = initial_state(grid);
    half = step(half, config(7, 0.5, dt / 2.0, dt), grid, d);
    half = step(half, config(7, 0.5, dt / 2.0, dt), grid, d);
    double diff = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
      diff = std::max(diff, std::abs(full.c[i] - half.c[i]));
    diffs.push_back(diff);
  }
  const double ratio = diffs[0] / diffs[1];
  CHECK(ratio >= 6.0);
  CHECK(ratio <= 10.0);
}

TEST_CASE("a singular step reports the step index") {
  // On the 3-node grid the interior row loses its diagonal when the frozen
  // field makes m1 = 1 - theta v1 vanish; c2 = -5/24 with dt = 1, theta = 1/2
  // arranges exactly that.
  const CollocationGrid grid = gauss_lobatto_grid(2, 0.5);
  const DiffMatrices d = make_diff_matrices(grid);
  SolverState s;
  s.c = {0.0, 0.3, -5.0 / 24.0};
  const SchemeConfig cfg = config(2, 0.5, 1.0, 1.0);
  try {
    step(s, cfg, grid, d);
    FAIL("expected SolverStepError");
  } catch (const SolverStepError& e) {
    CHECK(e.step_index() == 1);
  }
}

TEST_CASE("per-step defect under the exact solution shrinks like dt^3") {
  const CollocationGrid grid = gauss_lobatto_grid(7, 0.5);
  const DiffMatrices d = make_diff_matrices(grid);
  const double d4 = step_defect(grid, d, 0.3, 4e-3, 0.5);
  const double d2 = step_defect(grid, d, 0.3, 2e-3, 0.5);
  const double d1 = step_defect(grid, d, 0.3, 1e-3, 0.5);
  CHECK(d4 / d2 >= 6.0);
  CHECK(d4 / d2 <= 10.0);
  CHECK(d2 / d1 >= 6.0);
  CHECK(d2 / d1 <= 10.0);
}

TEST_CASE("headline run stays within the error budget and preserves the boundary") {
  const TrajectoryReport report = run(config(7, 0.5, 1e-3, 1.0));
  CHECK(report.max_abs_error <= 1e-4);
  REQUIRE(report.checkpoints.size() == 11);  // t = 0, 0.1, ..., 1.0
  for (const CheckpointRecord& rec : report.checkpoints) {
    CHECK(std::abs(rec.values.front()) <= 1e-12);
    CHECK(std::abs(rec.values.back() - std::exp(rec.t)) <= 1e-10);
  }
  CHECK(report.checkpoints.back().t == Catch::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("boundary values are preserved at every step, not just at checkpoints") {
  const SchemeConfig cfg = config(7, 0.5, 1e-3, 1.0);
  const CollocationGrid grid = gauss_lobatto_grid(7, 0.5);
  const DiffMatrices d = make_diff_matrices(grid);
  SolverState s = initial_state(grid);
  for (int n = 0; n < 200; ++n) {
    s = step(s, cfg, grid, d);
    CHECK(std::abs(s.c.front()) <= 1e-12);
    CHECK(std::abs(s.c.back() - std::exp(s.t)) <= 1e-10);
  }
}

TEST_CASE("zero-horizon run reports the exact initial data") {
  const TrajectoryReport report = run(config(7, 0.5, 1e-3, 0.0));
  REQUIRE(report.checkpoints.size() == 1);
  CHECK(report.checkpoints[0].t == 0.0);
  CHECK(report.max_abs_error == 0.0);
  for (double e : report.checkpoints[0].abs_error) CHECK(e == 0.0);
}

TEST_CASE("halving dt divides the final error by about four") {
  const double e1 = run(config(7, 0.5, 1e-3, 1.0)).max_abs_error;
  const double e2 = run(config(7, 0.5, 5e-4, 1.0)).max_abs_error;
  const double ratio = e1 / e2;
  CHECK(ratio >= 3.2);
  CHECK(ratio <= 4.8);
}

TEST_CASE("temporal convergence order matches the scheme weight") {
  // Run at N = 3: the exact solution is quadratic in x, so the spatial error
  // vanishes for any N >= 2, and the whole dt ladder sits inside the frozen-
  // coefficient stability region (at N = 7 the 4e-3 and 2e-3 runs blow up).
  SECTION("theta = 1/2 is second order") {
    std::vector<double> errs;
    for (const double dt : {4e-3, 2e-3, 1e-3}) errs.push_back(run(config(3, 0.5, dt, 1.0)).max_abs_error);
    const double p1 = std::log2(errs[0] / errs[1]);
    const double p2 = std::log2(errs[1] / errs[2]);
    CHECK(p1 >= 1.8);
    CHECK(p1 <= 2.2);
    CHECK(p2 >= 1.8);
    CHECK(p2 <= 2.2);
  }
  SECTION("theta = 1 is first order") {
    std::vector<double> errs;
    for (const double dt : {4e-3, 2e-3, 1e-3}) errs.push_back(run(config(3, 1.0, dt, 1.0)).max_abs_error);
    const double p1 = std::log2(errs[0] / errs[1]);
    const double p2 = std::log2(errs[1] / errs[2]);
    CHECK(p1 >= 0.8);
    CHECK(p1 <= 1.2);
    CHECK(p2 >= 0.8);
    CHECK(p2 <= 1.2);
  }
}

TEST_CASE("the error is purely temporal: N = 3 and N = 7 agree") {
  const double e3 = run(config(3, 0.5, 1e-3, 1.0)).max_abs_error;
  const double e7 = run(config(7, 0.5, 1e-3, 1.0)).max_abs_error;
  CHECK(std::abs(e3 - e7) / std::max(e3, e7) <= 0.10);
}

TEST_CASE("the flipped history weight destroys the solution") {
  const SchemeConfig cfg = config(7, 0.5, 1e-3, 0.1);
  const double plus = run(cfg, 0.1, HistoryWeightSign::Plus).max_abs_error;
  const double minus = run(cfg, 0.1, HistoryWeightSign::Minus).max_abs_error;
  CHECK(plus <= 1e-6);
  CHECK(minus >= 1e-2);
}

TEST_CASE("a dt that does not divide t_final lands exactly via a shortened last step") {
  const TrajectoryReport report = run(config(3, 0.5, 3e-3, 0.01));
  CHECK(report.checkpoints.back().t == Catch::Approx(0.01).margin(1e-12));
  CHECK(report.max_abs_error <= 1e-5);
}

TEST_CASE("identical configurations give bit-identical trajectories") {
  const TrajectoryReport r1 = run(config(7, 0.5, 1e-3, 0.5));
  const TrajectoryReport r2 = run(config(7, 0.5, 1e-3, 0.5));
  REQUIRE(r1.checkpoints.size() == r2.checkpoints.size());
  for (std::size_t k = 0; k < r1.checkpoints.size(); ++k) {
    CHECK(r1.checkpoints[k].t == r2.checkpoints[k].t);
    CHECK(r1.checkpoints[k].values == r2.checkpoints[k].values);
  }
  CHECK(r1.max_abs_error == r2.max_abs_error);
}

TEST_CASE("configuration validation") {
  CHECK_THROWS_AS(run(config(1, 0.5, 1e-3, 1.0)), std::invalid_argument);
  CHECK_THROWS_AS(run(config(7, 1.5, 1e-3, 1.0)), std::domain_error);
  CHECK_THROWS_AS(run(config(7, 0.5, -1e-3, 1.0)), std::domain_error);
  CHECK_THROWS_AS(run(config(7, 0.5, 1e-3, -1.0)), std::domain_error);
}
