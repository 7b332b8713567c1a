#pragma once

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>

#include "speccol/fpsolver.hpp"
#include "speccol/grids.hpp"
#include "speccol/interp.hpp"

namespace speccol {

/// Exit codes shared by every subcommand: 0 success, 2 usage or parameter
/// error, 3 numerical failure.
namespace cli_exit {
inline constexpr int ok = 0;
inline constexpr int usage = 2;
inline constexpr int numerical = 3;
}  // namespace cli_exit

/// Resolved command-line configuration. Defaults reproduce the headline
/// solver setup (N=7, alpha=0.5, theta=0.5, dt=1e-3, t_final=1).
struct CliConfig {
  int degree = 7;
  double alpha = 0.5;
  double theta = 0.5;
  double dt = 1e-3;
  double t_final = 1.0;
  int order = 1;  // diffmat only
};

namespace detail {

// 17 significant digits: enough to round-trip any double. Negative zero is
// printed as plain 0 so the CSV stays sign-stable.
inline std::string format_sig17(double v) {
  if (v == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline SchemeConfig scheme_config(const CliConfig& cfg) {
  SchemeConfig sc;
  sc.degree = cfg.degree;
  sc.alpha = cfg.alpha;
  sc.theta = cfg.theta;
  sc.dt = cfg.dt;
  sc.t_final = cfg.t_final;
  return sc;
}

template <typename Fn>
int guarded_command(std::ostream& diag, Fn&& fn) {
  try {
    fn();
    return cli_exit::ok;
  } catch (const SolverStepError& e) {
    diag << "error: " << e.what() << "\n";
    return cli_exit::numerical;
  } catch (const SingularMatrixError& e) {
    diag << "error: " << e.what() << "\n";
    return cli_exit::numerical;
  } catch (const std::domain_error& e) {
    diag << "error: " << e.what() << "\n";
    return cli_exit::usage;
  } catch (const std::invalid_argument& e) {
    diag << "error: " << e.what() << "\n";
    return cli_exit::usage;
  } catch (const std::out_of_range& e) {
    diag << "error: " << e.what() << "\n";
    return cli_exit::usage;
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << "\n";
    return cli_exit::numerical;
  }
}

}  // namespace detail

/// `nodes`: the collocation grid as CSV `i,x,u`.
inline int cmd_nodes(const CliConfig& cfg, std::ostream& out, std::ostream& diag) {
  return detail::guarded_command(diag, [&] {
    const CollocationGrid grid = gauss_lobatto_grid(cfg.degree, cfg.alpha);
    out << "i,x,u\n";
    for (std::size_t i = 0; i < grid.size(); ++i)
      out << i << ',' << detail::format_sig17(grid.nodes_x[i]) << ','
          << detail::format_sig17(grid.nodes_u[i]) << '\n';
  });
}

/// `diffmat`: the first- or second-order differentiation matrix as row-major CSV.
inline int cmd_diffmat(const CliConfig& cfg, std::ostream& out, std::ostream& diag) {
  return detail::guarded_command(diag, [&] {
    const CollocationGrid grid = gauss_lobatto_grid(cfg.degree, cfg.alpha);
    const DenseMatrix d = diff_matrix(grid, cfg.order);
    for (std::size_t i = 0; i < d.rows(); ++i) {
      for (std::size_t j = 0; j < d.cols(); ++j) {
        if (j > 0) out << ',';
        out << detail::format_sig17(d(i, j));
      }
      out << '\n';
    }
  });
}

/// `solve-fp`: trajectory CSV `t,i,x,y_num,y_exact,abs_err`, one row per
/// (checkpoint, node), followed by a `# max_abs_err=` comment row.
inline int cmd_solve_fp(const CliConfig& cfg, std::ostream& out, std::ostream& diag) {
  return detail::guarded_command(diag, [&] {
    const TrajectoryReport report = run(detail::scheme_config(cfg));
    out << "t,i,x,y_num,y_exact,abs_err\n";
    for (const CheckpointRecord& rec : report.checkpoints)
      for (std::size_t i = 0; i < report.grid.size(); ++i)
        out << detail::format_sig17(rec.t) << ',' << i << ','
            << detail::format_sig17(report.grid.nodes_x[i]) << ','
            << detail::format_sig17(rec.values[i]) << ','
            << detail::format_sig17(rec.exact[i]) << ','
            << detail::format_sig17(rec.abs_error[i]) << '\n';
    out << "# max_abs_err=" << detail::format_sig17(report.max_abs_error) << '\n';
  });
}

/// `converge`: runs dt in {4 dt, 2 dt, dt} and reports
/// `dt,max_abs_err,observed_order`, where observed_order is the log2 of the
/// consecutive error ratio (blank on the first row and whenever a ratio is
/// undefined).
inline int cmd_converge(const CliConfig& cfg, std::ostream& out, std::ostream& diag) {
  return detail::guarded_command(diag, [&] {
    out << "dt,max_abs_err,observed_order\n";
    double prev_err = 0.0;
    bool have_prev = false;
    for (const double factor : {4.0, 2.0, 1.0}) {
      SchemeConfig sc = detail::scheme_config(cfg);
      sc.dt = cfg.dt * factor;
      const TrajectoryReport report = run(sc);
      const double err = report.max_abs_error;
      out << detail::format_sig17(sc.dt) << ',' << detail::format_sig17(err) << ',';
      if (have_prev && err > 0.0 && prev_err > 0.0 && std::isfinite(err) && std::isfinite(prev_err))
        out << detail::format_sig17(std::log2(prev_err / err));
      out << '\n';
      prev_err = err;
      have_prev = true;
    }
  });
}

}  // namespace speccol
