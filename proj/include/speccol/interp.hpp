#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "speccol/densela.hpp"
#include "speccol/grids.hpp"

namespace speccol {

/// Barycentric weights w_i = 1 / prod_{j != i} (x_i - x_j), normalized so
/// max |w_i| = 1. The normalization cancels in every downstream formula.
inline std::vector<double> barycentric_weights(const CollocationGrid& grid) {
  const std::size_t n = grid.size();
  std::vector<double> w(n, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    double prod = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double d = grid.nodes_x[i] - grid.nodes_x[j];
      if (d == 0.0) throw std::invalid_argument("barycentric_weights: degenerate grid (duplicate nodes)");
      prod *= d;
    }
    w[i] = 1.0 / prod;
  }
  double scale = 0.0;
  for (double wi : w) scale = std::max(scale, std::abs(wi));
  for (double& wi : w) wi /= scale;
  return w;
}

/// Cardinal basis function L_i evaluated at x via the barycentric second
/// form. Returns the Kronecker value exactly when x coincides with a node.
inline double lagrange_eval(const CollocationGrid& grid, std::size_t i, double x,
                            const std::vector<double>& weights) {
  const std::size_t n = grid.size();
  if (i >= n) throw std::out_of_range("lagrange_eval: basis index out of range");
  for (std::size_t j = 0; j < n; ++j)
    if (x == grid.nodes_x[j]) return j == i ? 1.0 : 0.0;
  double den = 0.0;
  for (std::size_t j = 0; j < n; ++j) den += weights[j] / (x - grid.nodes_x[j]);
  return (weights[i] / (x - grid.nodes_x[i])) / den;
}

inline double lagrange_eval(const CollocationGrid& grid, std::size_t i, double x) {
  return lagrange_eval(grid, i, x, barycentric_weights(grid));
}

/// Evaluates the interpolant of the nodal values at x; exact at the nodes.
inline double interpolate(const CollocationGrid& grid, const std::vector<double>& values, double x,
                          const std::vector<double>& weights) {
  const std::size_t n = grid.size();
  if (values.size() != n) throw std::invalid_argument("interpolate: values length mismatch");
  for (std::size_t j = 0; j < n; ++j)
    if (x == grid.nodes_x[j]) return values[j];
  double num = 0.0;
  double den = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double c = weights[j] / (x - grid.nodes_x[j]);
    num += c * values[j];
    den += c;
  }
  return num / den;
}

inline double interpolate(const CollocationGrid& grid, const std::vector<double>& values, double x) {
  return interpolate(grid, values, x, barycentric_weights(grid));
}

/// Collocation differentiation matrix of the given order (1 or 2).
///
/// D1[j][i] = L_i'(x_j) from the barycentric formula, with diagonal entries
/// set to the negative off-diagonal row sum so rows annihilate constants
/// exactly. D2 is the matrix square of D1, which is exact for interpolation
/// operators.
inline DenseMatrix diff_matrix(const CollocationGrid& grid, int order) {
  if (order != 1 && order != 2)
    throw std::invalid_argument("diff_matrix: order must be 1 or 2");
  const std::size_t n = grid.size();
  if (n < 2) throw std::invalid_argument("diff_matrix: grid needs at least 2 nodes");
  if (order == 2 && n < 3) throw std::invalid_argument("diff_matrix: order 2 needs at least 3 nodes");

  const std::vector<double> w = barycentric_weights(grid);
  DenseMatrix d1(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double row_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == j) continue;
      const double v = (w[i] / w[j]) / (grid.nodes_x[j] - grid.nodes_x[i]);
      d1(j, i) = v;
      row_sum += v;
    }
    d1(j, j) = -row_sum;
  }
  if (order == 1) return d1;
  return matmul(d1, d1);
}

/// First- and second-order differentiation matrices for a grid, built once.
struct DiffMatrices {
  DenseMatrix d1;
  DenseMatrix d2;
  CollocationGrid grid;
};

inline DiffMatrices make_diff_matrices(const CollocationGrid& grid) {
  DiffMatrices out;
  out.d1 = diff_matrix(grid, 1);
  out.d2 = matmul(out.d1, out.d1);
  out.grid = grid;
  return out;
}

}  // namespace speccol
