#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "speccol/densela.hpp"
#include "speccol/orthopoly.hpp"

namespace speccol {

/// Collocation grid on [0,1]: endpoints stored exactly as 0 and 1, interior
/// nodes from Gegenbauer roots mapped through u = 2x - 1.
struct CollocationGrid {
  std::vector<double> nodes_x;  // ascending, nodes_x.front() == 0, nodes_x.back() == 1
  std::vector<double> nodes_u;  // nodes_u[i] == 2 * nodes_x[i] - 1
  double alpha = 0.0;           // Gegenbauer parameter the interior nodes came from
  int degree = 0;               // N; the grid has N + 1 nodes

  std::size_t size() const { return nodes_x.size(); }
};

namespace detail {

// Recurrence coefficients of the monic Jacobi polynomials: the symmetric
// tridiagonal (Jacobi) matrix built from them has the degree-n roots as its
// eigenvalues.
inline void monic_jacobi_recurrence(int n, double a, double b, std::vector<double>& diag,
                                    std::vector<double>& off) {
  diag.assign(n, 0.0);
  off.assign(n > 0 ? n - 1 : 0, 0.0);
  const double apb = a + b;
  diag[0] = (b - a) / (apb + 2.0);
  for (int k = 1; k < n; ++k) {
    const double t = 2.0 * k + apb;
    diag[k] = (b * b - a * a) / (t * (t + 2.0));
  }
  if (n > 1) {
    // k = 1 written with the (1 + a + b) factor cancelled to stay finite at a + b = -1
    off[0] = std::sqrt(4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + apb) * (2.0 + apb) * (3.0 + apb)));
  }
  for (int k = 2; k < n; ++k) {
    const double t = 2.0 * k + apb;
    off[k - 1] = std::sqrt(4.0 * k * (k + a) * (k + b) * (k + apb) /
                           (t * t * (t + 1.0) * (t - 1.0)));
  }
}

}  // namespace detail

/// All degree(-many) real roots of the family member, ascending, each in
/// (-1,1). Eigenvalues of the symmetric tridiagonal recurrence matrix,
/// followed by one Newton polish step per root.
inline std::vector<double> polynomial_roots(const PolynomialFamily& family, int degree) {
  if (degree < 1) throw std::invalid_argument("polynomial_roots requires degree >= 1");
  const JacobiReduction red = jacobi_reduction(family, degree);

  std::vector<double> diag, off;
  detail::monic_jacobi_recurrence(degree, red.a, red.b, diag, off);
  std::vector<double> roots = symmetric_tridiagonal_eigenvalues(std::move(diag), std::move(off));

  for (double& r : roots) {
    const double p = family_eval(family, degree, r, 0);
    const double dp = family_eval(family, degree, r, 1);
    if (dp != 0.0) {
      const double delta = p / dp;
      if (std::abs(delta) < 1e-8) r -= delta;
    }
  }

  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (!(roots[i] > -1.0 && roots[i] < 1.0))
      throw std::runtime_error("polynomial_roots: root escaped (-1,1)");
    if (i > 0 && !(roots[i] > roots[i - 1]))
      throw std::runtime_error("polynomial_roots: roots not strictly increasing");
  }
  return roots;
}

/// Gegenbauer-Gauss-Lobatto grid of degree N on [0,1]: endpoints 0 and 1 plus
/// the N-1 roots of the degree-(N-1) Gegenbauer polynomial with parameter
/// alpha + 1, mapped through x = (u + 1) / 2.
inline CollocationGrid gauss_lobatto_grid(int degree, double alpha) {
  if (degree < 2) throw std::invalid_argument("gauss_lobatto_grid requires N >= 2");
  if (!(alpha > 0.0)) throw std::domain_error("gauss_lobatto_grid requires alpha > 0");

  std::vector<double> u =
      polynomial_roots(PolynomialFamily::gegenbauer(alpha + 1.0), degree - 1);

  // Gegenbauer root sets are antisymmetric about 0; enforce that exactly so
  // the grid symmetry invariant survives rounding.
  const std::size_t m = u.size();
  for (std::size_t i = 0; i < m / 2; ++i) {
    const double v = 0.5 * (u[i] - u[m - 1 - i]);
    u[i] = v;
    u[m - 1 - i] = -v;
  }
  if (m % 2 == 1) u[m / 2] = 0.0;

  CollocationGrid grid;
  grid.alpha = alpha;
  grid.degree = degree;
  grid.nodes_x.reserve(degree + 1);
  grid.nodes_x.push_back(0.0);
  for (double ui : u) grid.nodes_x.push_back(0.5 * (ui + 1.0));
  grid.nodes_x.push_back(1.0);

  grid.nodes_u.reserve(degree + 1);
  for (double xi : grid.nodes_x) grid.nodes_u.push_back(2.0 * xi - 1.0);

  for (std::size_t i = 1; i < grid.nodes_x.size(); ++i)
    if (!(grid.nodes_x[i] > grid.nodes_x[i - 1]))
      throw std::runtime_error("gauss_lobatto_grid: nodes not strictly increasing");
  return grid;
}

}  // namespace speccol
