#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace speccol {

enum class FamilyKind {
  Jacobi,
  Gegenbauer,
  ChebyshevFirst,
  ChebyshevSecond,
  ChebyshevThird,
  ChebyshevFourth,
  Legendre,
};

/// Descriptor for a classical orthogonal polynomial family. Use the factory
/// functions; they validate the parameter ranges (Jacobi a, b > -1,
/// Gegenbauer alpha > 0).
struct PolynomialFamily {
  FamilyKind kind = FamilyKind::Legendre;
  double a = 0.0;      // Jacobi parameters, meaningful for kind == Jacobi
  double b = 0.0;
  double alpha = 0.0;  // Gegenbauer parameter, meaningful for kind == Gegenbauer

  static PolynomialFamily jacobi(double a, double b) {
    if (!(a > -1.0) || !(b > -1.0))
      throw std::domain_error("Jacobi family requires a > -1 and b > -1");
    PolynomialFamily f;
    f.kind = FamilyKind::Jacobi;
    f.a = a;
    f.b = b;
    return f;
  }

  static PolynomialFamily gegenbauer(double alpha) {
    if (!(alpha > 0.0)) throw std::domain_error("Gegenbauer family requires alpha > 0");
    PolynomialFamily f;
    f.kind = FamilyKind::Gegenbauer;
    f.alpha = alpha;
    return f;
  }

  static PolynomialFamily chebyshev_first() { return {FamilyKind::ChebyshevFirst}; }
  static PolynomialFamily chebyshev_second() { return {FamilyKind::ChebyshevSecond}; }
  static PolynomialFamily chebyshev_third() { return {FamilyKind::ChebyshevThird}; }
  static PolynomialFamily chebyshev_fourth() { return {FamilyKind::ChebyshevFourth}; }
  static PolynomialFamily legendre() { return {FamilyKind::Legendre}; }
};

struct EvalRequest {
  PolynomialFamily family;
  int degree = 0;
  int derivative_order = 0;  // 0, 1 or 2
  double point = 0.0;
};

namespace detail {

// Lanczos approximation, g = 7, 9 coefficients.
inline constexpr double kLanczos[9] = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

inline double lanczos_series(double z) {
  double acc = kLanczos[0];
  for (int i = 1; i < 9; ++i) acc += kLanczos[i] / (z + i);
  return acc;
}

inline bool is_gamma_pole(double x) { return x <= 0.0 && x == std::floor(x); }

}  // namespace detail

/// Natural log of Gamma(x) for x > 0.
inline double log_gamma_fn(double x) {
  if (detail::is_gamma_pole(x) || x < 0.0)
    throw std::domain_error("log_gamma_fn requires x > 0");
  if (x < 0.5) return log_gamma_fn(x + 1.0) - std::log(x);
  const double z = x - 1.0;
  const double t = z + 7.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t +
         std::log(detail::lanczos_series(z));
}

/// Gamma function via the Lanczos rational approximation, with reflection for
/// x < 0.5 and a log-domain evaluation for x > 30.
///
/// Poles (x = 0, -1, -2, ...) raise std::domain_error.
inline double gamma_fn(double x) {
  if (detail::is_gamma_pole(x)) throw std::domain_error("gamma_fn pole at x = " + std::to_string(x));
  if (x < 0.5) {
    // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
    return std::numbers::pi / (std::sin(std::numbers::pi * x) * gamma_fn(1.0 - x));
  }
  if (x > 30.0) return std::exp(log_gamma_fn(x));
  const double z = x - 1.0;
  const double t = z + 7.5;
  return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, z + 0.5) * std::exp(-t) *
         detail::lanczos_series(z);
}

namespace detail {

inline void check_derivative_order(int k) {
  if (k < 0 || k > 2)
    throw std::invalid_argument("derivative order must be 0, 1 or 2 (got " + std::to_string(k) + ")");
}

inline void check_degree(int n) {
  if (n < 0) throw std::domain_error("polynomial degree must be nonnegative");
}

// Three-term recurrence for the Gegenbauer value, no derivative handling.
inline double gegenbauer_recurrence(int n, double alpha, double x) {
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 2.0 * alpha * x;
  for (int m = 2; m <= n; ++m) {
    const double next = (2.0 * (m + alpha - 1.0) * x * cur - (m + 2.0 * alpha - 2.0) * prev) / m;
    prev = cur;
    cur = next;
  }
  return cur;
}

// Three-term recurrence for the Jacobi value, no derivative handling.
inline double jacobi_recurrence(int n, double a, double b, double x) {
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x;
  for (int m = 2; m <= n; ++m) {
    const double apb = a + b;
    const double c1 = 2.0 * m * (m + apb) * (2.0 * m + apb - 2.0);
    const double c2 = (2.0 * m + apb - 1.0) * (a * a - b * b);
    const double c3 = (2.0 * m + apb - 2.0) * (2.0 * m + apb - 1.0) * (2.0 * m + apb);
    const double c4 = 2.0 * (m + a - 1.0) * (m + b - 1.0) * (2.0 * m + apb);
    const double next = ((c2 + c3 * x) * cur - c4 * prev) / c1;
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace detail

/// d^k/dx^k of the degree-N Gegenbauer polynomial with parameter alpha.
///
/// Values come from the three-term recurrence; derivatives from the
/// parameter-raising identity d/dx G_N^a = 2a G_{N-1}^{a+1}.
inline double gegenbauer_eval(int degree, double alpha, double x, int derivative_order = 0) {
  if (!(alpha > 0.0)) throw std::domain_error("gegenbauer_eval requires alpha > 0");
  detail::check_degree(degree);
  detail::check_derivative_order(derivative_order);
  switch (derivative_order) {
    case 0:
      return detail::gegenbauer_recurrence(degree, alpha, x);
    case 1:
      if (degree < 1) return 0.0;
      return 2.0 * alpha * detail::gegenbauer_recurrence(degree - 1, alpha + 1.0, x);
    default:
      if (degree < 2) return 0.0;
      return 4.0 * alpha * (alpha + 1.0) * detail::gegenbauer_recurrence(degree - 2, alpha + 2.0, x);
  }
}

/// d^k/dx^k of the degree-n Jacobi polynomial P_n^(a,b).
///
/// Derivatives use d/dx P_n^(a,b) = (n+a+b+1)/2 * P_{n-1}^(a+1,b+1).
inline double jacobi_eval(int degree, double a, double b, double x, int derivative_order = 0) {
  if (!(a > -1.0) || !(b > -1.0)) throw std::domain_error("jacobi_eval requires a > -1 and b > -1");
  detail::check_degree(degree);
  detail::check_derivative_order(derivative_order);
  switch (derivative_order) {
    case 0:
      return detail::jacobi_recurrence(degree, a, b, x);
    case 1:
      if (degree < 1) return 0.0;
      return 0.5 * (degree + a + b + 1.0) * detail::jacobi_recurrence(degree - 1, a + 1.0, b + 1.0, x);
    default:
      if (degree < 2) return 0.0;
      return 0.25 * (degree + a + b + 1.0) * (degree + a + b + 2.0) *
             detail::jacobi_recurrence(degree - 2, a + 2.0, b + 2.0, x);
  }
}

/// Jacobi representation of a family member: the polynomial of degree n equals
/// scale * P_n^(a,b). The scale depends on the degree for the scaled kinds.
struct JacobiReduction {
  double a = 0.0;
  double b = 0.0;
  double scale = 1.0;
};

inline JacobiReduction jacobi_reduction(const PolynomialFamily& family, int degree) {
  detail::check_degree(degree);
  const double n = degree;
  switch (family.kind) {
    case FamilyKind::Jacobi:
      return {family.a, family.b, 1.0};
    case FamilyKind::Legendre:
      return {0.0, 0.0, 1.0};
    case FamilyKind::Gegenbauer: {
      const double al = family.alpha;
      const double scale = std::exp(log_gamma_fn(al + 0.5) + log_gamma_fn(n + 2.0 * al) -
                                    log_gamma_fn(2.0 * al) - log_gamma_fn(n + al + 0.5));
      return {al - 0.5, al - 0.5, scale};
    }
    case FamilyKind::ChebyshevFirst:
      return {-0.5, -0.5,
              std::exp(log_gamma_fn(0.5) + log_gamma_fn(n + 1.0) - log_gamma_fn(n + 0.5))};
    case FamilyKind::ChebyshevSecond:
      return {0.5, 0.5,
              std::exp(log_gamma_fn(1.5) + log_gamma_fn(n + 2.0) - log_gamma_fn(n + 1.5))};
    case FamilyKind::ChebyshevThird:
      return {-0.5, 0.5,
              std::exp(log_gamma_fn(0.5) + log_gamma_fn(n + 1.0) - log_gamma_fn(n + 0.5))};
    case FamilyKind::ChebyshevFourth:
      return {0.5, -0.5,
              (2.0 * n + 1.0) *
                  std::exp(log_gamma_fn(1.5) + log_gamma_fn(n + 1.0) - log_gamma_fn(n + 1.5))};
  }
  throw std::logic_error("jacobi_reduction: unknown family kind");
}

/// Evaluates d^k/dx^k of the requested family member. Gegenbauer goes through
/// its own recurrence; the Chebyshev kinds evaluate through their Jacobi
/// reduction and degree-dependent rescaling.
inline double family_eval(const EvalRequest& req) {
  switch (req.family.kind) {
    case FamilyKind::Jacobi:
      return jacobi_eval(req.degree, req.family.a, req.family.b, req.point, req.derivative_order);
    case FamilyKind::Gegenbauer:
      return gegenbauer_eval(req.degree, req.family.alpha, req.point, req.derivative_order);
    case FamilyKind::Legendre:
      return jacobi_eval(req.degree, 0.0, 0.0, req.point, req.derivative_order);
    default: {
      const JacobiReduction r = jacobi_reduction(req.family, req.degree);
      return r.scale * jacobi_eval(req.degree, r.a, r.b, req.point, req.derivative_order);
    }
  }
}

inline double family_eval(const PolynomialFamily& family, int degree, double x,
                          int derivative_order = 0) {
  return family_eval(EvalRequest{family, degree, derivative_order, x});
}

}  // namespace speccol
