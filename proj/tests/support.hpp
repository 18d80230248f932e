#pragma once

#include <cmath>
#include <random>

#include "nasolve/core.hpp"

namespace testing {

using nasolve::DenseMatrix;
using nasolve::NonlinearProblem;
using nasolve::Vector;

/// f(x) = x^2 in one dimension.
inline NonlinearProblem square(double x0 = 1.0) {
  NonlinearProblem p;
  p.name = "square";
  p.dim = 1;
  p.start = {x0};
  p.residual = [](std::span<const double> x) { return Vector{x[0] * x[0]}; };
  p.jacobian = [](std::span<const double> x) -> nasolve::JacobianMatrix {
    DenseMatrix j(1, 1);
    j(0, 0) = 2.0 * x[0];
    return j;
  };
  p.known_root = Vector{0.0};
  p.null_basis = std::vector<Vector>{{1.0}};
  return p;
}

/// f(x) = x - a.
inline NonlinearProblem shifted_identity(const Vector& a, Vector start) {
  NonlinearProblem p;
  p.name = "shifted";
  p.dim = a.size();
  p.start = std::move(start);
  p.residual = [a](std::span<const double> x) {
    Vector f(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) f[i] = x[i] - a[i];
    return f;
  };
  p.jacobian = [n = a.size()](std::span<const double>) -> nasolve::JacobianMatrix {
    return DenseMatrix::identity(n);
  };
  p.known_root = a;
  return p;
}

/// f(x) = A x.
inline NonlinearProblem linear_map(const DenseMatrix& a) {
  NonlinearProblem p;
  p.name = "linear";
  p.dim = a.rows();
  p.start = Vector(a.rows(), 0.0);
  p.residual = [a](std::span<const double> x) { return nasolve::matvec(a, x); };
  p.jacobian = [a](std::span<const double>) -> nasolve::JacobianMatrix { return a; };
  return p;
}

inline Vector random_vector(std::mt19937_64& rng, std::size_t n, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vector v(n);
  for (double& x : v) x = u(rng);
  return v;
}

inline DenseMatrix random_matrix(std::mt19937_64& rng, std::size_t n, double diag_boost = 0.0) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  DenseMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = u(rng) + (i == j ? diag_boost : 0.0);
  return a;
}

}  // namespace testing
