#include <cmath>
#include <sstream>
#include <stdexcept>

#include "nasolve/problems.hpp"
#include "nasolve/solvers.hpp"

namespace nasolve {

namespace {

Vector midpoint_nodes(std::size_t n) {
  Vector mu(n);
  for (std::size_t i = 0; i < n; ++i) mu[i] = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
  return mu;
}

}  // namespace

NonlinearProblem h_equation(const HEquationSpec& spec) {
  if (spec.n < 1) throw std::invalid_argument("h_equation: n must be at least 1");
  if (!(spec.omega >= 0.0 && spec.omega <= 1.0)) throw std::invalid_argument("h_equation: omega must lie in [0,1]");

  const std::size_t n = spec.n;
  const double c = spec.omega / (2.0 * static_cast<double>(n));
  const Vector mu = midpoint_nodes(n);

  // s_i = c sum_j mu_i x_j / (mu_i + mu_j)
  auto inner_sums = [n, c, mu](std::span<const double> x) {
    Vector s(n);
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) acc += mu[i] * x[j] / (mu[i] + mu[j]);
      s[i] = c * acc;
    }
    return s;
  };

  NonlinearProblem p;
  std::ostringstream name;
  name << "h_equation(n=" << n << " omega=" << spec.omega << ")";
  p.name = name.str();
  p.dim = n;
  p.start = Vector(n, 1.0);
  p.residual = [n, inner_sums](std::span<const double> x) {
    const Vector s = inner_sums(x);
    Vector f(n);
    for (std::size_t i = 0; i < n; ++i) f[i] = x[i] - 1.0 / (1.0 - s[i]);
    return f;
  };
  p.jacobian = [n, c, mu, inner_sums](std::span<const double> x) -> JacobianMatrix {
    const Vector s = inner_sums(x);
    DenseMatrix jac(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      const double scale = c / ((1.0 - s[i]) * (1.0 - s[i]));
      auto row = jac.row(i);
      for (std::size_t j = 0; j < n; ++j) row[j] = -scale * mu[i] / (mu[i] + mu[j]);
      row[i] += 1.0;
    }
    return jac;
  };
  return p;
}

std::pair<double, Vector> smallest_singular_pair(const DenseMatrix& a, int iterations) {
  const LuFactorization lu(a);
  const std::size_t n = a.rows();
  Vector v(n, 1.0 / std::sqrt(static_cast<double>(n)));
  double growth = 0.0;
  for (int it = 0; it < iterations; ++it) {
    // (A^T A)^{-1} v = A^{-1} A^{-T} v
    Vector y = lu.solve(lu.solve_transpose(v));
    growth = norm2(y);
    v = scaled(1.0 / growth, y);
  }
  // Largest eigenvalue of (A^T A)^{-1} is 1/sigma_min^2.
  return {1.0 / std::sqrt(growth), v};
}

NonlinearProblem h_equation_with_ground_truth(const HEquationSpec& spec, double root_tol) {
  NonlinearProblem p = h_equation(spec);
  SolverConfig cfg;
  cfg.tol = root_tol;
  cfg.max_iters = 200;
  SolveOutcome root = newton_solve(p, cfg);
  if (!root.converged) {
    // Linear Newton convergence at the bifurcation point can stall on rounding;
    // the accelerated iteration reaches the same root from there.
    NonlinearProblem from_newton = p;
    from_newton.start = root.final_x;
    root = newton_anderson_solve(from_newton, cfg, false, false);
  }
  if (!root.converged) {
    std::ostringstream out;
    out << "h_equation ground truth: root solve stopped at |f|=" << root.final_res;
    throw std::runtime_error(out.str());
  }
  p.known_root = root.final_x;
  if (spec.omega == 1.0) {
    const DenseMatrix jac = std::get<DenseMatrix>(p.jacobian(*p.known_root));
    auto [sigma, v] = smallest_singular_pair(jac);
    (void)sigma;
    p.null_basis = std::vector<Vector>{std::move(v)};
    p.root_order = 1;
  }
  return p;
}

}  // namespace nasolve
