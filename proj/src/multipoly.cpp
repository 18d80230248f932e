#include <cmath>
#include <sstream>
#include <stdexcept>

#include "nasolve/problems.hpp"

namespace nasolve {

NonlinearProblem multipoly(const MultipolySpec& spec) {
  if (spec.n < 2) throw std::invalid_argument("multipoly: n must be at least 2");
  if (spec.k < 2) throw std::invalid_argument("multipoly: k must be at least 2");

  const std::size_t n = spec.n;
  const int k = spec.k;

  NonlinearProblem p;
  std::ostringstream name;
  name << "multipoly(n=" << n << " k=" << k << ")";
  p.name = name.str();
  p.dim = n;
  p.start = Vector(n, 0.3);
  p.start[n - 1] = 0.9;
  p.known_root = Vector(n, 0.0);
  Vector e_last(n, 0.0);
  e_last[n - 1] = 1.0;
  p.null_basis = std::vector<Vector>{std::move(e_last)};
  p.root_order = k - 1;

  p.residual = [n, k](std::span<const double> x) {
    Vector f(n);
    for (std::size_t i = 0; i + 1 < n; ++i) f[i] = x[i] * x[i] + x[i] - std::pow(x[i + 1], k);
    f[n - 1] = std::pow(x[n - 1], k);
    return f;
  };
  p.jacobian = [n, k](std::span<const double> x) -> JacobianMatrix {
    UpperTriangularPlus jac;
    jac.diag.resize(n - 1);
    jac.super.resize(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      jac.diag[i] = 2.0 * x[i] + 1.0;
      jac.super[i] = -k * std::pow(x[i + 1], k - 1);
    }
    jac.corner = k * std::pow(x[n - 1], k - 1);
    return jac;
  };
  return p;
}

}  // namespace nasolve
