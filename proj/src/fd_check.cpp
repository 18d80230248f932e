#include <algorithm>
#include <cmath>
#include <limits>

#include "nasolve/problems.hpp"

namespace nasolve {

DenseMatrix fd_jacobian(const NonlinearProblem& p, std::span<const double> x) {
  const std::size_t n = x.size();
  const double h0 = std::cbrt(std::numeric_limits<double>::epsilon());
  DenseMatrix jac(n, n);
  Vector xp(x.begin(), x.end());
  for (std::size_t j = 0; j < n; ++j) {
    const double h = h0 * (1.0 + std::abs(x[j]));
    xp[j] = x[j] + h;
    const Vector fp = p.residual(xp);
    xp[j] = x[j] - h;
    const Vector fm = p.residual(xp);
    xp[j] = x[j];
    for (std::size_t i = 0; i < n; ++i) jac(i, j) = (fp[i] - fm[i]) / (2.0 * h);
  }
  return jac;
}

double fd_jacobian_check(const NonlinearProblem& p, std::span<const double> x) {
  const DenseMatrix analytic = densify(p.jacobian(x));
  const DenseMatrix approx = fd_jacobian(p, x);
  double worst = 0.0;
  for (std::size_t i = 0; i < analytic.rows(); ++i)
    for (std::size_t j = 0; j < analytic.cols(); ++j)
      worst = std::max(worst, std::abs(analytic(i, j) - approx(i, j)) / (1.0 + std::abs(analytic(i, j))));
  return worst;
}

}  // namespace nasolve
