#include <algorithm>
#include <cmath>

#include "nasolve/solvers.hpp"

namespace nasolve {

LineSearchExhausted::LineSearchExhausted(int evals, Vector last_x, Vector last_f)
    : Error("Armijo line search exhausted its backtracking trials"),
      evals_(evals),
      last_x_(std::move(last_x)),
      last_f_(std::move(last_f)) {}

LineSearchResult armijo_search(const NonlinearProblem& p, std::span<const double> x, double g0, double slope,
                               std::span<const double> d, const SolverConfig& cfg, double step0, double shrink) {
  LineSearchResult out;
  double s = step0;
  for (int j = 0; j < cfg.ls_max_trials; ++j, s *= shrink) {
    out.x = axpy(s, d, x);
    out.f = p.residual(out.x);
    ++out.evals;
    const double g = dot(out.f, out.f);
    if (g <= g0 + cfg.ls_damping * s * slope) {
      out.step = s;
      return out;
    }
  }
  throw LineSearchExhausted(out.evals, std::move(out.x), std::move(out.f));
}

LineSearchResult armijo_search(const NonlinearProblem& p, std::span<const double> x, std::span<const double> d,
                               const SolverConfig& cfg, double step0) {
  const Vector fx = p.residual(x);
  const Vector jd = multiply(p.jacobian(x), d);
  return armijo_search(p, x, dot(fx, fx), 2.0 * dot(fx, jd), d, cfg, step0, cfg.ls_shrink);
}

Vector project_box(const std::optional<Bounds>& bounds, std::span<const double> x) {
  Vector out(x.begin(), x.end());
  if (!bounds) return out;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::clamp(out[i], bounds->lower[i], bounds->upper[i]);
  return out;
}

}  // namespace nasolve
