#include <algorithm>
#include <cmath>

#include "nasolve/solvers.hpp"
#include "solver_common.hpp"

namespace nasolve {

// Projected Levenberg-Marquardt on the box Omega with merit psi = |f|^2 / 2.
// Each iteration tries the projected LM point first, then an Armijo search
// along the projected direction, then a projected gradient step.
SolveOutcome projected_lm_solve(const NonlinearProblem& p, const SolverConfig& cfg) {
  detail::SolveRecorder rec(p, cfg);
  const auto& box = p.bounds;
  Vector x = project_box(box, p.start);
  Vector fx = rec.eval(x);
  rec.visit(x);

  for (int k = 0;; ++k) {
    const double res = norm2(fx);
    if (res < cfg.tol || k == cfg.max_iters) return rec.finish(std::move(x), res);

    const double psi = 0.5 * res * res;
    const double mu = std::max(res * res, cfg.lm_mu_floor);

    JacobianMatrix jac;
    Vector grad, d;
    try {
      jac = p.jacobian(x);
      grad = multiply_transpose(jac, fx);
      d = normal_equations_solve(jac, mu, scaled(-1.0, grad));
    } catch (const SingularMatrix& e) {
      rec.fail(e.what());
      return rec.finish(std::move(x), res);
    }

    IterationRecord r;
    r.k = k;
    r.res_norm = res;
    r.step_norm = norm2(d);
    r.step_kind = StepKind::lm;

    Vector x_lm = project_box(box, axpy(1.0, d, x));
    Vector f_lm = rec.eval(x_lm);
    Vector x_next, f_next;
    bool accepted = false;

    if (norm2(f_lm) <= cfg.ls_trigger * res) {
      x_next = std::move(x_lm);
      f_next = std::move(f_lm);
      accepted = true;
    } else {
      const Vector s = subtract(x_lm, x);
      const double slope = dot(grad, s);
      if (slope <= -cfg.lm_descent_rho * std::pow(norm2(s), cfg.lm_descent_p)) {
        double t = cfg.lm_step0;
        for (int j = 0; j < cfg.ls_max_trials && !accepted; ++j, t *= cfg.lm_shrink) {
          Vector xt, ft;
          if (t == 1.0) {
            // x + s is the LM point already evaluated.
            xt = x_lm;
            ft = f_lm;
          } else {
            xt = axpy(t, s, x);
            ft = p.residual(xt);
            ++r.ls_evals;
          }
          if (0.5 * dot(ft, ft) <= psi + cfg.ls_damping * t * slope) {
            x_next = std::move(xt);
            f_next = std::move(ft);
            accepted = true;
            r.step_kind = StepKind::lm_linesearch;
          }
        }
      }
      if (!accepted) {
        r.step_kind = StepKind::projected_gradient;
        double t = 1.0;
        for (int j = 0; j < cfg.ls_max_trials && !accepted; ++j, t *= cfg.lm_shrink) {
          x_next = project_box(box, axpy(-t, grad, x));
          f_next = p.residual(x_next);
          ++r.ls_evals;
          const double decrease = dot(grad, subtract(x_next, x));
          accepted = 0.5 * dot(f_next, f_next) <= psi + cfg.ls_damping * decrease;
        }
        // On exhaustion the last (smallest) projected gradient trial is kept.
        r.ls_exhausted = !accepted;
      }
    }
    rec.count_evals(r.ls_evals);
    rec.push(r);

    x = std::move(x_next);
    fx = std::move(f_next);
    rec.visit(x);
  }
}

}  // namespace nasolve
