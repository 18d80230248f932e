#include <cmath>

#include "nasolve/diagnostics.hpp"
#include "nasolve/solvers.hpp"
#include "solver_common.hpp"

namespace nasolve {

Vector anderson_combine(std::span<const double> x_k, std::span<const double> x_km1,
                        std::span<const double> w_next, std::span<const double> w_prev, double gamma) {
  Vector out(x_k.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = x_k[i] + w_next[i] - gamma * (x_k[i] - x_km1[i] + w_next[i] - w_prev[i]);
  return out;
}

SafeguardDecision gamma_safeguard(double gamma, double w_next_norm, double w_prev_norm, double r) {
  SafeguardDecision dec;
  dec.beta = r * w_next_norm / w_prev_norm;
  if (gamma == 0.0 || gamma >= 1.0) {
    dec.took_newton_step = true;
    return dec;
  }
  const double beta = dec.beta;
  if (std::abs(gamma) / std::abs(1.0 - gamma) > beta) {
    dec.scaled = true;
    if (gamma > 0.0) {
      const double lambda = beta / (gamma * (1.0 + beta));
      if (lambda < 1.0) dec.lambda = lambda;
    }
    if (gamma < 0.0) {
      const double lambda = beta / (gamma * (beta - 1.0));
      if (lambda >= 0.0 && lambda < 1.0) dec.lambda = lambda;
    }
  }
  return dec;
}

SolveOutcome newton_anderson_solve(const NonlinearProblem& p, const SolverConfig& cfg, bool safeguard,
                                   bool linesearch) {
  detail::SolveRecorder rec(p, cfg);
  Vector x = p.start;
  Vector fx = rec.eval(x);
  rec.visit(x);
  Vector x_prev, w_prev;

  for (int k = 0;; ++k) {
    const double res = norm2(fx);
    if (res < cfg.tol || k == cfg.max_iters) return rec.finish(std::move(x), res);

    JacobianMatrix jac;
    Vector w;
    try {
      jac = p.jacobian(x);
      w = scaled(-1.0, solve(jac, fx));
    } catch (const SingularMatrix& e) {
      rec.fail(e.what());
      return rec.finish(std::move(x), res);
    }

    IterationRecord r;
    r.k = k;
    r.res_norm = res;
    r.step_norm = norm2(w);

    Vector x_next;
    bool mixed = false;
    if (k > 0) {
      try {
        r.gamma_raw = lstsq_gamma(w, w_prev);
        mixed = true;
      } catch (const DegenerateSteps&) {
      }
    }
    if (mixed && safeguard) {
      const SafeguardDecision dec = gamma_safeguard(r.gamma_raw, r.step_norm, norm2(w_prev), cfg.r);
      mixed = !dec.took_newton_step;
      r.lambda = dec.lambda;
    }
    if (mixed) {
      r.gamma_used = r.lambda * r.gamma_raw;
      r.theta = theta_gain(w, w_prev, r.gamma_used);
      r.step_kind = StepKind::anderson;
      x_next = anderson_combine(x, x_prev, w, w_prev, r.gamma_used);
    } else {
      r.lambda = 1.0;
      r.gamma_used = 0.0;
      r.theta = 1.0;
      r.step_kind = StepKind::newton;
      x_next = axpy(1.0, w, x);
    }

    Vector f_next = rec.eval(x_next);
    if (linesearch && k > 0 && norm2(f_next) > cfg.ls_trigger * res) {
      const Vector d = subtract(x_next, x);
      const double g0 = dot(fx, fx);
      const double slope = 2.0 * dot(fx, multiply(jac, d));
      try {
        LineSearchResult ls = armijo_search(p, x, g0, slope, d, cfg, cfg.ls_step0, cfg.ls_shrink);
        r.ls_evals = ls.evals;
        x_next = std::move(ls.x);
        f_next = std::move(ls.f);
      } catch (const LineSearchExhausted& e) {
        // Keep the full step.
        r.ls_evals = e.evals();
        r.ls_exhausted = true;
      }
      rec.count_evals(r.ls_evals);
      if (r.step_kind == StepKind::anderson) r.step_kind = StepKind::anderson_linesearch;
    }
    rec.push(r);

    x_prev = std::move(x);
    w_prev = std::move(w);
    x = std::move(x_next);
    fx = std::move(f_next);
    rec.visit(x);
  }
}

}  // namespace nasolve
