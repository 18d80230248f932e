#include <array>

#include "nasolve/solvers.hpp"
#include "solver_common.hpp"

namespace nasolve {

namespace {

struct MethodName {
  MethodId id;
  std::string_view name;
};

constexpr std::array<MethodName, 6> kMethodNames{{
    {MethodId::newton, "newton"},
    {MethodId::n_anderson, "n_anderson"},
    {MethodId::gamma_n_anderson, "gamma_n_anderson"},
    {MethodId::armijo_n_anderson, "armijo_n_anderson"},
    {MethodId::gamma_armijo_n_anderson, "gamma_armijo_n_anderson"},
    {MethodId::proj_lm, "proj_lm"},
}};

}  // namespace

std::string_view to_string(MethodId m) {
  for (const auto& e : kMethodNames)
    if (e.id == m) return e.name;
  return "unknown";
}

std::optional<MethodId> parse_method(std::string_view s) {
  for (const auto& e : kMethodNames)
    if (e.name == s) return e.id;
  return std::nullopt;
}

bool uses_safeguard(MethodId m) {
  return m == MethodId::gamma_n_anderson || m == MethodId::gamma_armijo_n_anderson;
}

bool uses_linesearch(MethodId m) {
  return m == MethodId::armijo_n_anderson || m == MethodId::gamma_armijo_n_anderson;
}

NewtonStep newton_step(const NonlinearProblem& p, std::span<const double> x) {
  NewtonStep step;
  step.res = p.residual(x);
  step.w = scaled(-1.0, solve(p.jacobian(x), step.res));
  return step;
}

SolveOutcome newton_solve(const NonlinearProblem& p, const SolverConfig& cfg) {
  detail::SolveRecorder rec(p, cfg);
  Vector x = p.start;
  Vector fx = rec.eval(x);
  rec.visit(x);

  for (int k = 0;; ++k) {
    const double res = norm2(fx);
    if (res < cfg.tol || k == cfg.max_iters) return rec.finish(std::move(x), res);

    Vector w;
    try {
      w = scaled(-1.0, solve(p.jacobian(x), fx));
    } catch (const SingularMatrix& e) {
      rec.fail(e.what());
      return rec.finish(std::move(x), res);
    }

    IterationRecord r;
    r.k = k;
    r.res_norm = res;
    r.step_norm = norm2(w);
    r.step_kind = StepKind::newton;
    rec.push(r);

    for (std::size_t i = 0; i < x.size(); ++i) x[i] += w[i];
    fx = rec.eval(x);
    rec.visit(x);
  }
}

SolveOutcome run_method(MethodId m, const NonlinearProblem& p, const SolverConfig& cfg) {
  switch (m) {
    case MethodId::newton: return newton_solve(p, cfg);
    case MethodId::proj_lm: return projected_lm_solve(p, cfg);
    default: return newton_anderson_solve(p, cfg, uses_safeguard(m), uses_linesearch(m));
  }
}

}  // namespace nasolve
