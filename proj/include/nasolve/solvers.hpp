#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "nasolve/core.hpp"

namespace nasolve {

enum class MethodId { newton, n_anderson, gamma_n_anderson, armijo_n_anderson, gamma_armijo_n_anderson, proj_lm };

inline constexpr MethodId kAllMethods[] = {MethodId::newton,
                                           MethodId::n_anderson,
                                           MethodId::gamma_n_anderson,
                                           MethodId::armijo_n_anderson,
                                           MethodId::gamma_armijo_n_anderson,
                                           MethodId::proj_lm};

std::string_view to_string(MethodId m);
std::optional<MethodId> parse_method(std::string_view s);
bool uses_safeguard(MethodId m);
bool uses_linesearch(MethodId m);

/// Raised when no backtracking trial satisfies the Armijo condition.
class LineSearchExhausted : public Error {
 public:
  LineSearchExhausted(int evals, Vector last_x, Vector last_f);
  int evals() const noexcept { return evals_; }
  const Vector& last_x() const noexcept { return last_x_; }
  const Vector& last_f() const noexcept { return last_f_; }

 private:
  int evals_;
  Vector last_x_;
  Vector last_f_;
};

struct NewtonStep {
  Vector w;    // solves f'(x) w = -f(x)
  Vector res;  // f(x)
};

/// Throws SingularMatrix when f'(x) is not invertible.
NewtonStep newton_step(const NonlinearProblem& p, std::span<const double> x);

SolveOutcome newton_solve(const NonlinearProblem& p, const SolverConfig& cfg);

/// x_k + w_next - gamma (x_k - x_km1 + w_next - w_prev)
Vector anderson_combine(std::span<const double> x_k, std::span<const double> x_km1,
                        std::span<const double> w_next, std::span<const double> w_prev, double gamma);

struct SafeguardDecision {
  double lambda = 1.0;
  bool took_newton_step = false;
  double beta = 0.0;
  /// The |gamma|/|1-gamma| > beta branch was entered.
  bool scaled = false;
};

/// Depth-one gamma safeguarding. Requires positive step norms and r in (0,1).
SafeguardDecision gamma_safeguard(double gamma, double w_next_norm, double w_prev_norm, double r);

SolveOutcome newton_anderson_solve(const NonlinearProblem& p, const SolverConfig& cfg, bool safeguard,
                                   bool linesearch);

struct LineSearchResult {
  Vector x;
  Vector f;
  int evals = 0;
  double step = 0.0;
};

/// Backtracking on g(x) = |f(x)|^2: accepts the smallest j with
/// g(x + s d) <= g(x) + damping * s * g'(x)d, s = step0 * shrink^j.
/// `slope` is g'(x)d = 2 f(x)^T J(x) d.
LineSearchResult armijo_search(const NonlinearProblem& p, std::span<const double> x, double g0, double slope,
                               std::span<const double> d, const SolverConfig& cfg, double step0, double shrink);

/// Convenience overload that evaluates f(x) and J(x) itself and uses cfg's shrink.
LineSearchResult armijo_search(const NonlinearProblem& p, std::span<const double> x, std::span<const double> d,
                               const SolverConfig& cfg, double step0);

/// Componentwise projection onto the box (identity when absent).
Vector project_box(const std::optional<Bounds>& bounds, std::span<const double> x);

SolveOutcome projected_lm_solve(const NonlinearProblem& p, const SolverConfig& cfg);

SolveOutcome run_method(MethodId m, const NonlinearProblem& p, const SolverConfig& cfg);

}  // namespace nasolve
