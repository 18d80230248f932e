#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nasolve/linalg.hpp"

namespace nasolve {

struct Bounds {
  Vector lower;
  Vector upper;
};

/// A square system f(x) = 0 with optional ground truth about its root.
///
/// Evaluators must be reentrant: a problem is shared read-only between
/// concurrent solves.
struct NonlinearProblem {
  std::string name;
  std::size_t dim = 0;
  std::function<Vector(std::span<const double>)> residual;
  std::function<JacobianMatrix(std::span<const double>)> jacobian;
  Vector start;

  std::optional<Vector> known_root;
  /// Orthonormal basis of null(f'(x*)), one vector per column.
  std::optional<std::vector<Vector>> null_basis;
  std::optional<int> root_order;
  std::optional<Bounds> bounds;
};

struct SolverConfig {
  double tol = 1e-8;
  int max_iters = 50;
  /// Safeguard parameter r in (0,1).
  double r = 0.9;
  /// Anderson line search runs only if |f(x_trial)| > ls_trigger |f(x_k)|.
  double ls_trigger = 0.99;
  double ls_damping = 1e-4;
  double ls_step0 = 0.5;
  double ls_shrink = 0.3;
  int ls_max_trials = 30;
  /// Projected Levenberg-Marquardt backtracking: t = lm_step0 * lm_shrink^j.
  double lm_step0 = 1.0;
  double lm_shrink = 0.5;
  /// Descent test for the projected LM direction: grad^T s <= -rho |s|^p.
  double lm_descent_rho = 1e-8;
  double lm_descent_p = 2.1;
  double lm_mu_floor = 1e-16;
  bool keep_history = false;
};

/// Throws std::invalid_argument naming the first violated constraint.
void validate_config(const SolverConfig& cfg);

enum class StepKind { newton, anderson, anderson_linesearch, lm, lm_linesearch, projected_gradient };

std::string_view to_string(StepKind kind);

/// What happened on the step from x_k to x_{k+1}.
struct IterationRecord {
  int k = 0;
  double res_norm = 0.0;   // |f(x_k)|
  double step_norm = 0.0;  // |w_{k+1}|
  double gamma_raw = 0.0;
  double lambda = 1.0;
  double gamma_used = 0.0;
  double theta = 1.0;
  StepKind step_kind = StepKind::newton;
  int ls_evals = 0;
  bool ls_exhausted = false;
};

struct SolveOutcome {
  bool converged = false;
  int iterations = 0;
  double final_res = 0.0;
  /// Residual evaluations, including line-search and acceptance trials.
  int f_evals = 0;
  std::vector<IterationRecord> trace;
  /// x_0 .. x_iterations, only when SolverConfig::keep_history is set.
  std::optional<std::vector<Vector>> iterate_history;
  Vector final_x;
  double wall_time = 0.0;
  /// Set when the solve stopped early on an error (e.g. a singular Jacobian).
  std::optional<std::string> failure;
};

/// Checks the NonlinearProblem invariants. Returns one description per violation.
std::vector<std::string> validate_problem(const NonlinearProblem& p);

}  // namespace nasolve
