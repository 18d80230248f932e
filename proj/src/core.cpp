#include "nasolve/core.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace nasolve {

std::string_view to_string(StepKind kind) {
  switch (kind) {
    case StepKind::newton: return "newton";
    case StepKind::anderson: return "anderson";
    case StepKind::anderson_linesearch: return "anderson_linesearch";
    case StepKind::lm: return "lm";
    case StepKind::lm_linesearch: return "lm_linesearch";
    case StepKind::projected_gradient: return "projected_gradient";
  }
  return "unknown";
}

void validate_config(const SolverConfig& cfg) {
  auto fail = [](const char* what) { throw std::invalid_argument(std::string("invalid solver config: ") + what); };
  if (!(cfg.tol > 0.0)) fail("tol must be positive");
  if (cfg.max_iters < 1) fail("max_iters must be at least 1");
  if (!(cfg.r > 0.0 && cfg.r < 1.0)) fail("r must lie in (0,1)");
  if (!(cfg.ls_damping > 0.0 && cfg.ls_damping < 1.0)) fail("ls_damping must lie in (0,1)");
  if (!(cfg.ls_step0 > 0.0 && cfg.ls_step0 <= 1.0)) fail("ls_step0 must lie in (0,1]");
  if (!(cfg.ls_shrink > 0.0 && cfg.ls_shrink < 1.0)) fail("ls_shrink must lie in (0,1)");
  if (cfg.ls_max_trials < 1) fail("ls_max_trials must be at least 1");
  if (!(cfg.lm_step0 > 0.0 && cfg.lm_step0 <= 1.0)) fail("lm_step0 must lie in (0,1]");
  if (!(cfg.lm_shrink > 0.0 && cfg.lm_shrink < 1.0)) fail("lm_shrink must lie in (0,1)");
}

std::vector<std::string> validate_problem(const NonlinearProblem& p) {
  std::vector<std::string> out;
  auto report = [&](const std::string& s) { out.push_back(s); };
  const std::size_t n = p.dim;

  if (n == 0) report("dimension: n must be positive");
  if (!p.residual) report("residual: evaluator missing");
  if (!p.jacobian) report("jacobian: evaluator missing");
  if (p.start.size() != n) {
    std::ostringstream s;
    s << "start: length " << p.start.size() << " differs from n=" << n;
    report(s.str());
  }

  if (p.bounds) {
    const auto& b = *p.bounds;
    if (b.lower.size() != n || b.upper.size() != n) {
      report("bounds: length differs from n");
    } else if (p.start.size() == n) {
      for (std::size_t i = 0; i < n; ++i) {
        if (!(b.lower[i] <= p.start[i] && p.start[i] <= b.upper[i])) {
          std::ostringstream s;
          s << "bounds: start[" << i << "]=" << p.start[i] << " outside [" << b.lower[i] << ", "
            << b.upper[i] << "]";
          report(s.str());
          break;
        }
      }
    }
  }

  if (p.root_order && *p.root_order < 1) report("root_order: must be a positive integer");

  if (p.known_root && p.residual) {
    const Vector& root = *p.known_root;
    if (root.size() != n) {
      report("known_root: length differs from n");
    } else {
      const double res = norm2(p.residual(root));
      const double limit = 1e-10 * (1.0 + norm2(root));
      if (!(res <= limit)) {
        std::ostringstream s;
        s << "residual-at-root: |f(x*)|=" << res << " exceeds " << limit;
        report(s.str());
      }
    }
  }

  if (p.null_basis) {
    const auto& basis = *p.null_basis;
    bool shape_ok = true;
    for (const auto& col : basis) shape_ok = shape_ok && col.size() == n;
    if (!shape_ok) {
      report("null_basis: column length differs from n");
    } else {
      double worst = 0.0;
      for (std::size_t a = 0; a < basis.size(); ++a)
        for (std::size_t b = a; b < basis.size(); ++b)
          worst = std::max(worst, std::abs(dot(basis[a], basis[b]) - (a == b ? 1.0 : 0.0)));
      if (worst > 1e-12) {
        std::ostringstream s;
        s << "null_basis orthonormality: max |B^T B - I| = " << worst;
        report(s.str());
      }
      if (p.known_root && p.known_root->size() == n && p.jacobian) {
        const JacobianMatrix jac = p.jacobian(*p.known_root);
        double jac_scale = 1.0;
        if (!std::holds_alternative<LinearOperator>(jac)) jac_scale = std::max(1.0, densify(jac).max_abs());
        for (std::size_t c = 0; c < basis.size(); ++c) {
          const double r = norm2(multiply(jac, basis[c]));
          if (r > 1e-8 * jac_scale) {
            std::ostringstream s;
            s << "null_basis annihilation: |J(x*) b_" << c << "| = " << r;
            report(s.str());
          }
        }
      }
    }
  }
  return out;
}

}  // namespace nasolve
