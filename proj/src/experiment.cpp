#include <future>

#include "nasolve/harness.hpp"

namespace nasolve {

namespace {

bool is_registry_name(const std::string& name) {
  for (const auto& e : registry_entries())
    if (e.name == name) return true;
  return false;
}

MethodRow run_one(MethodId m, const NonlinearProblem& p, const SolverConfig& cfg) {
  MethodRow row;
  row.method = m;
  row.r = cfg.r;
  row.outcome = run_method(m, p, cfg);
  for (const auto& rec : row.outcome.trace) {
    switch (rec.step_kind) {
      case StepKind::lm: ++row.lm_steps; break;
      case StepKind::lm_linesearch: ++row.ls_steps; break;
      case StepKind::projected_gradient: ++row.pg_steps; break;
      default:
        if (rec.ls_evals > 0) ++row.ls_steps;
        break;
    }
  }
  return row;
}

}  // namespace

void validate_spec(const ExperimentSpec& spec) {
  if (spec.methods.empty()) throw SpecError("experiment needs at least one method");
  const auto& sel = spec.problem;
  if (sel.name == "h_equation") {
    if (!(sel.omega >= 0.0 && sel.omega <= 1.0)) throw SpecError("h_equation: omega must lie in [0,1]");
  } else if (sel.name == "multipoly") {
    if (sel.k < 2) throw SpecError("multipoly: k must be at least 2");
    if (sel.n != 0 && sel.n < 2) throw SpecError("multipoly: n must be at least 2");
  } else if (!is_registry_name(sel.name)) {
    throw SpecError("unknown problem '" + sel.name + "'");
  }
  if (spec.r && !(*spec.r > 0.0 && *spec.r < 1.0)) throw SpecError("r must lie in (0,1)");
  try {
    validate_config(effective_config(spec));
  } catch (const std::invalid_argument& e) {
    throw SpecError(e.what());
  }
}

NonlinearProblem build_problem(const ProblemSelector& sel) {
  if (sel.name == "h_equation") return h_equation({sel.n == 0 ? 500 : sel.n, sel.omega});
  if (sel.name == "multipoly") return multipoly({sel.n == 0 ? 10000 : sel.n, sel.k});
  return registry_problem(sel.name);
}

SolverConfig effective_config(const ExperimentSpec& spec) {
  SolverConfig cfg = spec.config;
  const auto& name = spec.problem.name;
  if (name == "multipoly") {
    cfg.r = 0.7;
  } else if (is_registry_name(name)) {
    const RegistryEntry& e = registry_entry(name);
    cfg.r = e.r;
    cfg.ls_step0 = e.ls_step0;
  }
  if (spec.r) cfg.r = *spec.r;
  if (spec.ls_step0) cfg.ls_step0 = *spec.ls_step0;
  cfg.keep_history = spec.keep_history;
  return cfg;
}

RunReport run_experiment(const ExperimentSpec& spec) {
  validate_spec(spec);
  const NonlinearProblem problem = build_problem(spec.problem);
  const SolverConfig cfg = effective_config(spec);

  RunReport report;
  report.problem = problem.name;
  if (spec.parallel) {
    std::vector<std::future<MethodRow>> jobs;
    for (MethodId m : spec.methods)
      jobs.push_back(std::async(std::launch::async, [&problem, &cfg, m] { return run_one(m, problem, cfg); }));
    for (auto& j : jobs) report.rows.push_back(j.get());
  } else {
    for (MethodId m : spec.methods) report.rows.push_back(run_one(m, problem, cfg));
  }
  return report;
}

std::vector<ExperimentSpec> standard_matrix(const SolverConfig& base) {
  std::vector<ExperimentSpec> out;
  const std::vector<MethodId> all(std::begin(kAllMethods), std::end(kAllMethods));
  auto add = [&](ProblemSelector sel) {
    ExperimentSpec s;
    s.problem = std::move(sel);
    s.methods = all;
    s.config = base;
    out.push_back(std::move(s));
  };
  for (double omega : {0.5, 0.9, 0.999, 1.0}) add({"h_equation", 500, omega, 2});
  for (int k : {2, 3, 7}) add({"multipoly", 10000, 1.0, k});
  for (const auto& e : registry_entries())
    if (e.transcribed) add({e.name, 0, 1.0, 2});
  return out;
}

}  // namespace nasolve
