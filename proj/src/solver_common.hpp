#pragma once

#include <chrono>

#include "nasolve/solvers.hpp"

namespace nasolve::detail {

/// Shared bookkeeping for the iterative solvers: evaluation counts, trace,
/// optional iterate history and timing.
class SolveRecorder {
 public:
  SolveRecorder(const NonlinearProblem& p, const SolverConfig& cfg)
      : problem_(p), cfg_(cfg), start_(std::chrono::steady_clock::now()) {
    validate_config(cfg);
    if (cfg.keep_history) out_.iterate_history.emplace();
  }

  Vector eval(std::span<const double> x) {
    ++out_.f_evals;
    return problem_.residual(x);
  }

  void count_evals(int n) { out_.f_evals += n; }

  void visit(std::span<const double> x) {
    if (out_.iterate_history) out_.iterate_history->emplace_back(x.begin(), x.end());
  }

  void push(const IterationRecord& rec) { out_.trace.push_back(rec); }

  void fail(std::string why) { out_.failure = std::move(why); }

  SolveOutcome finish(Vector x, double res) {
    out_.final_x = std::move(x);
    out_.final_res = res;
    out_.iterations = static_cast<int>(out_.trace.size());
    out_.converged = res < cfg_.tol;
    out_.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    return std::move(out_);
  }

 private:
  const NonlinearProblem& problem_;
  const SolverConfig& cfg_;
  std::chrono::steady_clock::time_point start_;
  SolveOutcome out_;
};

}  // namespace nasolve::detail
