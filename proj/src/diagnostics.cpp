#include "nasolve/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nasolve/solvers.hpp"

namespace nasolve {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_ground_truth(const NonlinearProblem& p) {
  if (!p.known_root || !p.null_basis)
    throw MissingGroundTruth("problem '" + p.name + "' has no known root and null basis");
}

enum class Side { N, R, none };

struct IndexTerms {
  Vector null_term;   // P_N e_i / 2
  Vector range_term;  // P_N(e_i + w_{i+1}) - P_N e_i / 2
  Side side = Side::none;
};

IndexTerms index_terms(const ErrorSplit& split, std::span<const double> w, const NonlinearProblem& p,
                       double dominance) {
  IndexTerms t;
  t.null_term = scaled(0.5, split.pn);
  t.range_term = axpy(1.0, project_null(p, w), t.null_term);
  const double n = norm2(t.null_term);
  const double r = norm2(t.range_term);
  if (n > 0.0 && n >= dominance * r) {
    t.side = Side::N;
  } else if (r > 0.0 && r >= dominance * n) {
    t.side = Side::R;
  }
  return t;
}

Vector mix(double gamma, std::span<const double> a, std::span<const double> b) {
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = (1.0 - gamma) * a[i] + gamma * b[i];
  return out;
}

}  // namespace

std::string_view to_string(PairType t) {
  switch (t) {
    case PairType::N_pair: return "N";
    case PairType::R_pair: return "R";
    case PairType::NR_pair: return "NR";
    case PairType::RN_pair: return "RN";
    case PairType::undominated: return "undominated";
  }
  return "undominated";
}

Vector project_null(const NonlinearProblem& p, std::span<const double> v) {
  require_ground_truth(p);
  Vector out(v.size(), 0.0);
  for (const auto& b : *p.null_basis) {
    const double c = dot(b, v);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += c * b[i];
  }
  return out;
}

ErrorSplit split_error(std::span<const double> x, const NonlinearProblem& p) {
  require_ground_truth(p);
  ErrorSplit s;
  s.e = subtract(x, *p.known_root);
  s.pn = project_null(p, s.e);
  s.pr = subtract(s.e, s.pn);
  s.pn_norm = norm2(s.pn);
  s.pr_norm = norm2(s.pr);
  s.sigma = s.pn_norm > 0.0 ? s.pr_norm / s.pn_norm : kInf;
  return s;
}

double theta_gain(std::span<const double> w_next, std::span<const double> w_prev, double gamma_used) {
  const double wn = norm2(w_next);
  if (wn == 0.0) throw ZeroStep("theta undefined for a zero Newton step");
  Vector mixed(w_next.size());
  for (std::size_t i = 0; i < mixed.size(); ++i) mixed[i] = w_next[i] - gamma_used * (w_next[i] - w_prev[i]);
  return norm2(mixed) / wn;
}

NuRatio nu_ratio(double gamma_used, double a, double b) {
  const double u = std::abs(1.0 - gamma_used) * a;
  const double v = std::abs(gamma_used) * b;
  if (u == 0.0 || v == 0.0) return {0.0};
  return {std::min(u, v) / std::max(u, v)};
}

PairLabel classify_pair(const ErrorSplit& split_k, const ErrorSplit& split_km1, std::span<const double> w_next,
                        std::span<const double> w_k, const NonlinearProblem& p, double gamma_used,
                        const ErrorSplit* split_next, PairOptions opts) {
  require_ground_truth(p);
  const IndexTerms tk = index_terms(split_k, w_next, p, opts.dominance);
  const IndexTerms tkm1 = index_terms(split_km1, w_k, p, opts.dominance);

  PairLabel label;
  if (tk.side == Side::N && tkm1.side == Side::N) label.type = PairType::N_pair;
  else if (tk.side == Side::R && tkm1.side == Side::R) label.type = PairType::R_pair;
  else if (tk.side == Side::N && tkm1.side == Side::R) label.type = PairType::NR_pair;
  else if (tk.side == Side::R && tkm1.side == Side::N) label.type = PairType::RN_pair;
  if (label.type == PairType::undominated || split_next == nullptr) return label;

  // Mixed expansion of e_{k+1}: dominant sum, the competing sum, and the remainder.
  const auto dominant = [](const IndexTerms& t) -> const Vector& {
    return t.side == Side::N ? t.null_term : t.range_term;
  };
  const auto other = [](const IndexTerms& t) -> const Vector& {
    return t.side == Side::N ? t.range_term : t.null_term;
  };
  const Vector sum = mix(gamma_used, dominant(tk), dominant(tkm1));
  const Vector rest = mix(gamma_used, other(tk), other(tkm1));
  Vector remainder = subtract(split_next->e, sum);
  remainder = subtract(remainder, rest);
  label.strong = norm2(sum) >= opts.dominance * std::max(norm2(rest), norm2(remainder));
  return label;
}

std::vector<bool> compatibility_monitor(std::span<const IterationRecord> trace, std::span<const ErrorSplit> splits,
                                        double C) {
  std::vector<bool> out;
  out.reserve(trace.size());
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const auto k = static_cast<std::size_t>(trace[i].k);
    if (k + 1 >= splits.size()) break;
    const double lhs = splits[k + 1].pn_norm;
    out.push_back(lhs <= C * trace[i].theta * trace[i].step_norm);
  }
  return out;
}

double estimate_rate(std::span<const double> values) {
  std::vector<double> pos;
  for (double v : values)
    if (v > 0.0 && std::isfinite(v)) pos.push_back(v);
  if (pos.size() < 4) throw InsufficientTail("rate estimate needs at least four positive entries");
  // Geometric mean of successive ratios telescopes to the endpoint ratio.
  double log_sum = 0.0;
  for (std::size_t i = 1; i < pos.size(); ++i) log_sum += std::log(pos[i] / pos[i - 1]);
  return std::exp(log_sum / static_cast<double>(pos.size() - 1));
}

double estimate_root_order(double rho) {
  if (!(rho > 0.0 && rho < 1.0)) throw OutOfRange("contraction ratio must lie in (0,1)");
  return rho / (1.0 - rho);
}

DiagnosticsReport diagnose(const SolveOutcome& outcome, const NonlinearProblem& p, DiagnosticsOptions opts) {
  require_ground_truth(p);
  if (!outcome.iterate_history) throw MissingGroundTruth("diagnostics need the iterate history");
  const auto& xs = *outcome.iterate_history;

  std::vector<ErrorSplit> splits;
  splits.reserve(xs.size());
  for (const auto& x : xs) splits.push_back(split_error(x, p));

  const std::size_t steps = std::min(outcome.trace.size(), xs.size() - 1);
  std::vector<Vector> w(steps);  // w[k] = w_{k+1}, the Newton step at x_k
  for (std::size_t k = 0; k < steps; ++k) w[k] = newton_step(p, xs[k]).w;

  const auto compat =
      compatibility_monitor(std::span(outcome.trace).first(steps), splits, opts.compatibility_C);

  DiagnosticsReport rep;
  for (std::size_t k = 0; k < steps; ++k) {
    const IterationRecord& rec = outcome.trace[k];
    StepDiagnostics d;
    d.k = rec.k;
    d.sigma = splits[k].sigma;
    d.pn_norm = splits[k].pn_norm;
    d.pr_norm = splits[k].pr_norm;
    d.theta = rec.theta;
    d.compatible = compat[k];
    const double denom = rec.theta * splits[k].pn_norm;
    d.null_contraction = denom > 0.0 ? splits[k + 1].pn_norm / denom : kInf;
    if (k >= 1) {
      const double a = norm2(project_null(p, axpy(1.0, w[k], splits[k].e)));
      const double b = norm2(project_null(p, axpy(1.0, w[k - 1], splits[k - 1].e)));
      d.nu = nu_ratio(rec.gamma_used, a, b).nu;
      d.label = classify_pair(splits[k], splits[k - 1], w[k], w[k - 1], p, rec.gamma_used, &splits[k + 1],
                              opts.pair);
    }
    rep.steps.push_back(d);
  }

  // Rate from the null components over the latter half of the run.
  std::vector<double> null_norms;
  for (const auto& s : splits)
    if (std::isfinite(s.sigma)) null_norms.push_back(s.pn_norm);
  const std::size_t tail = std::max<std::size_t>(4, null_norms.size() / 2);
  if (null_norms.size() >= tail) {
    try {
      rep.rate = estimate_rate(std::span(null_norms).last(tail));
      rep.root_order = estimate_root_order(*rep.rate);
    } catch (const Error&) {
    }
  }
  return rep;
}

}  // namespace nasolve
