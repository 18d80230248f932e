#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "nasolve/core.hpp"

namespace nasolve {

class MissingGroundTruth : public Error {
 public:
  using Error::Error;
};
class ZeroStep : public Error {
 public:
  using Error::Error;
};
class InsufficientTail : public Error {
 public:
  using Error::Error;
};
class OutOfRange : public Error {
 public:
  using Error::Error;
};

/// e = x - x* split along N = null(f'(x*)) and its orthogonal complement.
struct ErrorSplit {
  Vector e;
  Vector pn;
  Vector pr;
  double pn_norm = 0.0;
  double pr_norm = 0.0;
  /// |pr| / |pn|; +inf when pn = 0.
  double sigma = 0.0;
};

/// P_N v = B B^T v for the problem's orthonormal null basis B.
Vector project_null(const NonlinearProblem& p, std::span<const double> v);

ErrorSplit split_error(std::span<const double> x, const NonlinearProblem& p);

/// |w_next - gamma (w_next - w_prev)| / |w_next|. Throws ZeroStep when w_next = 0.
double theta_gain(std::span<const double> w_next, std::span<const double> w_prev, double gamma_used);

struct NuRatio {
  double nu = 0.0;
};

/// min/max of {|1-gamma| a, |gamma| b}.
NuRatio nu_ratio(double gamma_used, double a, double b);

enum class PairType { N_pair, R_pair, NR_pair, RN_pair, undominated };
std::string_view to_string(PairType t);

struct PairLabel {
  PairType type = PairType::undominated;
  bool strong = false;
};

struct PairOptions {
  double dominance = 3.0;
};

/// Pair type of (x_k, x_{k-1}) from the null-side term |P_N e_i|/2 and the
/// range-side proxy |P_N(e_i + w_{i+1}) - P_N e_i / 2| for i = k, k-1.
///
/// `w_next` is w_{k+1} (the Newton step at x_k), `w_k` the one at x_{k-1}.
/// The strong flag needs the mixed error e_{k+1}; without `split_next` it
/// stays false.
PairLabel classify_pair(const ErrorSplit& split_k, const ErrorSplit& split_km1, std::span<const double> w_next,
                        std::span<const double> w_k, const NonlinearProblem& p, double gamma_used = 0.0,
                        const ErrorSplit* split_next = nullptr, PairOptions opts = {});

/// For each trace record k: |P_N e_{k+1}| <= C theta_{k+1} |w_{k+1}|.
/// `splits` holds the splits of x_0 .. x_K (at least trace.size() + 1 entries).
std::vector<bool> compatibility_monitor(std::span<const IterationRecord> trace, std::span<const ErrorSplit> splits,
                                        double C = 2.0);

/// Geometric mean of successive ratios over the positive entries.
/// Throws InsufficientTail with fewer than four positive entries.
double estimate_rate(std::span<const double> values);

/// Inverts rho = d/(d+1). Throws OutOfRange unless 0 < rho < 1.
double estimate_root_order(double rho);

/// Per-step analysis quantities for a solve with retained iterate history.
struct StepDiagnostics {
  int k = 0;
  double sigma = 0.0;
  double pn_norm = 0.0;
  double pr_norm = 0.0;
  double theta = 1.0;
  double nu = 0.0;
  PairLabel label;
  bool compatible = false;
  /// |P_N e_{k+1}| / (theta_{k+1} |P_N e_k|); the monitored null contraction.
  double null_contraction = 0.0;
};

struct DiagnosticsReport {
  std::vector<StepDiagnostics> steps;
  std::optional<double> rate;
  std::optional<double> root_order;
};

struct DiagnosticsOptions {
  double compatibility_C = 2.0;
  PairOptions pair;
};

/// Requires outcome.iterate_history and the problem's ground truth.
/// Newton steps are recomputed at each stored iterate.
DiagnosticsReport diagnose(const SolveOutcome& outcome, const NonlinearProblem& p, DiagnosticsOptions opts = {});

}  // namespace nasolve
