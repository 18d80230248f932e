#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nasolve/problems.hpp"
#include "nasolve/solvers.hpp"

namespace nasolve {

/// Invalid experiment description (empty method list, bad parameters).
class SpecError : public Error {
 public:
  using Error::Error;
};

/// Raised by report writers; the message carries the offending path.
class ReportIoError : public Error {
 public:
  using Error::Error;
};

/// "h_equation", "multipoly", or a registry problem name.
struct ProblemSelector {
  std::string name = "multipoly";
  std::size_t n = 0;  // 0 selects the problem's default size
  double omega = 1.0;
  int k = 2;
};

struct ExperimentSpec {
  ProblemSelector problem;
  std::vector<MethodId> methods;
  SolverConfig config;
  /// Overrides of per-problem defaults (r, first Armijo step).
  std::optional<double> r;
  std::optional<double> ls_step0;
  bool keep_history = false;
  bool parallel = false;
};

void validate_spec(const ExperimentSpec& spec);

NonlinearProblem build_problem(const ProblemSelector& sel);

/// Config for one problem: registry r / step0 defaults, 0.7 for multipoly,
/// then the explicit ExperimentSpec overrides.
SolverConfig effective_config(const ExperimentSpec& spec);

struct MethodRow {
  MethodId method = MethodId::newton;
  double r = 0.9;
  SolveOutcome outcome;
  int lm_steps = 0;
  int ls_steps = 0;
  int pg_steps = 0;
};

struct RunReport {
  std::string problem;
  std::vector<MethodRow> rows;
};

RunReport run_experiment(const ExperimentSpec& spec);

/// The benchmark matrix: H-equation (omega = 0.5, 0.9, 0.999, 1; n = 500),
/// multipoly (k = 2, 3, 7; n = 10^4) and every transcribed registry problem,
/// each with all methods.
std::vector<ExperimentSpec> standard_matrix(const SolverConfig& base = {});

enum class ReportFormat { csv, json };

/// One summary row in the serialized column order.
struct SummaryRow {
  std::string problem;
  std::string algorithm;
  std::string iterations;  // count, or "F" when not converged
  int f_evals = 0;
  double final_res = 0.0;
  std::string lm_ls_pg;
};

std::vector<SummaryRow> summary_rows(std::span<const RunReport> reports);

/// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

std::string summary_csv(std::span<const RunReport> reports);
std::string summary_json(std::span<const RunReport> reports);
std::string history_csv(const MethodRow& row);
std::string history_json(const MethodRow& row);

/// Writes summary.<fmt> plus history_<problem>_<method>.<fmt> per method
/// (and iterates_*.csv when histories were retained). Returns written paths.
std::vector<std::filesystem::path> emit_report(std::span<const RunReport> reports, ReportFormat format,
                                               const std::filesystem::path& dir);

/// Aligned text table grouped by problem, one row per method.
std::string compare_table(std::span<const RunReport> reports);

std::string display_name(MethodId m, double r);

}  // namespace nasolve
