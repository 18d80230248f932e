#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nasolve/core.hpp"

namespace nasolve {

class ProblemUnavailable : public Error {
 public:
  using Error::Error;
};

/// Chandrasekhar H-equation discretized by the composite midpoint rule.
struct HEquationSpec {
  std::size_t n = 500;
  double omega = 1.0;
};

/// f_i = x_i^2 + x_i - x_{i+1}^k (i < n), f_n = x_n^k. Root 0 of order k-1.
struct MultipolySpec {
  std::size_t n = 10000;
  int k = 2;
};

/// Dense analytic Jacobian, start = ones. No ground truth attached.
NonlinearProblem h_equation(const HEquationSpec& spec);

/// h_equation plus a numerically computed root (Newton to `root_tol`) and,
/// for omega == 1, a one-dimensional null basis from the smallest singular
/// vector of the Jacobian at that root.
NonlinearProblem h_equation_with_ground_truth(const HEquationSpec& spec, double root_tol = 1e-13);

NonlinearProblem multipoly(const MultipolySpec& spec);

/// Right singular vector for the smallest singular value of a square matrix,
/// by inverse iteration on A^T A. Returns (sigma_min, v).
std::pair<double, Vector> smallest_singular_pair(const DenseMatrix& a, int iterations = 50);

/// Small benchmark problems. `transcribed` is false when the defining system
/// is not available locally; `source_start` is false when the system is
/// known but its reference starting point is not, in which case `make`
/// uses a locally chosen start and results are not comparable to published
/// iteration counts.
struct RegistryEntry {
  std::string name;
  std::string source;
  bool transcribed = false;
  bool source_start = false;
  /// Safeguard parameter used for this problem's benchmark runs.
  double r = 0.9;
  /// First Armijo trial step for the Anderson variants.
  double ls_step0 = 0.5;
  std::function<NonlinearProblem()> make;
};

const std::vector<RegistryEntry>& registry_entries();

/// Every transcribed registry problem.
std::vector<NonlinearProblem> registry();

/// Throws ProblemUnavailable for unknown or untranscribed names.
const RegistryEntry& registry_entry(std::string_view name);
NonlinearProblem registry_problem(std::string_view name);

/// Max over entries of |J - J_fd| / (1 + |J|) with central differences,
/// h_j = eps^(1/3) (1 + |x_j|).
double fd_jacobian_check(const NonlinearProblem& p, std::span<const double> x);

/// Central-difference Jacobian used by fd_jacobian_check.
DenseMatrix fd_jacobian(const NonlinearProblem& p, std::span<const double> x);

}  // namespace nasolve
