#include <cmath>
#include <numbers>

#include "nasolve/problems.hpp"

namespace nasolve {

namespace {

using Residual = std::function<Vector(std::span<const double>)>;
using DenseJacobian = std::function<DenseMatrix(std::span<const double>)>;

NonlinearProblem dense_problem(std::string name, Vector start, Residual f, DenseJacobian jac) {
  NonlinearProblem p;
  p.name = std::move(name);
  p.dim = start.size();
  p.start = std::move(start);
  p.residual = std::move(f);
  p.jacobian = [jac = std::move(jac)](std::span<const double> x) -> JacobianMatrix { return jac(x); };
  return p;
}

void set_box(NonlinearProblem& p, Vector lower, Vector upper) {
  p.bounds = Bounds{std::move(lower), std::move(upper)};
}

// ---------------------------------------------------------------------------
// Nonsingular systems; start at the lower bounds.

NonlinearProblem himmelblau() {
  auto p = dense_problem(
      "Himmelbau", {-5.0, -5.0},
      [](std::span<const double> x) {
        return Vector{4 * x[0] * x[0] * x[0] + 4 * x[0] * x[1] + 2 * x[1] * x[1] - 42 * x[0] - 14,
                      4 * x[1] * x[1] * x[1] + 2 * x[0] * x[0] + 4 * x[0] * x[1] - 26 * x[1] - 22};
      },
      [](std::span<const double> x) {
        DenseMatrix j(2, 2);
        j(0, 0) = 12 * x[0] * x[0] + 4 * x[1] - 42;
        j(0, 1) = 4 * x[0] + 4 * x[1];
        j(1, 0) = 4 * x[0] + 4 * x[1];
        j(1, 1) = 12 * x[1] * x[1] + 4 * x[0] - 26;
        return j;
      });
  set_box(p, {-5.0, -5.0}, {5.0, 5.0});
  return p;
}

NonlinearProblem equilibrium_combustion() {
  constexpr double R = 10.0;
  constexpr double R5 = 0.193;
  const double R6 = 0.002597 / std::sqrt(40.0);
  const double R7 = 0.003448 / std::sqrt(40.0);
  constexpr double R8 = 0.00001799 / 40.0;
  const double R9 = 0.0002155 / std::sqrt(40.0);
  constexpr double R10 = 0.00003846 / 40.0;

  auto p = dense_problem(
      "Eq-Combustion", Vector(5, 1e-4),
      [=](std::span<const double> x) {
        const double x1 = x[0], x2 = x[1], x3 = x[2], x4 = x[3], x5 = x[4];
        return Vector{
            x1 * x2 + x1 - 3 * x5,
            2 * x1 * x2 + x1 + 3 * R10 * x2 * x2 + x2 * x3 * x3 + R7 * x2 * x3 + R9 * x2 * x4 + R8 * x2 - R * x5,
            2 * x2 * x3 * x3 + R7 * x2 * x3 + 2 * R5 * x3 * x3 + R6 * x3 - 8 * x5,
            R9 * x2 * x4 + 2 * x4 * x4 - 4 * R * x5,
            x1 * x2 + x1 + R10 * x2 * x2 + x2 * x3 * x3 + R7 * x2 * x3 + R9 * x2 * x4 + R8 * x2 + R5 * x3 * x3 +
                R6 * x3 + x4 * x4 - 1,
        };
      },
      [=](std::span<const double> x) {
        const double x1 = x[0], x2 = x[1], x3 = x[2], x4 = x[3];
        DenseMatrix j(5, 5);
        j(0, 0) = x2 + 1;
        j(0, 1) = x1;
        j(0, 4) = -3;
        j(1, 0) = 2 * x2 + 1;
        j(1, 1) = 2 * x1 + 6 * R10 * x2 + x3 * x3 + R7 * x3 + R9 * x4 + R8;
        j(1, 2) = 2 * x2 * x3 + R7 * x2;
        j(1, 3) = R9 * x2;
        j(1, 4) = -R;
        j(2, 1) = 2 * x3 * x3 + R7 * x3;
        j(2, 2) = 4 * x2 * x3 + R7 * x2 + 4 * R5 * x3 + R6;
        j(2, 4) = -8;
        j(3, 1) = R9 * x4;
        j(3, 3) = R9 * x2 + 4 * x4;
        j(3, 4) = -4 * R;
        j(4, 0) = x2 + 1;
        j(4, 1) = x1 + 2 * R10 * x2 + x3 * x3 + R7 * x3 + R9 * x4 + R8;
        j(4, 2) = 2 * x2 * x3 + R7 * x2 + 2 * R5 * x3 + R6;
        j(4, 3) = R9 * x2 + 2 * x4;
        return j;
      });
  set_box(p, Vector(5, 1e-4), Vector(5, 100.0));
  return p;
}

NonlinearProblem bullard_biegler() {
  auto p = dense_problem(
      "Bullard-Biegler", {5.49e-6, 2.196e-3},
      [](std::span<const double> x) {
        return Vector{1e4 * x[0] * x[1] - 1, std::exp(-x[0]) + std::exp(-x[1]) - 1.001};
      },
      [](std::span<const double> x) {
        DenseMatrix j(2, 2);
        j(0, 0) = 1e4 * x[1];
        j(0, 1) = 1e4 * x[0];
        j(1, 0) = -std::exp(-x[0]);
        j(1, 1) = -std::exp(-x[1]);
        return j;
      });
  set_box(p, {5.49e-6, 2.196e-3}, {4.553, 18.21});
  return p;
}

NonlinearProblem ferraris_tronconi() {
  constexpr double pi = std::numbers::pi;
  constexpr double e = std::numbers::e;
  auto p = dense_problem(
      "Ferraris-Tronconi", {0.25, 1.5},
      [](std::span<const double> x) {
        return Vector{0.5 * std::sin(x[0] * x[1]) - 0.25 * x[1] / pi - 0.5 * x[0],
                      (1 - 0.25 / pi) * (std::exp(2 * x[0]) - e) + e * x[1] / pi - 2 * e * x[0]};
      },
      [](std::span<const double> x) {
        DenseMatrix j(2, 2);
        const double c = std::cos(x[0] * x[1]);
        j(0, 0) = 0.5 * x[1] * c - 0.5;
        j(0, 1) = 0.5 * x[0] * c - 0.25 / pi;
        j(1, 0) = 2 * (1 - 0.25 / pi) * std::exp(2 * x[0]) - 2 * e;
        j(1, 1) = e / pi;
        return j;
      });
  set_box(p, {0.25, 1.5}, {1.0, 2 * pi});
  return p;
}

NonlinearProblem browns_almost_linear() {
  constexpr std::size_t n = 5;
  auto p = dense_problem(
      "Brown's Al. Lin.", Vector(n, -2.0),
      [](std::span<const double> x) {
        double sum = 0.0, prod = 1.0;
        for (double v : x) {
          sum += v;
          prod *= v;
        }
        Vector f(n);
        for (std::size_t i = 0; i + 1 < n; ++i) f[i] = x[i] + sum - static_cast<double>(n + 1);
        f[n - 1] = prod - 1.0;
        return f;
      },
      [](std::span<const double> x) {
        DenseMatrix j(n, n, 1.0);
        for (std::size_t i = 0; i + 1 < n; ++i) j(i, i) = 2.0;
        for (std::size_t c = 0; c < n; ++c) {
          double prod = 1.0;
          for (std::size_t m = 0; m < n; ++m)
            if (m != c) prod *= x[m];
          j(n - 1, c) = prod;
        }
        return j;
      });
  set_box(p, Vector(n, -2.0), Vector(n, 2.0));
  return p;
}

NonlinearProblem robot_kinematics() {
  auto p = dense_problem(
      "Robot Kin. Sys.", Vector(8, -1.0),
      [](std::span<const double> x) {
        const double x1 = x[0], x2 = x[1], x3 = x[2], x4 = x[3], x5 = x[4], x6 = x[5], x7 = x[6], x8 = x[7];
        return Vector{
            4.731e-3 * x1 * x3 - 0.3578 * x2 * x3 - 0.1238 * x1 + x7 - 1.637e-3 * x2 - 0.9338 * x4 - 0.3571,
            0.2238 * x1 * x3 + 0.7623 * x2 * x3 + 0.2638 * x1 - x7 - 0.07745 * x2 - 0.6734 * x4 - 0.6022,
            x6 * x8 + 0.3578 * x1 + 4.731e-3 * x2,
            -0.7623 * x1 + 0.2238 * x2 + 0.3461,
            x1 * x1 + x2 * x2 - 1,
            x3 * x3 + x4 * x4 - 1,
            x5 * x5 + x6 * x6 - 1,
            x7 * x7 + x8 * x8 - 1,
        };
      },
      [](std::span<const double> x) {
        const double x1 = x[0], x2 = x[1], x3 = x[2], x4 = x[3], x5 = x[4], x6 = x[5], x7 = x[6], x8 = x[7];
        DenseMatrix j(8, 8);
        j(0, 0) = 4.731e-3 * x3 - 0.1238;
        j(0, 1) = -0.3578 * x3 - 1.637e-3;
        j(0, 2) = 4.731e-3 * x1 - 0.3578 * x2;
        j(0, 3) = -0.9338;
        j(0, 6) = 1.0;
        j(1, 0) = 0.2238 * x3 + 0.2638;
        j(1, 1) = 0.7623 * x3 - 0.07745;
        j(1, 2) = 0.2238 * x1 + 0.7623 * x2;
        j(1, 3) = -0.6734;
        j(1, 6) = -1.0;
        j(2, 0) = 0.3578;
        j(2, 1) = 4.731e-3;
        j(2, 5) = x8;
        j(2, 7) = x6;
        j(3, 0) = -0.7623;
        j(3, 1) = 0.2238;
        j(4, 0) = 2 * x1;
        j(4, 1) = 2 * x2;
        j(5, 2) = 2 * x3;
        j(5, 3) = 2 * x4;
        j(6, 4) = 2 * x5;
        j(6, 5) = 2 * x6;
        j(7, 6) = 2 * x7;
        j(7, 7) = 2 * x8;
        return j;
      });
  set_box(p, Vector(8, -1.0), Vector(8, 1.0));
  return p;
}

// ---------------------------------------------------------------------------
// Singular systems whose reference start points are not available; the
// starts below are local choices near the singular root.

NonlinearProblem decker2() {
  auto p = dense_problem(
      "Decker2", {0.25, 0.25},
      [](std::span<const double> x) {
        return Vector{x[0] + x[1] * x[1] * x[1], x[0] * x[0] * x[1] - x[1] * x[1] * x[1] * x[1]};
      },
      [](std::span<const double> x) {
        DenseMatrix j(2, 2);
        j(0, 0) = 1.0;
        j(0, 1) = 3 * x[1] * x[1];
        j(1, 0) = 2 * x[0] * x[1];
        j(1, 1) = x[0] * x[0] - 4 * x[1] * x[1] * x[1];
        return j;
      });
  p.known_root = Vector{0.0, 0.0};
  p.null_basis = std::vector<Vector>{{0.0, 1.0}};
  return p;
}

NonlinearProblem ojika1() {
  auto p = dense_problem(
      "Ojika1", {1.2, 2.2},
      [](std::span<const double> x) {
        return Vector{x[0] * x[0] + x[1] - 3, x[0] + 0.125 * x[1] * x[1] - 1.5};
      },
      [](std::span<const double> x) {
        DenseMatrix j(2, 2);
        j(0, 0) = 2 * x[0];
        j(0, 1) = 1.0;
        j(1, 0) = 1.0;
        j(1, 1) = 0.25 * x[1];
        return j;
      });
  p.known_root = Vector{1.0, 2.0};
  const double s = 1.0 / std::sqrt(5.0);
  p.null_basis = std::vector<Vector>{{s, -2 * s}};
  return p;
}

NonlinearProblem ojika2() {
  auto p = dense_problem(
      "Ojika2", {0.1, 0.1, 0.9},
      [](std::span<const double> x) {
        return Vector{x[0] * x[0] + x[1] + x[2] - 1, x[0] + x[1] * x[1] + x[2] - 1, x[0] + x[1] + x[2] * x[2] - 1};
      },
      [](std::span<const double> x) {
        DenseMatrix j(3, 3, 1.0);
        j(0, 0) = 2 * x[0];
        j(1, 1) = 2 * x[1];
        j(2, 2) = 2 * x[2];
        return j;
      });
  p.known_root = Vector{0.0, 0.0, 1.0};
  const double s = 1.0 / std::sqrt(3.0);
  p.null_basis = std::vector<Vector>{{s, s, -s}};
  return p;
}

RegistryEntry entry(std::string name, std::string source, double r, std::function<NonlinearProblem()> make,
                    bool source_start = true) {
  RegistryEntry e;
  e.name = std::move(name);
  e.source = std::move(source);
  e.r = r;
  e.transcribed = static_cast<bool>(make);
  e.source_start = e.transcribed && source_start;
  e.make = std::move(make);
  return e;
}

std::vector<RegistryEntry> build_registry() {
  std::vector<RegistryEntry> out;
  out.push_back(entry("Himmelbau", "Floudas handbook 14.1.1", 0.5, himmelblau));
  out.push_back(entry("Eq-Combustion", "Floudas handbook 14.1.2", 0.5, equilibrium_combustion));
  out.push_back(entry("Bullard-Biegler", "Floudas handbook 14.1.3", 0.5, bullard_biegler));
  out.push_back(entry("Ferraris-Tronconi", "Floudas handbook 14.1.4", 0.5, ferraris_tronconi));
  out.push_back(entry("Brown's Al. Lin.", "Floudas handbook 14.1.5", 0.5, browns_almost_linear));
  out.push_back(entry("Robot Kin. Sys.", "Floudas handbook 14.1.6", 0.5, robot_kinematics));
  out.push_back(entry("Decker1", "Decker, Keller, Kelley (1983)", 0.9, nullptr));
  out.push_back(entry("Decker2", "Decker, Kelley (1980)", 0.9, decker2, false));
  out.push_back(entry("Ojika1", "Ojika (1988)", 0.9, ojika1, false));
  out.push_back(entry("Ojika2", "Ojika, Watanabe, Mitsui (1983)", 0.9, ojika2, false));
  out.push_back(entry("Pollock1", "singular Anderson-Newton test system (2020)", 0.9, nullptr));
  auto dayton = entry("Dayton10", "Dayton, Zeng (2005)", 0.5, nullptr);
  dayton.ls_step0 = 0.8;
  out.push_back(std::move(dayton));
  out.push_back(entry("Hueso1", "Hueso, Martinez, Torregrosa (2009)", 0.9, nullptr));
  out.push_back(entry("Hueso6", "Hueso, Martinez, Torregrosa (2009)", 0.9, nullptr));
  return out;
}

}  // namespace

const std::vector<RegistryEntry>& registry_entries() {
  static const std::vector<RegistryEntry> entries = build_registry();
  return entries;
}

std::vector<NonlinearProblem> registry() {
  std::vector<NonlinearProblem> out;
  for (const auto& e : registry_entries())
    if (e.transcribed) out.push_back(e.make());
  return out;
}

const RegistryEntry& registry_entry(std::string_view name) {
  for (const auto& e : registry_entries())
    if (e.name == name) return e;
  throw ProblemUnavailable("unknown registry problem '" + std::string(name) + "'");
}

NonlinearProblem registry_problem(std::string_view name) {
  const RegistryEntry& e = registry_entry(name);
  if (!e.transcribed)
    throw ProblemUnavailable("registry problem '" + e.name + "' (" + e.source + ") has not been transcribed");
  return e.make();
}

}  // namespace nasolve
