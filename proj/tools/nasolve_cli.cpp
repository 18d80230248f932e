// Command-line runner for the benchmark experiments.
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nasolve/harness.hpp"

int main(int argc, char** argv) {
  using namespace nasolve;

  CLI::App app{"Newton-Anderson benchmark runner"};

  std::string problem = "multipoly";
  std::vector<std::string> methods;
  std::size_t n = 0;
  double omega = 1.0;
  int k = 2;
  std::optional<double> r;
  double tol = 1e-8;
  int max_iters = 50;
  std::optional<double> ls_step0;
  bool linesearch = false;
  std::string out_dir = "results";
  std::string format = "csv";
  bool keep_history = false;
  bool parallel = false;
  bool list = false;
  bool quiet = false;

  app.add_option("--problem", problem,
                 "h_equation, multipoly, a registry name, or 'all' for the full benchmark matrix");
  app.add_option("--method", methods, "Method id (repeatable); default: all methods");
  app.add_option("--n", n, "Problem dimension (h_equation default 500, multipoly default 10000)");
  app.add_option("--omega", omega, "H-equation parameter in [0,1]");
  app.add_option("--k", k, "Multipoly exponent (root order k-1)");
  app.add_option("--r", r, "Safeguard parameter in (0,1); overrides per-problem defaults");
  app.add_option("--tol", tol, "Residual-norm stopping threshold");
  app.add_option("--max-iters", max_iters, "Iteration cap");
  app.add_option("--ls-step0", ls_step0, "First Armijo trial step for the Anderson variants");
  app.add_flag("--linesearch", linesearch, "Replace N.Anderson methods by their Armijo counterparts");
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_flag("--keep-history", keep_history, "Also write every iterate");
  app.add_flag("--parallel", parallel, "Run the methods of one problem concurrently");
  app.add_flag("--list", list, "List problems and methods, then exit");
  app.add_flag("--quiet", quiet, "Do not print the comparison table");
  CLI11_PARSE(app, argc, argv);

  if (list) {
    std::cout << "problems:\n  h_equation\n  multipoly\n";
    for (const auto& e : registry_entries()) {
      std::cout << "  " << e.name << "  [" << e.source << "]";
      if (!e.transcribed) std::cout << "  (unavailable)";
      else if (!e.source_start) std::cout << "  (local start)";
      std::cout << "\n";
    }
    std::cout << "methods:\n";
    for (MethodId m : kAllMethods) std::cout << "  " << to_string(m) << "\n";
    return 0;
  }

  try {
    std::vector<MethodId> ids;
    for (const auto& s : methods) {
      auto id = parse_method(s);
      if (!id) throw SpecError("unknown method '" + s + "'");
      ids.push_back(*id);
    }
    if (methods.empty() && !app.get_option("--method")->empty()) ids.clear();
    if (methods.empty()) ids.assign(std::begin(kAllMethods), std::end(kAllMethods));
    if (linesearch) {
      for (auto& id : ids) {
        if (id == MethodId::n_anderson) id = MethodId::armijo_n_anderson;
        if (id == MethodId::gamma_n_anderson) id = MethodId::gamma_armijo_n_anderson;
      }
    }

    SolverConfig base;
    base.tol = tol;
    base.max_iters = max_iters;

    std::vector<ExperimentSpec> specs;
    if (problem == "all") {
      specs = standard_matrix(base);
      for (auto& s : specs) s.methods = ids;
    } else {
      ExperimentSpec s;
      s.problem = {problem, n, omega, k};
      s.methods = ids;
      s.config = base;
      specs.push_back(std::move(s));
    }

    std::vector<RunReport> reports;
    for (auto& s : specs) {
      s.r = r;
      s.ls_step0 = ls_step0;
      s.keep_history = keep_history;
      s.parallel = parallel;
      reports.push_back(run_experiment(s));
    }
    const auto written =
        emit_report(reports, format == "json" ? ReportFormat::json : ReportFormat::csv, out_dir);
    if (!quiet) std::cout << compare_table(reports);
    std::cerr << "wrote " << written.size() << " files to " << out_dir << "\n";
  } catch (const SpecError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ProblemUnavailable& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ReportIoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
