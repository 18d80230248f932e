#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"
#include "nasolve/harness.hpp"

using namespace nasolve;

namespace {

RunReport synthetic_report() {
  RunReport rep;
  rep.problem = "Himmelbau";
  MethodRow lm;
  lm.method = MethodId::proj_lm;
  lm.r = 0.5;
  lm.outcome.converged = true;
  lm.outcome.iterations = 6;
  lm.outcome.f_evals = 7;
  lm.outcome.final_res = 2.842e-14;
  lm.lm_steps = 6;
  rep.rows.push_back(lm);

  MethodRow failed;
  failed.method = MethodId::n_anderson;
  failed.r = 0.5;
  failed.outcome.converged = false;
  failed.outcome.iterations = 100;
  failed.outcome.f_evals = 101;
  failed.outcome.final_res = 3.5;
  rep.rows.push_back(failed);
  return rep;
}

ExperimentSpec small_spec(std::vector<MethodId> methods) {
  ExperimentSpec s;
  s.problem = {"multipoly", 100, 1.0, 3};
  s.methods = std::move(methods);
  return s;
}

std::filesystem::path scratch_dir(const std::string& tag) {
  const auto dir = std::filesystem::temp_directory_path() / ("nasolve_test_" + tag);
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST_SUITE("harness") {
  TEST_CASE("summary CSV rows") {
    const RunReport rep = synthetic_report();
    const std::string csv = summary_csv(std::span(&rep, 1));
    std::istringstream in(csv);
    std::string header, first, second;
    std::getline(in, header);
    std::getline(in, first);
    std::getline(in, second);
    CHECK(header == "problem,algorithm,iterations,f_evals,final_res,lm_ls_pg");
    CHECK(first == "Himmelbau,proj_lm,6,7,2.842e-14,6/0/0");
    CHECK(second.rfind("Himmelbau,n_anderson,F,101,", 0) == 0);
    CHECK(second.substr(second.size() - 2) == ",-");
  }

  TEST_CASE("summary JSON carries the same fields as CSV") {
    const RunReport rep = synthetic_report();
    const auto rows = summary_rows(std::span(&rep, 1));
    const auto j = nlohmann::json::parse(summary_json(std::span(&rep, 1)));
    REQUIRE(j.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      CHECK(j[i]["problem"] == rows[i].problem);
      CHECK(j[i]["algorithm"] == rows[i].algorithm);
      CHECK(j[i]["iterations"] == rows[i].iterations);
      CHECK(j[i]["f_evals"] == rows[i].f_evals);
      CHECK(j[i]["final_res"].get<double>() == rows[i].final_res);
      CHECK(j[i]["lm_ls_pg"] == rows[i].lm_ls_pg);
    }
  }

  TEST_CASE("compare_table groups rows and dashes out failures") {
    const RunReport rep = synthetic_report();
    const std::string t = compare_table(std::span(&rep, 1));
    CHECK(t.find("Proj-Lev-Marq") != std::string::npos);
    CHECK(t.find("2.842e-14") != std::string::npos);
    std::istringstream in(t);
    std::string line;
    int rules = 0;
    bool failed_row = false;
    while (std::getline(in, line)) {
      if (!line.empty() && line.find_first_not_of('-') == std::string::npos) ++rules;
      if (line.find("N.Anderson") != std::string::npos) {
        failed_row = true;
        CHECK(line.find(" F ") != std::string::npos);
        CHECK(line.find("3.5") == std::string::npos);
      }
    }
    CHECK(rules == 1);
    CHECK(failed_row);
    CHECK(compare_table({}).empty());
  }

  TEST_CASE("display names") {
    CHECK(display_name(MethodId::gamma_n_anderson, 0.9) == "gamma-N.Anderson(0.9)");
    CHECK(display_name(MethodId::gamma_armijo_n_anderson, 0.5) == "gamma-Armijo-N.Anderson(0.5)");
    CHECK(display_name(MethodId::newton, 0.5) == "Newton");
  }

  TEST_CASE("validate_spec") {
    CHECK_THROWS_AS(validate_spec(small_spec({})), SpecError);
    ExperimentSpec s = small_spec({MethodId::newton});
    CHECK_NOTHROW(validate_spec(s));
    s.r = 1.5;
    CHECK_THROWS_AS(validate_spec(s), SpecError);
    s = small_spec({MethodId::newton});
    s.problem.name = "nonexistent";
    CHECK_THROWS_AS(validate_spec(s), SpecError);
    s = small_spec({MethodId::newton});
    s.problem.k = 1;
    CHECK_THROWS_AS(validate_spec(s), SpecError);
    s = small_spec({MethodId::newton});
    s.problem = {"h_equation", 50, 1.2, 2};
    CHECK_THROWS_AS(validate_spec(s), SpecError);
  }

  TEST_CASE("effective_config applies per-problem defaults then overrides") {
    ExperimentSpec s = small_spec({MethodId::newton});
    CHECK(effective_config(s).r == 0.7);
    s.r = 0.3;
    CHECK(effective_config(s).r == 0.3);

    s = small_spec({MethodId::newton});
    s.problem = {"Dayton10", 0, 1.0, 2};
    CHECK(effective_config(s).r == 0.5);
    CHECK(effective_config(s).ls_step0 == 0.8);
    s.problem = {"Decker2", 0, 1.0, 2};
    CHECK(effective_config(s).r == 0.9);
    s.problem = {"h_equation", 100, 0.5, 2};
    CHECK(effective_config(s).r == SolverConfig{}.r);
  }

  TEST_CASE("f-evals equal iterations plus one for Newton and the plain Anderson variants") {
    const RunReport rep =
        run_experiment(small_spec({MethodId::newton, MethodId::n_anderson, MethodId::gamma_n_anderson}));
    REQUIRE(rep.rows.size() == 3);
    for (const MethodRow& row : rep.rows) {
      CAPTURE(to_string(row.method));
      CHECK(row.outcome.converged);
      CHECK(row.outcome.f_evals == row.outcome.iterations + 1);
      CHECK(row.ls_steps == 0);
    }
  }

  TEST_CASE("runs are deterministic and parallel matches serial") {
    const std::vector<MethodId> all(std::begin(kAllMethods), std::end(kAllMethods));
    ExperimentSpec s = small_spec(all);
    const RunReport a = run_experiment(s);
    const RunReport b = run_experiment(s);
    s.parallel = true;
    const RunReport c = run_experiment(s);
    CHECK(summary_csv(std::span(&a, 1)) == summary_csv(std::span(&b, 1)));
    CHECK(summary_csv(std::span(&a, 1)) == summary_csv(std::span(&c, 1)));
    for (std::size_t i = 0; i < a.rows.size(); ++i)
      CHECK(history_csv(a.rows[i]) == history_csv(c.rows[i]));
  }

  TEST_CASE("history CSV has one row per step plus a terminal row") {
    const RunReport rep = run_experiment(small_spec({MethodId::gamma_n_anderson}));
    const std::string h = history_csv(rep.rows[0]);
    std::istringstream in(h);
    std::string line;
    std::getline(in, line);
    CHECK(line == "k,res_norm,step_norm,gamma_raw,lambda,gamma_used,theta,step_kind,ls_evals");
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == rep.rows[0].outcome.iterations + 1);
    const auto j = nlohmann::json::parse(history_json(rep.rows[0]));
    CHECK(static_cast<int>(j.size()) == rows);
  }

  TEST_CASE("emit_report writes summary and histories") {
    ExperimentSpec s = small_spec({MethodId::newton, MethodId::proj_lm});
    s.keep_history = true;
    const RunReport rep = run_experiment(s);
    const auto dir = scratch_dir("emit");
    const auto files = emit_report(std::span(&rep, 1), ReportFormat::csv, dir);
    CHECK(files.size() == 5);
    for (const auto& f : files) CHECK(std::filesystem::exists(f));
    CHECK(std::filesystem::exists(dir / "summary.csv"));

    const auto jfiles = emit_report(std::span(&rep, 1), ReportFormat::json, dir);
    CHECK(std::filesystem::exists(dir / "summary.json"));
    for (const auto& f : jfiles)
      if (f.extension() == ".json") CHECK(nlohmann::json::accept(std::ifstream(f)));
    std::filesystem::remove_all(dir);
  }

  TEST_CASE("emit_report reports an unwritable path") {
    const auto dir = scratch_dir("blocked");
    std::filesystem::create_directories(dir);
    const auto blocker = dir / "file";
    std::ofstream(blocker) << "x";
    const RunReport rep = synthetic_report();
    CHECK_THROWS_AS(emit_report(std::span(&rep, 1), ReportFormat::csv, blocker / "sub"), ReportIoError);
    std::filesystem::remove_all(dir);
  }

  TEST_CASE("format_double round-trips") {
    std::mt19937_64 rng(51);
    std::uniform_real_distribution<double> e(-300.0, 300.0);
    for (int i = 0; i < 1000; ++i) {
      const double v = std::pow(10.0, e(rng)) * (i % 2 ? -1.0 : 1.0);
      CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
    }
    CHECK(format_double(0.5) == "0.5");
  }

  TEST_CASE("standard matrix covers every transcribed problem with every method") {
    const auto specs = standard_matrix();
    std::size_t transcribed = 0;
    for (const auto& e : registry_entries()) transcribed += e.transcribed ? 1 : 0;
    CHECK(specs.size() == 4 + 3 + transcribed);
    for (const auto& s : specs) {
      CHECK(s.methods.size() == std::size(kAllMethods));
      CHECK_NOTHROW(validate_spec(s));
    }
  }
}
