#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "nasolve/harness.hpp"

namespace nasolve {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string slug(std::string_view s) {
  std::string out;
  for (char c : s) {
    const bool keep = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '.';
    if (keep) out += c;
    else if (out.empty() || out.back() != '_') out += '_';
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  return out;
}

std::string lm_ls_pg(const MethodRow& row) {
  if (row.method == MethodId::proj_lm)
    return std::to_string(row.lm_steps) + "/" + std::to_string(row.ls_steps) + "/" + std::to_string(row.pg_steps);
  if (uses_linesearch(row.method)) return "-/" + std::to_string(row.ls_steps) + "/-";
  return "-";
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ReportIoError("cannot open '" + path.string() + "' for writing");
  out << content;
  out.close();
  if (!out) throw ReportIoError("failed writing '" + path.string() + "'");
}

constexpr const char* kHistoryColumns[] = {"k",          "res_norm", "step_norm", "gamma_raw", "lambda",
                                           "gamma_used", "theta",    "step_kind", "ls_evals"};

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string display_name(MethodId m, double r) {
  std::ostringstream rr;
  rr << r;
  switch (m) {
    case MethodId::newton: return "Newton";
    case MethodId::n_anderson: return "N.Anderson";
    case MethodId::gamma_n_anderson: return "gamma-N.Anderson(" + rr.str() + ")";
    case MethodId::armijo_n_anderson: return "Armijo-N.Anderson";
    case MethodId::gamma_armijo_n_anderson: return "gamma-Armijo-N.Anderson(" + rr.str() + ")";
    case MethodId::proj_lm: return "Proj-Lev-Marq";
  }
  return "unknown";
}

std::vector<SummaryRow> summary_rows(std::span<const RunReport> reports) {
  std::vector<SummaryRow> rows;
  for (const auto& rep : reports) {
    for (const auto& m : rep.rows) {
      SummaryRow s;
      s.problem = rep.problem;
      s.algorithm = std::string(to_string(m.method));
      s.iterations = m.outcome.converged ? std::to_string(m.outcome.iterations) : "F";
      s.f_evals = m.outcome.f_evals;
      s.final_res = m.outcome.final_res;
      s.lm_ls_pg = lm_ls_pg(m);
      rows.push_back(std::move(s));
    }
  }
  return rows;
}

std::string summary_csv(std::span<const RunReport> reports) {
  std::ostringstream out;
  out << "problem,algorithm,iterations,f_evals,final_res,lm_ls_pg\n";
  for (const auto& r : summary_rows(reports)) {
    out << csv_field(r.problem) << ',' << r.algorithm << ',' << r.iterations << ',' << r.f_evals << ','
        << format_double(r.final_res) << ',' << r.lm_ls_pg << '\n';
  }
  return out.str();
}

std::string summary_json(std::span<const RunReport> reports) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& r : summary_rows(reports)) {
    nlohmann::ordered_json j;
    j["problem"] = r.problem;
    j["algorithm"] = r.algorithm;
    j["iterations"] = r.iterations;
    j["f_evals"] = r.f_evals;
    j["final_res"] = r.final_res;
    j["lm_ls_pg"] = r.lm_ls_pg;
    rows.push_back(std::move(j));
  }
  return rows.dump(2) + "\n";
}

std::string history_csv(const MethodRow& row) {
  std::ostringstream out;
  for (std::size_t i = 0; i < std::size(kHistoryColumns); ++i) out << (i ? "," : "") << kHistoryColumns[i];
  out << '\n';
  for (const auto& r : row.outcome.trace) {
    out << r.k << ',' << format_double(r.res_norm) << ',' << format_double(r.step_norm) << ','
        << format_double(r.gamma_raw) << ',' << format_double(r.lambda) << ',' << format_double(r.gamma_used) << ','
        << format_double(r.theta) << ',' << to_string(r.step_kind) << ',' << r.ls_evals << '\n';
  }
  // Terminal row: residual at the last iterate, no step taken from it.
  out << row.outcome.iterations << ',' << format_double(row.outcome.final_res) << ",,,,,,,\n";
  return out.str();
}

std::string history_json(const MethodRow& row) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& r : row.outcome.trace) {
    nlohmann::ordered_json j;
    j["k"] = r.k;
    j["res_norm"] = r.res_norm;
    j["step_norm"] = r.step_norm;
    j["gamma_raw"] = r.gamma_raw;
    j["lambda"] = r.lambda;
    j["gamma_used"] = r.gamma_used;
    j["theta"] = r.theta;
    j["step_kind"] = std::string(to_string(r.step_kind));
    j["ls_evals"] = r.ls_evals;
    rows.push_back(std::move(j));
  }
  nlohmann::ordered_json last;
  last["k"] = row.outcome.iterations;
  last["res_norm"] = row.outcome.final_res;
  rows.push_back(std::move(last));
  return rows.dump(2) + "\n";
}

std::vector<std::filesystem::path> emit_report(std::span<const RunReport> reports, ReportFormat format,
                                               const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ReportIoError("cannot create '" + dir.string() + "': " + ec.message());

  const bool json = format == ReportFormat::json;
  const std::string ext = json ? ".json" : ".csv";
  std::vector<std::filesystem::path> written;

  const auto summary = dir / ("summary" + ext);
  write_file(summary, json ? summary_json(reports) : summary_csv(reports));
  written.push_back(summary);

  for (const auto& rep : reports) {
    for (const auto& row : rep.rows) {
      const std::string stem = slug(rep.problem) + "_" + std::string(to_string(row.method));
      const auto hist = dir / ("history_" + stem + ext);
      write_file(hist, json ? history_json(row) : history_csv(row));
      written.push_back(hist);
      if (row.outcome.iterate_history) {
        std::ostringstream out;
        out << "k,x\n";
        const auto& xs = *row.outcome.iterate_history;
        for (std::size_t k = 0; k < xs.size(); ++k) {
          out << k << ",\"";
          for (std::size_t i = 0; i < xs[k].size(); ++i) out << (i ? " " : "") << format_double(xs[k][i]);
          out << "\"\n";
        }
        const auto iter = dir / ("iterates_" + stem + ".csv");
        write_file(iter, out.str());
        written.push_back(iter);
      }
    }
  }
  return written;
}

std::string compare_table(std::span<const RunReport> reports) {
  const std::vector<std::string> header{"Problem", "Algorithm", "Iterations", "f-evals", "||f(x)||", "LM/LS/PG"};
  std::vector<std::vector<std::string>> cells;
  std::vector<bool> group_start;
  for (const auto& rep : reports) {
    bool first = true;
    for (const auto& row : rep.rows) {
      std::vector<std::string> c(6);
      c[0] = first ? rep.problem : "";
      c[1] = display_name(row.method, row.r);
      if (row.outcome.converged) {
        char res[32];
        std::snprintf(res, sizeof(res), "%.3e", row.outcome.final_res);
        c[2] = std::to_string(row.outcome.iterations);
        c[3] = std::to_string(row.outcome.f_evals);
        c[4] = res;
        c[5] = lm_ls_pg(row);
      } else {
        c[2] = "F";
        c[3] = c[4] = c[5] = "-";
      }
      cells.push_back(std::move(c));
      group_start.push_back(first);
      first = false;
    }
  }
  if (cells.empty()) return "";

  std::vector<std::size_t> width(header.size());
  for (std::size_t j = 0; j < header.size(); ++j) width[j] = header[j].size();
  for (const auto& c : cells)
    for (std::size_t j = 0; j < c.size(); ++j) width[j] = std::max(width[j], c[j].size());

  auto line = [&](const std::vector<std::string>& c) {
    std::ostringstream out;
    for (std::size_t j = 0; j < c.size(); ++j)
      out << (j ? "  " : "") << std::left << std::setw(static_cast<int>(width[j])) << c[j];
    std::string s = out.str();
    while (!s.empty() && s.back() == ' ') s.pop_back();
    return s + "\n";
  };
  std::size_t total = 0;
  for (auto w : width) total += w;
  total += 2 * (width.size() - 1);
  const std::string rule(total, '-');

  std::string out = line(header);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (group_start[i]) out += rule + "\n";
    out += line(cells[i]);
  }
  return out;
}

}  // namespace nasolve
