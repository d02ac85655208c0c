#include "arcipm/bench.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "arcipm/errors.hpp"
#include "arcipm/registry.hpp"

namespace arcipm {
namespace {

constexpr std::string_view kRunsHeader =
    "problem,method,status,objective,iterations,time_s,tag";
constexpr std::string_view kProfileHeader = "method,tau,fraction";
constexpr std::string_view kTraceHeader =
    "iter,merit,mu,alpha,alpha_tilde,hat_active,sigma,backtracks";

/// Floors keep ratios finite when the best run took zero iterations or an
/// unmeasurably short time.
constexpr double kIterationFloor = 1.0;
constexpr double kTimeFloor = 1e-9;

std::string quote(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) {
    return field;
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot write '" + path.string() +
                  "': " + std::strerror(errno));
  }
  return out;
}

void finish_write(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) {
    throw IoError("error while writing '" + path.string() + "'");
  }
}

/// Splits one CSV record, honouring quoted fields. Embedded newlines are
/// not supported since no emitted field contains one.
std::vector<std::string> split_csv_line(const std::string& line, int lineno) {
  std::vector<std::string> fields;
  std::string current;
  bool in_quotes = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        current += c;
      }
    } else if (c == '"') {
      in_quotes = true;
    } else if (c == ',') {
      fields.push_back(std::move(current));
      current.clear();
    } else {
      current += c;
    }
  }
  if (in_quotes) {
    throw InvalidArguments("line " + std::to_string(lineno) +
                           ": unterminated quoted field");
  }
  fields.push_back(std::move(current));
  return fields;
}

double parse_double(const std::string& text, int lineno) {
  char* end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size()) {
    throw InvalidArguments("line " + std::to_string(lineno) +
                           ": bad number '" + text + "'");
  }
  return value;
}

int parse_int(const std::string& text, int lineno) {
  char* end = nullptr;
  const long value = std::strtol(text.c_str(), &end, 10);
  if (text.empty() || end != text.c_str() + text.size()) {
    throw InvalidArguments("line " + std::to_string(lineno) +
                           ": bad integer '" + text + "'");
  }
  return static_cast<int>(value);
}

/// Rounds to the precision written to CSV so records survive a round trip.
double canonical(double value) {
  return std::strtod(format_float(value).c_str(), nullptr);
}

}  // namespace

std::string format_float(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", value);
  return buf;
}

std::vector<std::string> resolve_suite(const std::string& suite) {
  const ProblemRegistry& reg = registry();
  if (suite == "qcqp") return reg.names_with_tag(ProblemTag::kQcqp);
  if (suite == "others") return reg.names_with_tag(ProblemTag::kOther);
  if (suite == "all") return reg.names();

  std::vector<std::string> names;
  std::stringstream ss(suite);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    reg.get(item);
    names.push_back(item);
  }
  if (names.empty()) {
    throw InvalidArguments("empty problem suite");
  }
  return names;
}

std::vector<RunRecord> run_suite(const std::vector<std::string>& problems,
                                 const std::vector<Method>& methods,
                                 const SolverConfig& cfg) {
  if (methods.empty()) {
    throw InvalidArguments("no methods selected");
  }
  cfg.validate();
  std::vector<const ProblemDef*> defs;
  for (const auto& name : problems) {
    defs.push_back(&registry_get(name));
  }

  const auto n_jobs = static_cast<long>(defs.size() * methods.size());
  std::vector<RunRecord> records(static_cast<std::size_t>(n_jobs));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n_jobs));

#pragma omp parallel for schedule(dynamic)
  for (long job = 0; job < n_jobs; ++job) {
    const auto idx = static_cast<std::size_t>(job);
    const ProblemDef& prob = *defs[idx / methods.size()];
    SolverConfig local = cfg;
    local.method = methods[idx % methods.size()];
    local.observer = nullptr;
    try {
      const SolveReport report = solve(prob, local);
      RunRecord& rec = records[idx];
      rec.problem = prob.name;
      rec.method = std::string(to_string(local.method));
      rec.status = std::string(to_string(report.status));
      rec.objective = canonical(report.objective);
      rec.iterations = report.iterations;
      rec.time_s = canonical(report.wall_time);
      rec.tag = std::string(to_string(prob.tag));
    } catch (...) {
      errors[idx] = std::current_exception();
    }
  }
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }

  std::sort(records.begin(), records.end(),
            [](const RunRecord& a, const RunRecord& b) {
              return std::tie(a.problem, a.method) <
                     std::tie(b.problem, b.method);
            });
  return records;
}

std::vector<ProfileCurve> performance_profile(
    const std::vector<RunRecord>& records, Metric metric) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::set<std::string> methods;
  std::map<std::string, std::map<std::string, double>> cost;
  for (const auto& rec : records) {
    methods.insert(rec.method);
    if (rec.status != to_string(SolveStatus::kConverged)) continue;
    const double value =
        metric == Metric::kIterations
            ? std::max(static_cast<double>(rec.iterations), kIterationFloor)
            : std::max(rec.time_s, kTimeFloor);
    cost[rec.problem][rec.method] = value;
  }
  if (cost.empty()) {
    throw EmptyInput("no problem was solved by any method");
  }

  std::map<std::string, std::vector<double>> ratios;
  std::set<double> grid;
  for (const auto& [problem, by_method] : cost) {
    double best = kInf;
    for (const auto& [_, value] : by_method) best = std::min(best, value);
    for (const auto& method : methods) {
      auto it = by_method.find(method);
      const double r = it == by_method.end() ? kInf : it->second / best;
      ratios[method].push_back(r);
      if (std::isfinite(r)) grid.insert(r);
    }
  }

  const double total = static_cast<double>(cost.size());
  std::vector<ProfileCurve> curves;
  for (const auto& method : methods) {
    std::vector<double> rs = ratios[method];
    std::sort(rs.begin(), rs.end());
    ProfileCurve curve{method, {}};
    for (double tau : grid) {
      const auto count = std::upper_bound(rs.begin(), rs.end(), tau) - rs.begin();
      curve.points.push_back({tau, static_cast<double>(count) / total});
    }
    curves.push_back(std::move(curve));
  }
  return curves;
}

void emit_csv(const std::vector<RunRecord>& records,
              const std::filesystem::path& path) {
  std::vector<RunRecord> sorted = records;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const RunRecord& a, const RunRecord& b) {
                     return std::tie(a.problem, a.method) <
                            std::tie(b.problem, b.method);
                   });
  std::ofstream out = open_for_write(path);
  out << kRunsHeader << '\n';
  for (const auto& r : sorted) {
    out << quote(r.problem) << ',' << quote(r.method) << ','
        << quote(r.status) << ',' << format_float(r.objective) << ','
        << r.iterations << ',' << format_float(r.time_s) << ','
        << quote(r.tag) << '\n';
  }
  finish_write(out, path);
}

void emit_csv(const std::vector<ProfileCurve>& curves,
              const std::filesystem::path& path) {
  std::vector<ProfileCurve> sorted = curves;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const ProfileCurve& a, const ProfileCurve& b) {
                     return a.method < b.method;
                   });
  std::ofstream out = open_for_write(path);
  out << kProfileHeader << '\n';
  for (const auto& c : sorted) {
    for (const auto& pt : c.points) {
      out << quote(c.method) << ',' << format_float(pt.tau) << ','
          << format_float(pt.fraction) << '\n';
    }
  }
  finish_write(out, path);
}

std::vector<RunRecord> parse_runs_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot read '" + path.string() +
                  "': " + std::strerror(errno));
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw EmptyInput("'" + path.string() + "' is empty");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kRunsHeader) {
    throw InvalidArguments("unexpected header in '" + path.string() + "'");
  }

  std::vector<RunRecord> records;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split_csv_line(line, lineno);
    if (f.size() != 7) {
      throw InvalidArguments("line " + std::to_string(lineno) +
                             ": expected 7 fields");
    }
    records.push_back({f[0], f[1], f[2], parse_double(f[3], lineno),
                       parse_int(f[4], lineno), parse_double(f[5], lineno),
                       f[6]});
  }
  return records;
}

void emit_trace_csv(const SolveReport& report,
                    const std::filesystem::path& path) {
  std::ofstream out = open_for_write(path);
  out << kTraceHeader << '\n';
  for (const auto& r : report.trace) {
    out << r.k << ',' << format_float(r.merit) << ',' << format_float(r.mu)
        << ',' << format_float(r.alpha) << ',' << format_float(r.alpha_tilde)
        << ',' << (r.hat_active ? 1 : 0) << ',' << format_float(r.sigma)
        << ',' << r.backtracks << '\n';
  }
  finish_write(out, path);
}

}  // namespace arcipm
