/*
 * cli.cpp
 */
#include "qbrach/cli.hpp"

#include <cctype>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qbrach/catalog.hpp"
#include "qbrach/gates.hpp"
#include "qbrach/log.hpp"
#include "qbrach/special.hpp"

namespace qbrach {

namespace {

double parse_real(const std::string &s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception &) {
    throw ValidationError("not a number: '" + s + "'");
  }
  if (used != s.size()) throw ValidationError("not a number: '" + s + "'");
  return v;
}

}  // namespace

cplx parse_complex(const std::string &text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw ValidationError("empty value");
  if (s.front() == '(' && s.back() == ')') {
    const auto comma = s.find(',');
    if (comma == std::string::npos) throw ValidationError("expected (re,im): '" + text + "'");
    return {parse_real(s.substr(1, comma - 1)), parse_real(s.substr(comma + 1, s.size() - comma - 2))};
  }
  if (s.back() != 'i' && s.back() != 'j') return parse_real(s);
  s.pop_back();
  // split at the last sign that is not an exponent sign
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      const std::string im = s.substr(k);
      return {parse_real(s.substr(0, k)), im == "+" ? 1.0 : im == "-" ? -1.0 : parse_real(im)};
    }
  }
  if (s.empty() || s == "+") return {0.0, 1.0};
  if (s == "-") return {0.0, -1.0};
  return {0.0, parse_real(s)};
}

std::pair<std::string, cplx> parse_param(const std::string &text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw ValidationError("expected key=value, got '" + text + "'");
  return {text.substr(0, eq), parse_complex(text.substr(eq + 1))};
}

void write_csv(std::ostream &os, const std::vector<TrajectoryRow> &rows, bool with_fidelity) {
  const std::size_t n = rows.empty() ? 0 : rows.front().c.size();
  os << "t";
  for (std::size_t j = 1; j <= n; ++j) os << ",re_c" << j << ",im_c" << j;
  os << ",trH2,trHF,norm";
  if (with_fidelity) os << ",fidelity_to_target";
  os << "\n" << std::setprecision(17);
  for (const auto &r : rows) {
    os << r.t;
    for (const cplx &c : r.c) os << "," << c.real() << "," << c.imag();
    os << "," << r.trh2 << "," << r.trhf << "," << r.norm;
    if (with_fidelity) os << "," << r.fidelity;
    os << "\n";
  }
}

std::vector<TrajectoryRow> read_csv(std::istream &is) {
  std::string line;
  if (!std::getline(is, line)) throw ValidationError("empty CSV");
  std::vector<std::string> header;
  {
    std::stringstream ss(line);
    for (std::string f; std::getline(ss, f, ',');) header.push_back(f);
  }
  if (header.empty() || header.front() != "t") throw ValidationError("CSV header must start with t");
  const bool with_fidelity = header.back() == "fidelity_to_target";
  const std::size_t n = (header.size() - 4 - (with_fidelity ? 1 : 0)) / 2;
  std::vector<TrajectoryRow> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<double> v;
    std::stringstream ss(line);
    for (std::string f; std::getline(ss, f, ',');) v.push_back(parse_real(f));
    if (v.size() != header.size()) throw ValidationError("CSV row width differs from header");
    TrajectoryRow r;
    r.t = v[0];
    for (std::size_t j = 0; j < n; ++j) r.c.emplace_back(v[1 + 2 * j], v[2 + 2 * j]);
    r.trh2 = v[1 + 2 * n];
    r.trhf = v[2 + 2 * n];
    r.norm = v[3 + 2 * n];
    if (with_fidelity) r.fidelity = v[4 + 2 * n];
    rows.push_back(std::move(r));
  }
  return rows;
}

namespace {

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

}  // namespace

std::string report_json(const std::string &suite, const std::vector<CheckRecord> &records) {
  nlohmann::json j;
  j["suite"] = suite;
  j["timestamp"] = utc_timestamp();
  j["tool_version"] = tool_version;
  j["records"] = nlohmann::json::array();
  for (const auto &r : records) {
    nlohmann::json rec{{"id", r.id}, {"status", status_name(r.status)}, {"residual", r.residual},
                       {"tolerance", r.tolerance}};
    if (!r.note.empty()) rec["note"] = r.note;
    j["records"].push_back(rec);
  }
  return j.dump(2);
}

std::string report_text(const std::string &suite, const std::vector<CheckRecord> &records) {
  std::ostringstream os;
  std::size_t counts[3] = {0, 0, 0};
  os << "suite " << suite << "  (qbrach " << tool_version << ")\n";
  for (const auto &r : records) {
    ++counts[int(r.status)];
    os << std::left << std::setw(14) << status_name(r.status) << std::setw(52) << r.id << std::right
       << std::scientific << std::setprecision(3) << std::setw(11) << r.residual << "  tol " << std::setw(9)
       << r.tolerance << std::defaultfloat;
    if (!r.note.empty()) os << "  " << r.note;
    os << "\n";
  }
  os << counts[0] << " pass, " << counts[1] << " fail, " << counts[2] << " reported-only\n";
  return os.str();
}

namespace {

struct RunConfig {
  std::string scenario;
  std::vector<std::string> params;
  std::optional<double> t_max;
  double dt = 1e-4;
  std::string out;
  std::string format = "csv";
  std::uint64_t seed = 42;
  double tol = 1e-4;
};

struct RunResult {
  std::vector<TrajectoryRow> rows;
  bool with_fidelity = false;
  bool aborted = false;
  std::string reason;
};

TrajectoryRow make_row(double t, const CVector &psi, const ComplexMatrix &h, const ComplexMatrix &f,
                       const std::optional<CVector> &target) {
  TrajectoryRow r;
  r.t = t;
  r.c = psi;
  r.trh2 = trace_inner(h, h);
  r.trhf = trace_inner(h, f);
  r.norm = norm(psi);
  if (target) r.fidelity = fidelity(*target, psi);
  return r;
}

RunResult integrate(const ControlProblem &problem, const ComplexMatrix &h0, const ComplexMatrix &f0, const CVector &psi0,
                    const std::optional<CVector> &target, double t_max, const RunConfig &cfg) {
  EvolveOptions opts;
  const double steps = std::ceil(t_max / cfg.dt);
  opts.record_stride = std::size_t(std::max(1.0, std::floor(steps / 1000.0)));
  opts.hard_limit = cfg.tol;
  const Trajectory tr = evolve(problem, h0, f0, psi0, t_max, cfg.dt, opts);
  RunResult res;
  res.with_fidelity = target.has_value();
  for (const auto &s : tr.samples) res.rows.push_back(make_row(s.t, s.psi, s.H, s.F, target));
  res.aborted = tr.aborted;
  res.reason = tr.abort_reason;
  return res;
}

int int_param(const std::map<std::string, cplx> &p, const std::string &key, int fallback) {
  const auto it = p.find(key);
  if (it == p.end()) return fallback;
  const double v = it->second.real();
  if (it->second.imag() != 0.0 || v != std::round(v)) throw ValidationError(key + " must be an integer");
  return int(v);
}

RunResult run_scenario(const RunConfig &cfg) {
  std::map<std::string, cplx> params;
  for (const auto &text : cfg.params) params.insert_or_assign(parse_param(text).first, parse_param(text).second);
  if (!(cfg.dt > 0.0)) throw ValidationError("dt must be positive");
  if (cfg.t_max && !(*cfg.t_max >= cfg.dt)) throw ValidationError("t-max must be at least dt");

  if (cfg.scenario == "sun-family") {
    for (const auto &[k, v] : params)
      if (k != "n" && k != "kind") throw ValidationError("unknown parameter '" + k + "' for sun-family");
    const int n = int_param(params, "n", 3), kind = int_param(params, "kind", 0);
    if (n < 2 || n > 6) throw ValidationError("n must lie in 2..6");
    if (kind < 0 || kind > 2) throw ValidationError("kind must be 0 (antidiagonal), 1 (tridiagonal) or 2 (diagonal)");
    std::mt19937_64 rng(cfg.seed);
    const FamilyInstance fam = family_sun(std::size_t(n), FamilyKind(kind), rng);
    return integrate(fam.problem, fam.h0, fam.f0, fam.psi0, std::nullopt, cfg.t_max.value_or(2.0), cfg);
  }
  if (cfg.scenario == "su3-partitions") {
    for (const auto &[k, v] : params)
      if (k != "index") throw ValidationError("unknown parameter '" + k + "' for su3-partitions");
    const int idx = int_param(params, "index", 1);
    if (idx < 1 || idx > 4) throw ValidationError("index must lie in 1..4");
    const auto parts = su3_partitions(false);
    const Partition &p = parts[std::size_t(idx - 1)];
    return integrate(p.problem, p.h0, p.f0, CVector{1.0, 0.0, 0.0}, std::nullopt, cfg.t_max.value_or(10.0), cfg);
  }

  const Scenario s = make_scenario(cfg.scenario, params);
  const double t_max = cfg.t_max.value_or(s.min_time ? *s.min_time : (s.period > 0.0 ? s.period : 1.0));
  if (s.problem)
    return integrate(*s.problem, s.hamiltonian_at(0.0), s.constraint_at(0.0), s.psi0, s.target, t_max, cfg);

  // closed form sampled on a grid
  RunResult res;
  res.with_fidelity = s.target.has_value();
  const int samples = int(std::min(1000.0, std::ceil(t_max / cfg.dt)));
  for (int k = 0; k <= samples; ++k) {
    const double t = t_max * k / samples;
    res.rows.push_back(make_row(t, s.state_at(t, s.psi0), s.hamiltonian_at(t), s.constraint_at(t), s.target));
  }
  return res;
}

void write_run_json(std::ostream &os, const RunConfig &cfg, const RunResult &res) {
  nlohmann::json j;
  j["scenario"] = cfg.scenario;
  j["tool_version"] = tool_version;
  j["aborted"] = res.aborted;
  if (res.aborted) j["abort_reason"] = res.reason;
  j["samples"] = nlohmann::json::array();
  for (const auto &r : res.rows) {
    nlohmann::json row{{"t", r.t}, {"trH2", r.trh2}, {"trHF", r.trhf}, {"norm", r.norm}};
    row["c"] = nlohmann::json::array();
    for (const cplx &c : r.c) row["c"].push_back({{"re", c.real()}, {"im", c.imag()}});
    if (res.with_fidelity) row["fidelity_to_target"] = r.fidelity;
    j["samples"].push_back(row);
  }
  os << std::setprecision(17) << j.dump(2) << "\n";
}

int cmd_run(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
  RunResult res;
  try {
    res = run_scenario(cfg);
  } catch (const UnknownScenario &e) {
    err << "error: " << e.what() << "\n";
    return exit_code::unknown_scenario;
  } catch (const std::invalid_argument &e) {
    err << "error: " << e.what() << "\n";
    return exit_code::bad_params;
  }
  std::ofstream file;
  if (!cfg.out.empty()) {
    file.open(cfg.out);
    if (!file) {
      err << "error: cannot open " << cfg.out << "\n";
      return exit_code::bad_params;
    }
  }
  std::ostream &os = cfg.out.empty() ? out : file;
  if (cfg.format == "json")
    write_run_json(os, cfg, res);
  else
    write_csv(os, res.rows, res.with_fidelity);
  if (res.aborted) {
    err << "error: drift abort: " << res.reason << "\n";
    return exit_code::drift_abort;
  }
  logger().info("{}: {} samples written", cfg.scenario, res.rows.size());
  return exit_code::ok;
}

std::vector<CheckRecord> suite_records(const std::string &suite, std::uint64_t seed) {
  std::vector<CheckRecord> out;
  auto add = [&out](std::vector<CheckRecord> r) { out.insert(out.end(), r.begin(), r.end()); };
  if (suite == "gates" || suite == "all") add(gates_checks(seed));
  if (suite == "special" || suite == "all") add(special_checks(seed));
  if (suite == "catalog" || suite == "all") add(catalog_checks(seed));
  return out;
}

}  // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Quantum brachistochrone toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", tool_version);

  RunConfig run;
  double t_max = -1.0;
  auto *run_cmd = app.add_subcommand("run", "integrate a scenario and write its trajectory");
  run_cmd->add_option("--scenario", run.scenario, "scenario name")->required();
  run_cmd->add_option("--param", run.params, "parameter override key=value (repeatable)");
  run_cmd->add_option("--t-max", t_max, "final time");
  run_cmd->add_option("--dt", run.dt, "time step");
  run_cmd->add_option("--out", run.out, "output path (default stdout)");
  run_cmd->add_option("--format", run.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  run_cmd->add_option("--seed", run.seed, "seed for random draws");
  run_cmd->add_option("--tol", run.tol, "invariant drift that aborts the run");

  std::string suite = "all", format = "text";
  std::uint64_t seed = 42;
  double tol = 0.0;
  auto *verify_cmd = app.add_subcommand("verify", "run a verification suite");
  verify_cmd->add_option("--suite", suite, "gates, special, catalog or all")
      ->check(CLI::IsMember({"gates", "special", "catalog", "all"}));
  verify_cmd->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
  verify_cmd->add_option("--seed", seed, "seed for random draws");
  verify_cmd->add_option("--tol", tol, "accepted for symmetry with run; suites carry their own tolerances");
  verify_cmd->add_option("--out", run.out, "output path (default stdout)");

  app.add_subcommand("list-scenarios", "print the scenario names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success &e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError &e) {
    app.exit(e, out, err);
    return exit_code::bad_params;
  }

  if (run_cmd->parsed()) {
    if (t_max >= 0.0 || run_cmd->count("--t-max")) run.t_max = t_max;
    return cmd_run(run, out, err);
  }
  if (verify_cmd->parsed()) {
    const auto records = suite_records(suite, seed);
    const std::string body = format == "json" ? report_json(suite, records) + "\n" : report_text(suite, records);
    if (run.out.empty()) {
      out << body;
    } else {
      std::ofstream file(run.out);
      if (!file) {
        err << "error: cannot open " << run.out << "\n";
        return exit_code::bad_params;
      }
      file << body;
    }
    return any_failed(records) ? exit_code::check_failed : exit_code::ok;
  }
  for (const auto &name : scenario_names()) out << name << "\n";
  return exit_code::ok;
}

}  // namespace qbrach
