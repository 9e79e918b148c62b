/*
 * cli.hpp - command-line front end (run, verify, list-scenarios).
 */
#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "qbrach/matcore.hpp"
#include "qbrach/report.hpp"

namespace qbrach {

inline constexpr const char *tool_version = "0.1.0";

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int check_failed = 1;
inline constexpr int drift_abort = 2;
inline constexpr int unknown_scenario = 64;
inline constexpr int bad_params = 65;
}  // namespace exit_code

// "1.5", "-2", "0.3+0.4i", "2i", "(0.3,0.4)"; throws ValidationError
cplx parse_complex(const std::string &text);
// "key=value"
std::pair<std::string, cplx> parse_param(const std::string &text);

struct TrajectoryRow {
  double t = 0.0;
  CVector c;
  double trh2 = 0.0;
  double trhf = 0.0;
  double norm = 0.0;
  double fidelity = -1.0;  // negative when no target
};

void write_csv(std::ostream &os, const std::vector<TrajectoryRow> &rows, bool with_fidelity);
std::vector<TrajectoryRow> read_csv(std::istream &is);

std::string report_json(const std::string &suite, const std::vector<CheckRecord> &records);
std::string report_text(const std::string &suite, const std::vector<CheckRecord> &records);

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace qbrach
