/*
 * report.hpp - check records shared by the verification suites.
 */
#pragma once

#include <string>
#include <vector>

namespace qbrach {

enum class Status { pass, fail, reported_only };

struct CheckRecord {
  std::string id;
  Status status = Status::pass;
  double residual = 0.0;
  double tolerance = 0.0;
  std::string note;
};

const char *status_name(Status s);

// pass iff residual <= tol (NaN fails)
CheckRecord check(std::string id, double residual, double tol, std::string note = {});
// pass iff value >= floor, for claims that something is far from a property
CheckRecord check_at_least(std::string id, double value, double floor, std::string note = {});
// value recorded, never passes or fails
CheckRecord reported(std::string id, double residual, double tol, std::string note = {});

bool any_failed(const std::vector<CheckRecord> &records);

}  // namespace qbrach
