/*
 * report.cpp
 */
#include "qbrach/report.hpp"

#include <algorithm>

namespace qbrach {

const char *status_name(Status s) {
  switch (s) {
  case Status::pass: return "pass";
  case Status::fail: return "fail";
  case Status::reported_only: return "reported-only";
  }
  return "fail";
}

CheckRecord check(std::string id, double residual, double tol, std::string note) {
  const bool ok = residual <= tol;  // false for NaN
  return {std::move(id), ok ? Status::pass : Status::fail, residual, tol, std::move(note)};
}

CheckRecord check_at_least(std::string id, double value, double floor, std::string note) {
  const bool ok = value >= floor;
  return {std::move(id), ok ? Status::pass : Status::fail, value, floor, std::move(note)};
}

CheckRecord reported(std::string id, double residual, double tol, std::string note) {
  return {std::move(id), Status::reported_only, residual, tol, std::move(note)};
}

bool any_failed(const std::vector<CheckRecord> &records) {
  return std::any_of(records.begin(), records.end(),
                     [](const CheckRecord &r) { return r.status == Status::fail; });
}

}  // namespace qbrach
