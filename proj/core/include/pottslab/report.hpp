#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

namespace pottslab {

/// One checked inequality lhs <= rhs + tol; slack = rhs - lhs is reported as
/// observed, never clamped.
struct CheckCase {
  std::string id;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool ok = true;
};

/// Accumulates the outcomes of a named sweep of inequality checks. Violations
/// are always retained in the detail list; passing cases are retained up to
/// detail_limit so huge sweeps stay bounded in memory.
class CheckReport {
 public:
  explicit CheckReport(std::string name) : name_(std::move(name)) {}

  /// Asserts lhs <= rhs + tol, recording slack = rhs - lhs.
  void require_le(const std::string& id, double lhs, double rhs, double tol);

  /// Records an already-computed slack (slack >= -tol passes).
  void require_slack(const std::string& id, double slack, double tol);

  /// Folds another report in; id_prefix tags the absorbed case ids (used by
  /// sweeps to mark the instance index).
  void merge(const CheckReport& other, const std::string& id_prefix = "");

  const std::string& name() const { return name_; }
  long cases() const { return cases_; }
  long violations() const { return violations_; }
  bool pass() const { return violations_ == 0; }
  double min_slack() const { return min_slack_; }
  const std::string& worst_case() const { return worst_case_; }
  const std::vector<CheckCase>& detail() const { return detail_; }

  void set_detail_limit(std::size_t n) { detail_limit_ = n; }

 private:
  std::string name_;
  long cases_ = 0;
  long violations_ = 0;
  double min_slack_ = std::numeric_limits<double>::infinity();
  std::string worst_case_;
  std::vector<CheckCase> detail_;
  std::size_t detail_limit_ = 250000;
};

/// Retained cases of several reports as one CSV table
/// (suite,case_id,lhs,rhs,slack,ok).
std::string check_cases_csv(const std::vector<const CheckReport*>& reports);

/// One summary object per report: {name, cases, violations, pass, min_slack,
/// worst_case}; serialized with stable key order.
std::string check_summary_json_fragment(const CheckReport& report);

}  // namespace pottslab
