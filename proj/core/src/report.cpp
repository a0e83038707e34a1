#include "pottslab/report.hpp"

#include "pottslab/io.hpp"

namespace pottslab {

void CheckReport::require_le(const std::string& id, double lhs, double rhs, double tol) {
  CheckCase c;
  c.id = id;
  c.lhs = lhs;
  c.rhs = rhs;
  c.slack = rhs - lhs;
  c.ok = c.slack >= -tol;
  ++cases_;
  if (!c.ok) ++violations_;
  if (c.slack < min_slack_) {
    min_slack_ = c.slack;
    worst_case_ = id;
  }
  if (!c.ok || detail_.size() < detail_limit_) detail_.push_back(std::move(c));
}

void CheckReport::require_slack(const std::string& id, double slack, double tol) {
  require_le(id, -slack, 0.0, tol);
}

void CheckReport::merge(const CheckReport& other, const std::string& id_prefix) {
  cases_ += other.cases_;
  violations_ += other.violations_;
  if (other.min_slack_ < min_slack_) {
    min_slack_ = other.min_slack_;
    worst_case_ = id_prefix + other.worst_case_;
  }
  for (const auto& c : other.detail_) {
    if (!c.ok || detail_.size() < detail_limit_) {
      detail_.push_back(c);
      if (!id_prefix.empty()) detail_.back().id = id_prefix + c.id;
    }
  }
}

std::string check_cases_csv(const std::vector<const CheckReport*>& reports) {
  CsvWriter csv({"suite", "case_id", "lhs", "rhs", "slack", "ok"});
  for (const CheckReport* rep : reports) {
    for (const CheckCase& c : rep->detail()) {
      csv.add_field(rep->name());
      csv.add_field(c.id);
      csv.add_field(c.lhs);
      csv.add_field(c.rhs);
      csv.add_field(c.slack);
      csv.add_field(c.ok ? 1 : 0);
      csv.end_row();
    }
  }
  return csv.str();
}

std::string check_summary_json_fragment(const CheckReport& report) {
  JsonObj o;
  o.field("name", report.name())
      .field("cases", report.cases())
      .field("violations", report.violations())
      .field("pass", report.pass())
      .field("min_slack", report.cases() ? report.min_slack() : 0.0)
      .field("worst_case", report.worst_case());
  return o.str(false);
}

}  // namespace pottslab
