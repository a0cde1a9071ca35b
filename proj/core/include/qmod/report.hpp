#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qmod/qseries.hpp"

namespace qmod {

/// One compared quantity. Informational witnesses carry no expected value
/// and are always ok.
struct Witness {
  std::string name;
  std::optional<std::string> expected;
  std::string actual;
  bool ok = true;
};

struct CheckReport {
  std::string check_id;
  std::vector<std::pair<std::string, std::string>> params;
  bool passed = false;
  std::vector<Witness> witnesses;
  std::string notes;

  void add_param(std::string key, std::string value);
  void add_param(std::string key, std::int64_t value);
  /// Records a witness and folds its outcome into `passed` (see finalize).
  void expect(std::string name, std::string expected, std::string actual, bool ok);
  void inform(std::string name, std::string actual);
  /// passed = every witness ok (and at least one asserted witness).
  void finalize();
  void note(const std::string& text);
};

struct SkippedRun {
  std::int64_t curve;
  std::int64_t p;
  std::optional<std::int64_t> m;
  std::string reason;
};

struct ReportBundle {
  std::vector<std::pair<std::string, std::string>> run;  // invocation metadata
  std::vector<CheckReport> reports;
  std::vector<SkippedRun> skipped;

  std::size_t passed_count() const;
  bool all_passed() const { return passed_count() == reports.size(); }
  /// "PASSED x/y (skipped z)"
  std::string summary_line() const;
};

/// {"check_id", "params": {...}, "passed", "expected": {...}, "actual": {...},
/// "notes"}; all integers are decimal strings.
std::string to_json(const CheckReport& report, int indent = -1);
std::string to_json(const ReportBundle& bundle, int indent = 2);
/// One line per report followed by the summary line.
std::string to_table(const ReportBundle& bundle);
std::string to_table(const CheckReport& report);

/// {"form", "prec", "coeffs": [[e, "c"], ...]}
std::string series_to_json(const std::string& form, const QSeries& f, int indent = -1);
/// "e c" per nonzero coefficient, increasing e.
std::string series_to_table(const QSeries& f);

}  // namespace qmod
