/**
 * This code is part of helstrom.
 *
 * (C) Copyright the helstrom contributors 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <string>
#include <vector>

#include "helstrom/report.hpp"

namespace helstrom::report {

/// One row of the reference-value comparison: a quantity recomputed by the
/// pipeline against its printed reference value. 'check' rows gate the exit
/// code; 'documented' rows record known internal inconsistencies of the
/// printed reference and never fail.
struct CheckEntry {
  std::string id;
  std::string section;
  std::string quantity;
  std::string kind;    // check | documented
  std::string status;  // pass | fail | documented
  json expected;
  json actual;
  double abs_error = 0.0;
  double tolerance = 0.0;
  std::string note;
};

struct PaperCheckResult {
  std::vector<CheckEntry> entries;
  int passed = 0;
  int failed = 0;
  int documented = 0;

  int exit_code() const { return failed == 0 ? 0 : 1; }
  json to_json() const;
  std::string to_table() const;
  std::string render(const Options& opt) const;
};

/// Reruns both worked examples and the rank illustration, compares every
/// printed quantity against the embedded reference table, and classifies
/// each as pass, fail, or documented discrepancy.
PaperCheckResult run_paper_check(const Options& opt);

}  // namespace helstrom::report
