/**
 * This code is part of helstrom.
 *
 * (C) Copyright the helstrom contributors 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "helstrom/instances.hpp"

namespace helstrom::report {

using json = nlohmann::ordered_json;
using linalg::cdouble;

struct Options {
  std::string format = "json";  // json | csv
  double rank_tol = 1e-6;
  std::uint64_t seed = 0;
  bool verbose = false;
  std::string data_file;  // optional override for the reference-value table
};

/// Round to 12 significant digits; every float leaving a report goes through
/// this so reruns serialize byte-identically.
double sig12(double x);

struct MethodResult {
  std::string name;
  std::vector<double> eigenvalues;  // descending
  double pc = 0.0;
  double pe = 0.0;
  json extra = json::object();
};

struct RunReport {
  std::string command;
  json input = json::object();
  std::vector<MethodResult> methods;
  std::vector<std::string> warnings;

  std::optional<double> max_deviation() const;
  json to_json() const;
  std::string to_csv() const;
  std::string render(const Options& opt) const;
};

RunReport run_pure(double q0, cdouble overlap, const Options& opt);
RunReport run_compare(const closedform::ComparisonSpec& spec, const Options& opt);
RunReport run_rank2(const closedform::Rank2Parameters& rp, const Options& opt);
RunReport run_gus(const closedform::GusParameters& gp, const Options& opt);
RunReport run_coherent(const instances::CoherentRun& run, const Options& opt);

/// Parsed form of "param=start:stop:step".
struct SweepSpec {
  std::string parameter;
  double start = 0.0;
  double stop = 0.0;
  double step = 1.0;
};
SweepSpec parse_sweep_spec(const std::string& text);

struct SweepResult {
  std::string parameter;
  json input = json::object();
  std::vector<json> points;

  json to_json() const;
  std::string to_csv() const;
  std::string render(const Options& opt) const;
};

/// Evaluates the coherent pipeline across the swept parameter. Points are
/// independent and reported in input order.
SweepResult run_sweep(const instances::CoherentRun& base, const SweepSpec& spec,
                      const Options& opt);

json complex_to_json(cdouble z);

}  // namespace helstrom::report
