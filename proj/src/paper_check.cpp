/**
 * This code is part of helstrom.
 *
 * (C) Copyright the helstrom contributors 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "helstrom/paper_check.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "helstrom/error.hpp"
#include "helstrom/paper_values_embed.hpp"

namespace helstrom::report {

namespace {

using closedform::GusParameters;
using closedform::Rank2Parameters;
using linalg::ComplexMatrix;
using states::FactorSet;

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      // the compared blocks are real; imaginary residue is reported upstream
      row.push_back(sig12(m(i, j).real()));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_to_json(const std::vector<double>& v) {
  json arr = json::array();
  for (const double x : v) arr.push_back(sig12(x));
  return arr;
}

// recursive max |actual - expected| over matching shapes; returns +inf on a
// shape mismatch so the entry fails loudly instead of silently passing
double max_abs_error(const json& expected, const json& actual, bool compare_abs) {
  if (expected.is_array()) {
    if (!actual.is_array() || expected.size() != actual.size())
      return std::numeric_limits<double>::infinity();
    double err = 0.0;
    for (std::size_t i = 0; i < expected.size(); ++i)
      err = std::max(err, max_abs_error(expected[i], actual[i], compare_abs));
    return err;
  }
  if (expected.is_boolean())
    return (actual.is_boolean() && actual == expected) ? 0.0
           : std::numeric_limits<double>::infinity();
  if (!expected.is_number() || !actual.is_number())
    return std::numeric_limits<double>::infinity();
  double e = expected.get<double>();
  double a = actual.get<double>();
  if (compare_abs) {
    e = std::abs(e);
    a = std::abs(a);
  }
  return std::abs(a - e);
}

struct ComputedValues {
  std::map<std::string, json> by_id;
};

// rerun both worked examples and collect every quantity the reference prints
ComputedValues compute_reference_actuals(const Options& opt) {
  ComputedValues out;

  // --- non-symmetric worked example (section V.C) ---
  {
    instances::CoherentRun run;
    run.alpha0 = {-1.2247, 0.0};
    run.alpha1 = {1.3038, 0.0};
    run.n_thermal = 0.05;
    run.dim = 10;
    run.q0 = 0.4;
    run.rank = 2;
    run.rank_tol = opt.rank_tol;
    const auto pipe = instances::make_coherent(run);

    out.by_id["VC.G00"] = matrix_to_json(pipe.gram.g00());
    out.by_id["VC.G01"] = matrix_to_json(pipe.gram.g01());
    out.by_id["VC.G11"] = matrix_to_json(pipe.gram.g11());

    const Rank2Parameters rp = closedform::extract_rank2_parameters(pipe.factors);
    out.by_id["VC.p_a"] = sig12(rp.p_a);
    out.by_id["VC.p_c"] = sig12(rp.p_c);
    out.by_id["VC.p_b"] = sig12(rp.p_b);
    out.by_id["VC.p_d"] = sig12(rp.p_d);
    out.by_id["VC.X"] = sig12(rp.X.real());
    out.by_id["VC.Y"] = sig12(rp.Y.real());
    out.by_id["VC.W"] = sig12(rp.W.real());
    out.by_id["VC.Z"] = sig12(rp.Z.real());

    const auto sgm = detection::sgm_solve(pipe.gram, run.q0);
    std::vector<double> ascending(sgm.eigenvalues.rbegin(), sgm.eigenvalues.rend());
    out.by_id["VC.eigenvalues"] = vector_to_json(ascending);
    out.by_id["VC.Pc"] = sig12(sgm.pc);
    out.by_id["VC.Pe"] = sig12(sgm.pe);

    const auto coeffs = closedform::rank2_coefficients(rp);
    out.by_id["VC.quartic_coefficients"] =
        json::array({sig12(coeffs.b), sig12(coeffs.c), sig12(coeffs.d), sig12(coeffs.e)});
    const auto roots = linalg::solve_quartic(coeffs);
    out.by_id["VC.quartic_roots"] =
        json::array({sig12(roots[0]), sig12(roots[1]), sig12(roots[2]), sig12(roots[3])});
    const auto possum = closedform::rank2_positive_sum(coeffs);
    out.by_id["VC.R"] = sig12(possum.r);
    out.by_id["VC.S"] = sig12(possum.s);
    out.by_id["VC.eta12"] = sig12(possum.value);
    out.by_id["VC.trace_D"] =
        sig12(detection::decision_operator(pipe.factors).trace().real());
    out.by_id["VC.pure_Pe"] = sig12(1.0 - closedform::pure_bound(0.4, {0.04089, 0.0}));
  }

  // --- symmetric worked example (section VI.B) ---
  {
    instances::CoherentRun run;
    run.alpha0 = {-1.26491, 0.0};
    run.alpha1 = {1.26491, 0.0};
    run.n_thermal = 0.05;
    run.dim = 10;
    run.q0 = 0.5;
    run.rank = 2;
    run.rank_tol = opt.rank_tol;
    const auto pipe = instances::make_coherent(run);

    out.by_id["VIB.G00"] = matrix_to_json(pipe.gram.g00());
    out.by_id["VIB.G01"] = matrix_to_json(pipe.gram.g01());
    out.by_id["VIB.gus_detected"] = detection::is_gus(pipe.gram, 1e-8);

    const Rank2Parameters rp = closedform::extract_rank2_parameters(pipe.factors);
    out.by_id["VIB.p_a"] = sig12(rp.p_a);
    out.by_id["VIB.p_c"] = sig12(rp.p_c);
    out.by_id["VIB.X"] = sig12(rp.X.real());
    out.by_id["VIB.absY"] = sig12(std::abs(rp.Y));
    out.by_id["VIB.Z"] = sig12(rp.Z.real());

    const auto hel = detection::helstrom_solve(pipe.factored_ensemble);
    std::vector<double> nonzero;
    for (const double eta : hel.eigenvalues)
      if (std::abs(eta) > hel.zero_threshold) nonzero.push_back(eta);
    std::sort(nonzero.begin(), nonzero.end());
    out.by_id["VIB.eigenvalues"] = vector_to_json(nonzero);

    const GusParameters gus = GusParameters::make_with_pc(
        0.5 * (rp.p_a + rp.p_b), 0.5 * (rp.p_c + rp.p_d), rp.X.real(),
        0.5 * (rp.Y + std::conj(rp.W)), rp.Z.real());
    const auto [h, l] = closedform::gus_hl(gus);
    out.by_id["VIB.quarter_H"] = sig12(h / 4.0);
    out.by_id["VIB.L_16"] = sig12(l / 16.0);
    const auto broots = linalg::solve_biquadratic(h, l);
    out.by_id["VIB.biquad_roots"] = json::array(
        {sig12(broots[0]), sig12(broots[1]), sig12(broots[2]), sig12(broots[3])});
    out.by_id["VIB.HL_general"] = json::array({sig12(h), sig12(l)});

    GusParameters y0 = gus;
    y0.Y = {0.0, 0.0};
    const auto [h0, l0] = closedform::gus_hl(y0);
    out.by_id["VIB.H"] = sig12(h0);
    out.by_id["VIB.L"] = sig12(l0);
    out.by_id["VIB.Pc_eq35"] = sig12(closedform::gus_pc(y0));

    const double pc_biquad = 0.5 + broots[2] + broots[3];
    const double pc_explicit = closedform::gus_pc(gus);
    out.by_id["VIB.Pc_triple"] =
        json::array({sig12(hel.pc), sig12(pc_biquad), sig12(pc_explicit)});
    out.by_id["VIB.pure_Pe"] = sig12(1.0 - closedform::pure_bound(0.5, {0.04076, 0.0}));
  }

  // --- rank illustration (section II remark) ---
  {
    const double w = std::sqrt(0.5);
    ComplexMatrix gamma0(4, 2), gamma1(4, 2);
    gamma0(0, 0) = w;
    gamma0(1, 1) = w;
    gamma1(0, 0) = w;
    gamma1(2, 1) = w;
    FactorSet fs;
    fs.gamma0 = gamma0;
    fs.gamma1 = gamma1;
    fs.q0 = 0.5;
    fs.q1 = 0.5;
    const auto gp = detection::build_gram_pair(fs);
    out.by_id["REM.rank_gs"] =
        static_cast<double>(linalg::matrix_rank(gp.skew_gram, 1e-9));
    out.by_id["REM.rank_d"] =
        static_cast<double>(linalg::matrix_rank(detection::decision_operator(fs), 1e-9));
    const auto sgm = detection::sgm_solve(gp, 0.5);
    out.by_id["REM.spurious"] = static_cast<double>(sgm.spurious_eigenvalues.size());
  }

  return out;
}

}  // namespace

PaperCheckResult run_paper_check(const Options& opt) {
  json table;
  if (!opt.data_file.empty()) {
    std::ifstream in(opt.data_file);
    if (!in) throw UsageError("cannot open reference data file: " + opt.data_file);
    table = json::parse(in);
  } else {
    table = json::parse(kReferenceValuesJson);
  }
  if (!table.contains("entries") || !table["entries"].is_array())
    throw DomainError("reference data file has no entries array");

  const ComputedValues computed = compute_reference_actuals(opt);

  PaperCheckResult result;
  for (const auto& raw : table["entries"]) {
    CheckEntry e;
    e.id = raw.value("id", "");
    e.section = raw.value("section", "");
    e.quantity = raw.value("quantity", "");
    e.kind = raw.value("kind", "check");
    e.note = raw.value("note", "");
    e.tolerance = raw.value("tolerance", 0.0);
    const bool compare_abs = raw.value("compare_abs", false);
    if (raw.contains("expected")) e.expected = raw["expected"];

    const auto it = computed.by_id.find(e.id);
    if (it != computed.by_id.end()) e.actual = it->second;

    if (e.kind == "documented") {
      e.status = "documented";
      if (!e.expected.is_null() && !e.actual.is_null())
        e.abs_error = max_abs_error(e.expected, e.actual, compare_abs);
      ++result.documented;
    } else if (e.actual.is_null()) {
      e.status = "fail";
      e.note = "no computed value for this entry";
      ++result.failed;
    } else {
      e.abs_error = max_abs_error(e.expected, e.actual, compare_abs);
      const bool pass = e.expected.is_boolean() ? e.abs_error == 0.0
                                                : e.abs_error <= e.tolerance;
      e.status = pass ? "pass" : "fail";
      pass ? ++result.passed : ++result.failed;
    }
    result.entries.push_back(std::move(e));
  }
  return result;
}

json PaperCheckResult::to_json() const {
  json j = json::object();
  j["schema_version"] = 1;
  j["command"] = "paper-check";
  json rows = json::array();
  for (const auto& e : entries) {
    json row = json::object();
    row["id"] = e.id;
    row["section"] = e.section;
    row["quantity"] = e.quantity;
    row["status"] = e.status;
    if (!e.expected.is_null()) row["expected"] = e.expected;
    if (!e.actual.is_null()) row["actual"] = e.actual;
    if (!e.expected.is_null() && !e.actual.is_null() && std::isfinite(e.abs_error)) {
      row["abs_error"] = sig12(e.abs_error);
      row["tolerance"] = sig12(e.tolerance);
    }
    if (!e.note.empty()) row["note"] = e.note;
    rows.push_back(std::move(row));
  }
  j["table"] = std::move(rows);
  j["summary"] = {{"passed", passed}, {"failed", failed}, {"documented", documented}};
  return j;
}

std::string PaperCheckResult::to_table() const {
  std::ostringstream os;
  for (const auto& e : entries) {
    os << '[' << e.status << "] " << e.id << " (" << e.section << ") " << e.quantity;
    if (!e.expected.is_null() && !e.actual.is_null()) {
      os << ": expected " << e.expected.dump() << ", got " << e.actual.dump();
      if (std::isfinite(e.abs_error)) os << ", |err| " << e.abs_error << ", tol " << e.tolerance;
    }
    if (!e.note.empty()) os << "\n    note: " << e.note;
    os << '\n';
  }
  os << "summary: " << passed << " passed, " << failed << " failed, " << documented
     << " documented\n";
  return os.str();
}

std::string PaperCheckResult::render(const Options& opt) const {
  if (opt.format == "csv") return to_table();
  return to_json().dump(2) + "\n";
}

}  // namespace helstrom::report
