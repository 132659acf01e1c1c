/**
 * This code is part of helstrom.
 *
 * (C) Copyright the helstrom contributors 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <set>
#include <string>

#include "helstrom/error.hpp"
#include "helstrom/paper_check.hpp"
#include "helstrom/report.hpp"

using namespace helstrom;
using linalg::cdouble;
using report::json;
using report::Options;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
};

CliResult run_cli(const std::string& args, const std::string& env = "") {
  const std::string cmd =
      (env.empty() ? std::string() : env + " ") + HELSTROM_CLI_PATH + " " + args +
      " 2>/dev/null";
  CliResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) res.out.append(buf.data(), n);
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

// structural mirror of docs/run_report.schema.json
void check_run_report_shape(const json& j) {
  REQUIRE(j.is_object());
  CHECK(j.at("schema_version").is_number_integer());
  CHECK(j.at("command").is_string());
  CHECK(j.at("input").is_object());
  REQUIRE(j.at("methods").is_array());
  for (const auto& m : j.at("methods")) {
    CHECK(m.at("name").is_string());
    CHECK(m.at("pc").is_number());
    CHECK(m.at("pe").is_number());
    CHECK(m.at("eigenvalues").is_array());
  }
  if (j.at("methods").size() >= 2) CHECK(j.contains("cross_method_max_deviation"));
  CHECK(j.at("warnings").is_array());
}

}  // namespace

TEST_CASE("sig12 rounds to 12 significant digits and normalizes -0") {
  CHECK(report::sig12(0.0) == 0.0);
  CHECK(!std::signbit(report::sig12(-0.0)));
  CHECK(report::sig12(0.123456789012345) == doctest::Approx(0.123456789012).epsilon(1e-13));
  CHECK(report::sig12(1.0) == 1.0);
}

TEST_CASE("run_pure: routes agree and the report is well formed") {
  Options opt;
  const auto rep = report::run_pure(0.4, cdouble{0.04089, 0.0}, opt);
  REQUIRE(rep.methods.size() == 3);
  CHECK(*rep.max_deviation() < 1e-8);
  CHECK(rep.methods[0].pe == doctest::Approx(4.014392575e-4).epsilon(1e-8));
  check_run_report_shape(rep.to_json());
}

TEST_CASE("run_pure: zero overlap detects perfectly") {
  Options opt;
  const auto rep = report::run_pure(0.5, cdouble{0.0, 0.0}, opt);
  for (const auto& m : rep.methods) CHECK(m.pc == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("reports serialize byte-identically across runs") {
  Options opt;
  const auto a = report::run_pure(0.37, cdouble{0.2, 0.1}, opt).to_json().dump(2);
  const auto b = report::run_pure(0.37, cdouble{0.2, 0.1}, opt).to_json().dump(2);
  CHECK(a == b);

  instances::CoherentRun run;
  run.alpha0 = {-1.2247, 0.0};
  run.alpha1 = {1.3038, 0.0};
  run.n_thermal = 0.05;
  run.dim = 10;
  run.q0 = 0.4;
  run.rank = 2;
  const auto c = report::run_coherent(run, opt).to_json().dump(2);
  const auto d = report::run_coherent(run, opt).to_json().dump(2);
  CHECK(c == d);
}

TEST_CASE("run_compare: closed form, solvers, and equal-priors shorthand") {
  Options opt;
  closedform::ComparisonSpec spec;
  spec.h = 3;
  spec.q0 = 0.25;  // equal priors for h = 3
  spec.overlaps = {cdouble{std::sqrt(0.19), 0.0}};
  const auto rep = report::run_compare(spec, opt);
  REQUIRE(rep.methods.size() == 3);
  CHECK(rep.methods[0].pe == doctest::Approx(0.025).epsilon(1e-10));
  CHECK(*rep.max_deviation() < 1e-9);
  check_run_report_shape(rep.to_json());
}

TEST_CASE("run_rank2 and run_gus agree across their methods") {
  Options opt;
  closedform::Rank2Parameters rp;
  rp.q0 = 0.45;
  rp.p_a = 0.9;
  rp.p_c = 0.1;
  rp.p_b = 0.88;
  rp.p_d = 0.12;
  rp.X = cdouble{0.15, 0.05};
  rp.Y = cdouble{0.1, 0.0};
  rp.W = cdouble{-0.05, 0.08};
  rp.Z = cdouble{0.2, -0.1};
  const auto rep = report::run_rank2(rp, opt);
  REQUIRE(rep.methods.size() == 3);
  CHECK(*rep.max_deviation() < 1e-9);

  const auto gus = closedform::GusParameters::make(0.93, 0.12, cdouble{0.06, 0.01}, 0.22);
  const auto grep = report::run_gus(gus, opt);
  REQUIRE(grep.methods.size() == 4);
  CHECK(*grep.max_deviation() < 1e-9);
}

TEST_CASE("run_coherent: the non-symmetric worked example") {
  Options opt;
  instances::CoherentRun run;
  run.alpha0 = {-1.2247, 0.0};
  run.alpha1 = {1.3038, 0.0};
  run.n_thermal = 0.05;
  run.dim = 10;
  run.q0 = 0.4;
  run.rank = 2;
  const auto rep = report::run_coherent(run, opt);

  bool has_gus = false, has_quartic = false;
  for (const auto& m : rep.methods) {
    if (m.name == "gus_biquadratic") has_gus = true;
    if (m.name == "rank2_quartic") has_quartic = true;
    CHECK(m.pc == doctest::Approx(0.997268).epsilon(1e-4));
  }
  CHECK(has_quartic);
  CHECK(!has_gus);  // not block-circulant
  CHECK(*rep.max_deviation() < 1e-8);
}

TEST_CASE("run_coherent: the symmetric worked example detects the symmetry") {
  Options opt;
  instances::CoherentRun run;
  run.alpha0 = {-1.26491, 0.0};
  run.alpha1 = {1.26491, 0.0};
  run.n_thermal = 0.05;
  run.dim = 10;
  run.q0 = 0.5;
  run.rank = 2;
  const auto rep = report::run_coherent(run, opt);

  std::set<std::string> names;
  for (const auto& m : rep.methods) names.insert(m.name);
  CHECK(names.count("sgm") == 1);
  CHECK(names.count("helstrom") == 1);
  CHECK(names.count("rank2_quartic") == 1);
  CHECK(names.count("gus_biquadratic") == 1);
  CHECK(names.count("gus_explicit") == 1);
  CHECK(*rep.max_deviation() < 1e-9);
}

TEST_CASE("run_coherent: rank-1 thermal-free case reduces to the pure bound") {
  Options opt;
  instances::CoherentRun run;
  run.alpha0 = {-0.8, 0.0};
  run.alpha1 = {0.9, 0.0};
  run.n_thermal = 0.0;
  run.dim = 14;
  run.q0 = 0.5;
  run.rank = 1;
  const auto rep = report::run_coherent(run, opt);

  const double x = std::exp(-std::norm(cdouble{-0.8, 0.0} - cdouble{0.9, 0.0}) / 2.0);
  const double want = closedform::pure_bound(0.5, cdouble{x, 0.0});
  bool saw_closed_form = false;
  for (const auto& m : rep.methods) {
    if (m.name == "pure_closed_form") {
      saw_closed_form = true;
      CHECK(m.pc == doctest::Approx(want).epsilon(1e-6));
    }
  }
  CHECK(saw_closed_form);
  CHECK(*rep.max_deviation() < 1e-8);
}

TEST_CASE("parse_sweep_spec accepts the documented grammar only") {
  const auto spec = report::parse_sweep_spec("alpha1=0.5:2.0:0.05");
  CHECK(spec.parameter == "alpha1");
  CHECK(spec.start == doctest::Approx(0.5));
  CHECK(spec.stop == doctest::Approx(2.0));
  CHECK(spec.step == doctest::Approx(0.05));
  CHECK_THROWS_AS(report::parse_sweep_spec("alpha1=0.5:2.0"), UsageError);
  CHECK_THROWS_AS(report::parse_sweep_spec("dim=1:4:1"), UsageError);
  CHECK_THROWS_AS(report::parse_sweep_spec("alpha1=2.0:0.5:0.1"), UsageError);
}

TEST_CASE("run_sweep emits the points in input order") {
  Options opt;
  instances::CoherentRun base;
  base.alpha0 = {-1.0, 0.0};
  base.alpha1 = {1.0, 0.0};
  base.n_thermal = 0.05;
  base.dim = 10;
  base.q0 = 0.5;
  base.rank = 2;
  const auto res =
      report::run_sweep(base, report::parse_sweep_spec("alpha1=0.8:1.2:0.1"), opt);
  REQUIRE(res.points.size() == 5);
  double prev = -1.0;
  for (const auto& p : res.points) {
    CHECK(p.at("value").get<double>() > prev);
    prev = p.at("value").get<double>();
    CHECK(p.at("cross_method_max_deviation").get<double>() < 1e-8);
  }
  const std::string csv = res.to_csv();
  CHECK(csv.rfind("parameter,value,pc_sgm,pe_sgm,pc_helstrom", 0) == 0);
}

TEST_CASE("paper-check passes every gated entry and documents the known drift") {
  Options opt;
  const auto res = report::run_paper_check(opt);
  CHECK(res.exit_code() == 0);
  CHECK(res.failed == 0);
  CHECK(res.documented > 0);

  std::set<std::string> documented_ids;
  for (const auto& e : res.entries)
    if (e.status == "documented") documented_ids.insert(e.id);
  for (const char* required : {"VC.quartic_roots", "VC.quartic_coefficients",
                               "DOC.eta_pm_sign", "DOC.s_shorthand", "DOC.de_symbolic",
                               "VIB.Pc_triple"})
    CHECK(documented_ids.count(required) == 1);

  const auto j = res.to_json();
  CHECK(j.at("summary").at("failed").get<int>() == 0);
  CHECK(j.at("table").is_array());
}

TEST_CASE("cli: usage errors exit 2, numeric failures exit 3") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("pure --q0 0.4").exit_code == 2);          // missing --overlap
  CHECK(run_cli("pure --q0 0.4 --overlap zz").exit_code == 2);
  CHECK(run_cli("nonsense").exit_code == 2);
  // heavy thermal load on a tiny space: truncation failure
  CHECK(run_cli("coherent --alpha0 0 --alpha1 0.5 --n-thermal 1.5 --dim 4").exit_code == 3);
}

TEST_CASE("cli: pure run emits schema-shaped JSON and is reproducible") {
  const auto a = run_cli("pure --q0 0.4 --overlap 0.04089");
  REQUIRE(a.exit_code == 0);
  const auto j = json::parse(a.out);
  check_run_report_shape(j);
  CHECK(j.at("methods")[0].at("pe").get<double>() ==
        doctest::Approx(4.014392575e-4).epsilon(1e-8));

  const auto b = run_cli("pure --q0 0.4 --overlap 0.04089");
  CHECK(a.out == b.out);
}

TEST_CASE("cli: csv format renders one row per method") {
  const auto r = run_cli("--format csv pure --q0 0.5 --overlap 0.1");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.rfind("command,method,pc,pe", 0) == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 4);  // header + 3 methods
}

TEST_CASE("cli: paper-check exits 0") {
  const auto r = run_cli("paper-check");
  CHECK(r.exit_code == 0);
  const auto j = json::parse(r.out);
  CHECK(j.at("summary").at("failed").get<int>() == 0);
}

TEST_CASE("cli: HELSTROM_RANK_TOL environment override is honored") {
  // a coarse tolerance keeps only the leading eigenvalue per state, so the
  // pure-state closed form appears in the report
  const auto r = run_cli(
      "coherent --alpha0 -1.2247 --alpha1 1.3038 --n-thermal 0.05 --dim 10 --q0 0.4",
      "HELSTROM_RANK_TOL=0.2");
  REQUIRE(r.exit_code == 0);
  const auto j = json::parse(r.out);
  CHECK(j.at("input").at("rank_tol").get<double>() == doctest::Approx(0.2));
  bool has_pure = false;
  for (const auto& m : j.at("methods"))
    if (m.at("name") == "pure_closed_form") has_pure = true;
  CHECK(has_pure);
}
