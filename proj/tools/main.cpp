/**
 * This code is part of helstrom.
 *
 * (C) Copyright the helstrom contributors 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "helstrom/error.hpp"
#include "helstrom/paper_check.hpp"
#include "helstrom/report.hpp"

namespace {

using helstrom::UsageError;
using helstrom::linalg::cdouble;
using helstrom::report::Options;

// "re,im" or a bare real number
cdouble parse_complex(const std::string& text) {
  const auto comma = text.find(',');
  try {
    if (comma == std::string::npos) return {std::stod(text), 0.0};
    return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw UsageError("cannot parse complex value '" + text + "' (expected re or re,im)");
  }
}

cdouble json_to_complex(const nlohmann::ordered_json& j, const char* field) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  if (j.is_string()) return parse_complex(j.get<std::string>());
  throw UsageError(std::string("field '") + field + "' must be a number or [re, im]");
}

void emit(const std::string& body, const Options& opt, const std::string& stderr_note = "") {
  std::fputs(body.c_str(), stdout);
  if (opt.verbose && !stderr_note.empty()) std::fputs(stderr_note.c_str(), stderr);
}

int dispatch(int argc, char** argv) {
  CLI::App app{"binary quantum detection: eigendecomposition and Gram-matrix routes"};
  app.require_subcommand(1);

  Options opt;
  app.add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--rank-tol", opt.rank_tol, "relative eigenvalue cutoff for factor ranks")
      ->envname("HELSTROM_RANK_TOL")
      ->capture_default_str();
  app.add_option("--seed", opt.seed, "seed echoed into reports (test utilities)");
  app.add_flag("--verbose", opt.verbose, "extra diagnostics on stderr");

  // pure
  auto* pure = app.add_subcommand("pure", "two pure states: closed-form bound plus both solvers");
  double pure_q0 = 0.5;
  std::string pure_overlap = "0";
  pure->add_option("--q0", pure_q0, "prior of state 0")->required();
  pure->add_option("--overlap", pure_overlap, "overlap <a|b> as re or re,im")->required();

  // compare
  auto* compare = app.add_subcommand("compare", "pure state against a uniform mixture");
  compare->set_help_flag("--help", "print help");  // frees -h for the --h option
  double cmp_q0 = 0.5;
  std::size_t cmp_h = 1;
  std::vector<std::string> cmp_overlaps;
  double cmp_norm2 = -1.0;
  bool cmp_equal_priors = false;
  compare->add_option("--h", cmp_h, "number of orthonormal mixture kets")->required();
  compare->add_option("--q0", cmp_q0, "prior of the pure state");
  compare->add_flag("--equal-priors", cmp_equal_priors,
                    "give all h+1 kets probability 1/(h+1)");
  compare->add_option("--overlaps", cmp_overlaps, "overlaps <a|b_i> as re or re,im");
  compare->add_option("--norm2", cmp_norm2, "total squared overlap (instead of --overlaps)");

  // rank2
  auto* rank2 = app.add_subcommand("rank2", "rank-2 + rank-2 instance from a JSON parameter file");
  std::string rank2_input;
  rank2->add_option("--input", rank2_input, "parameter JSON file ('-' for stdin)")->required();

  // gus
  auto* gus = app.add_subcommand("gus", "symmetric rank-2 instance from its four parameters");
  double gus_pa = 1.0, gus_pc = -1.0, gus_x = 0.0, gus_z = 0.0;
  std::string gus_y = "0";
  gus->add_option("--p-a", gus_pa, "weight of the leading eigenket")->required();
  gus->add_option("--p-c", gus_pc, "weight of the second eigenket (default 1 - p_a)");
  gus->add_option("--x", gus_x, "inner product X (real)")->required();
  gus->add_option("--y", gus_y, "inner product Y as re or re,im");
  gus->add_option("--z", gus_z, "inner product Z (real)")->required();

  // coherent
  auto* coherent = app.add_subcommand("coherent", "displaced-thermal pipeline");
  std::string co_a0 = "0", co_a1 = "1";
  helstrom::instances::CoherentRun co;
  coherent->add_option("--alpha0", co_a0, "amplitude of state 0 (re or re,im)")->required();
  coherent->add_option("--alpha1", co_a1, "amplitude of state 1 (re or re,im)")->required();
  coherent->add_option("--n-thermal", co.n_thermal, "mean thermal photons")
      ->capture_default_str();
  coherent->add_option("--dim", co.dim, "Fock truncation")->capture_default_str();
  coherent->add_option("--q0", co.q0, "prior of state 0")->capture_default_str();
  coherent->add_option("--rank", co.rank, "factor rank override (0 = by --rank-tol)")
      ->capture_default_str();

  // sweep
  auto* sweep = app.add_subcommand("sweep", "coherent pipeline across a swept parameter");
  std::string sw_a0 = "0", sw_a1 = "1", sw_spec;
  helstrom::instances::CoherentRun sw;
  sweep->add_option("--alpha0", sw_a0, "amplitude of state 0 (re or re,im)");
  sweep->add_option("--alpha1", sw_a1, "amplitude of state 1 (re or re,im)");
  sweep->add_option("--n-thermal", sw.n_thermal, "mean thermal photons")->capture_default_str();
  sweep->add_option("--dim", sw.dim, "Fock truncation")->capture_default_str();
  sweep->add_option("--q0", sw.q0, "prior of state 0")->capture_default_str();
  sweep->add_option("--rank", sw.rank, "factor rank override")->capture_default_str();
  sweep->add_option("--sweep", sw_spec, "param=start:stop:step over alpha0|alpha1|n-thermal|q0")
      ->required();

  // paper-check
  auto* paper = app.add_subcommand(
      "paper-check", "recompute the published worked examples against the built-in table");
  paper->add_option("--data", opt.data_file, "override the embedded reference-value table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints help text or the parse error
    return code == 0 ? 0 : 2;
  }

  if (pure->parsed()) {
    const auto rep = helstrom::report::run_pure(pure_q0, parse_complex(pure_overlap), opt);
    emit(rep.render(opt), opt);
    return 0;
  }
  if (compare->parsed()) {
    helstrom::closedform::ComparisonSpec spec;
    spec.h = cmp_h;
    spec.q0 = cmp_equal_priors ? 1.0 / static_cast<double>(cmp_h + 1) : cmp_q0;
    if (!cmp_overlaps.empty() && cmp_norm2 >= 0.0)
      throw UsageError("give either --overlaps or --norm2, not both");
    if (cmp_norm2 >= 0.0) {
      spec.overlaps = {cdouble{std::sqrt(cmp_norm2), 0.0}};
    } else {
      for (const auto& s : cmp_overlaps) spec.overlaps.push_back(parse_complex(s));
    }
    const auto rep = helstrom::report::run_compare(spec, opt);
    emit(rep.render(opt), opt);
    return 0;
  }
  if (rank2->parsed()) {
    nlohmann::ordered_json j;
    if (rank2_input == "-") {
      j = nlohmann::ordered_json::parse(std::cin);
    } else {
      std::ifstream in(rank2_input);
      if (!in) throw UsageError("cannot open parameter file: " + rank2_input);
      j = nlohmann::ordered_json::parse(in);
    }
    helstrom::closedform::Rank2Parameters rp;
    rp.q0 = j.at("q0").get<double>();
    rp.p_a = j.at("p_a").get<double>();
    rp.p_b = j.at("p_b").get<double>();
    rp.p_c = j.value("p_c", 1.0 - rp.p_a);
    rp.p_d = j.value("p_d", 1.0 - rp.p_b);
    rp.X = json_to_complex(j.at("X"), "X");
    rp.Y = json_to_complex(j.at("Y"), "Y");
    rp.W = json_to_complex(j.at("W"), "W");
    rp.Z = json_to_complex(j.at("Z"), "Z");
    const auto rep = helstrom::report::run_rank2(rp, opt);
    emit(rep.render(opt), opt);
    return 0;
  }
  if (gus->parsed()) {
    const auto gp = helstrom::closedform::GusParameters::make_with_pc(
        gus_pa, gus_pc < 0.0 ? 1.0 - gus_pa : gus_pc, gus_x, parse_complex(gus_y), gus_z);
    const auto rep = helstrom::report::run_gus(gp, opt);
    emit(rep.render(opt), opt);
    return 0;
  }
  if (coherent->parsed()) {
    co.alpha0 = parse_complex(co_a0);
    co.alpha1 = parse_complex(co_a1);
    co.rank_tol = opt.rank_tol;
    const auto rep = helstrom::report::run_coherent(co, opt);
    for (const auto& w : rep.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
    emit(rep.render(opt), opt);
    return 0;
  }
  if (sweep->parsed()) {
    sw.alpha0 = parse_complex(sw_a0);
    sw.alpha1 = parse_complex(sw_a1);
    sw.rank_tol = opt.rank_tol;
    const auto spec = helstrom::report::parse_sweep_spec(sw_spec);
    const auto res = helstrom::report::run_sweep(sw, spec, opt);
    emit(res.render(opt), opt);
    return 0;
  }
  if (paper->parsed()) {
    const auto res = helstrom::report::run_paper_check(opt);
    emit(res.render(opt), opt);
    if (opt.verbose) std::fputs(res.to_table().c_str(), stderr);
    return res.exit_code();
  }
  throw UsageError("no subcommand given");
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const helstrom::Error& e) {
    std::fprintf(stderr, "numeric failure: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}
