/**
 * This code is part of helstrom.
 *
 * (C) Copyright the helstrom contributors 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "helstrom/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "helstrom/error.hpp"

namespace helstrom::report {

namespace {

using closedform::GusParameters;
using closedform::Rank2Parameters;
using detection::DetectionResult;
using detection::GramPair;

std::string format12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

json eigenvalues_json(const std::vector<double>& v) {
  json arr = json::array();
  for (const double x : v) arr.push_back(sig12(x));
  return arr;
}

json method_to_json(const MethodResult& m) {
  json j = json::object();
  j["name"] = m.name;
  j["pc"] = sig12(m.pc);
  j["pe"] = sig12(m.pe);
  j["eigenvalues"] = eigenvalues_json(m.eigenvalues);
  for (const auto& [key, value] : m.extra.items()) j[key] = value;
  return j;
}

MethodResult from_detection(const std::string& name, const DetectionResult& res) {
  MethodResult m;
  m.name = name;
  m.eigenvalues = res.eigenvalues;
  m.pc = res.pc;
  m.pe = res.pe;
  if (!res.spurious_eigenvalues.empty()) {
    m.extra["spurious_eigenvalues"] = eigenvalues_json(res.spurious_eigenvalues);
  }
  return m;
}

void merge_warnings(std::vector<std::string>& into, const std::vector<std::string>& from) {
  into.insert(into.end(), from.begin(), from.end());
}

// Rank-1 overlap read off the Gram blocks; weight-free.
cdouble pure_overlap_from_gram(const GramPair& gp) {
  const double den =
      std::sqrt(gp.g00()(0, 0).real() * gp.g11()(0, 0).real());
  if (den <= 1e-300) return {0.0, 0.0};
  return gp.g01()(0, 0) / den;
}

GusParameters gus_from_rank2(const Rank2Parameters& rp, std::vector<std::string>& warnings) {
  if (std::abs(rp.X.imag()) > 1e-9 || std::abs(rp.Z.imag()) > 1e-9)
    warnings.push_back("block-circulant Gram pair with non-real X or Z");
  const cdouble y = 0.5 * (rp.Y + std::conj(rp.W));
  return GusParameters::make_with_pc(0.5 * (rp.p_a + rp.p_b), 0.5 * (rp.p_c + rp.p_d),
                                     rp.X.real(), y, rp.Z.real());
}

void append_closed_forms(const instances::CoherentPipeline& pipe, double q0,
                         std::vector<MethodResult>& methods,
                         std::vector<std::string>& warnings) {
  const GramPair& gp = pipe.gram;
  if (gp.k0 == 1 && gp.k1 == 1) {
    const cdouble x = pure_overlap_from_gram(gp);
    MethodResult m;
    m.name = "pure_closed_form";
    const auto [plus, minus] = closedform::pure_eigenvalues(q0, x);
    m.eigenvalues = {plus, minus};
    m.pc = closedform::pure_bound(q0, x);
    m.pe = 1.0 - m.pc;
    m.extra["overlap"] = complex_to_json(x);
    methods.push_back(std::move(m));
    return;
  }
  if (gp.k0 != 2 || gp.k1 != 2) return;

  const Rank2Parameters rp = closedform::extract_rank2_parameters(pipe.factors);
  const auto coeffs = closedform::rank2_coefficients(rp);
  const auto roots = linalg::solve_quartic(coeffs);
  const auto possum = closedform::rank2_positive_sum(coeffs);
  if (possum.used_fallback)
    warnings.push_back("positive-root-sum radical fell back to the quartic solver");

  MethodResult quartic;
  quartic.name = "rank2_quartic";
  quartic.eigenvalues.assign(roots.rbegin(), roots.rend());
  double pos = 0.0;
  for (const double eta : roots)
    if (eta > 0.0) pos += eta;
  quartic.pc = q0 + pos;
  quartic.pe = 1.0 - quartic.pc;
  quartic.extra["coefficients"] = {sig12(coeffs.b), sig12(coeffs.c), sig12(coeffs.d),
                                   sig12(coeffs.e)};
  quartic.extra["radical_R"] = sig12(possum.r);
  quartic.extra["radical_S"] = sig12(possum.s);
  quartic.extra["positive_sum"] = sig12(possum.value);
  quartic.extra["parameters"] = {
      {"q0", sig12(rp.q0)},         {"p_a", sig12(rp.p_a)},
      {"p_c", sig12(rp.p_c)},       {"p_b", sig12(rp.p_b)},
      {"p_d", sig12(rp.p_d)},       {"X", complex_to_json(rp.X)},
      {"Y", complex_to_json(rp.Y)}, {"W", complex_to_json(rp.W)},
      {"Z", complex_to_json(rp.Z)}};
  methods.push_back(std::move(quartic));

  if (detection::is_gus(gp, 1e-8)) {
    const GusParameters gus = gus_from_rank2(rp, warnings);
    const auto [h, l] = closedform::gus_hl(gus);
    const auto broots = linalg::solve_biquadratic(h, l);

    MethodResult biquad;
    biquad.name = "gus_biquadratic";
    biquad.eigenvalues.assign(broots.rbegin(), broots.rend());
    biquad.pc = 0.5 + broots[2] + broots[3];
    biquad.pe = 1.0 - biquad.pc;
    biquad.extra["H"] = sig12(h);
    biquad.extra["L"] = sig12(l);
    methods.push_back(std::move(biquad));

    bool clamped = false;
    MethodResult explicit_form;
    explicit_form.name = "gus_explicit";
    explicit_form.pc = closedform::gus_pc(gus, &clamped);
    explicit_form.pe = 1.0 - explicit_form.pc;
    explicit_form.extra["H"] = sig12(h);
    explicit_form.extra["L"] = sig12(l);
    GusParameters y0 = gus;
    y0.Y = cdouble{0.0, 0.0};
    const auto [h0, l0] = closedform::gus_hl(y0);
    explicit_form.extra["H_y0"] = sig12(h0);
    explicit_form.extra["L_y0"] = sig12(l0);
    explicit_form.extra["pc_y0"] = sig12(closedform::gus_pc(y0));
    if (clamped) warnings.push_back("square-root argument clamped to zero");
    methods.push_back(std::move(explicit_form));
  }
}

}  // namespace

double sig12(double x) {
  if (!std::isfinite(x)) throw DomainError("cannot serialize a non-finite number");
  if (x == 0.0) return 0.0;  // normalizes -0
  return std::strtod(format12(x).c_str(), nullptr);
}

json complex_to_json(cdouble z) {
  if (z.imag() == 0.0) return sig12(z.real());
  return json::array({sig12(z.real()), sig12(z.imag())});
}

std::optional<double> RunReport::max_deviation() const {
  if (methods.size() < 2) return std::nullopt;
  double dev = 0.0;
  for (std::size_t i = 0; i < methods.size(); ++i)
    for (std::size_t j = i + 1; j < methods.size(); ++j)
      dev = std::max(dev, std::abs(methods[i].pc - methods[j].pc));
  return dev;
}

json RunReport::to_json() const {
  json j = json::object();
  j["schema_version"] = 1;
  j["command"] = command;
  j["input"] = input;
  j["methods"] = json::array();
  for (const auto& m : methods) j["methods"].push_back(method_to_json(m));
  if (const auto dev = max_deviation()) j["cross_method_max_deviation"] = sig12(*dev);
  j["warnings"] = warnings;
  return j;
}

std::string RunReport::to_csv() const {
  std::ostringstream os;
  os << "command,method,pc,pe,cross_method_max_deviation,warnings\n";
  const auto dev = max_deviation();
  std::string joined;
  for (const auto& w : warnings) {
    if (!joined.empty()) joined += "; ";
    joined += w;
  }
  for (const auto& m : methods) {
    os << command << ',' << m.name << ',' << format12(sig12(m.pc)) << ','
       << format12(sig12(m.pe)) << ',' << (dev ? format12(sig12(*dev)) : "") << ",\""
       << joined << "\"\n";
  }
  return os.str();
}

std::string RunReport::render(const Options& opt) const {
  if (opt.format == "csv") return to_csv();
  return to_json().dump(2) + "\n";
}

RunReport run_pure(double q0, cdouble overlap, const Options& opt) {
  (void)opt;
  RunReport rep;
  rep.command = "pure";
  rep.input["q0"] = sig12(q0);
  rep.input["overlap"] = complex_to_json(overlap);

  MethodResult closed;
  closed.name = "pure_closed_form";
  const auto [plus, minus] = closedform::pure_eigenvalues(q0, overlap);
  closed.eigenvalues = {plus, minus};
  closed.pc = closedform::pure_bound(q0, overlap);
  closed.pe = 1.0 - closed.pc;
  rep.methods.push_back(std::move(closed));

  const auto inst = instances::make_pure(q0, overlap);
  const auto gp = detection::build_gram_pair(inst.factors);
  rep.methods.push_back(from_detection("sgm", detection::sgm_solve(gp, q0)));
  rep.methods.push_back(from_detection("helstrom", detection::helstrom_solve(inst.ensemble)));
  return rep;
}

RunReport run_compare(const closedform::ComparisonSpec& spec, const Options& opt) {
  (void)opt;
  spec.validate();
  RunReport rep;
  rep.command = "compare";
  rep.input["q0"] = sig12(spec.q0);
  rep.input["h"] = spec.h;
  json overlaps = json::array();
  for (const auto& x : spec.overlaps) overlaps.push_back(complex_to_json(x));
  rep.input["overlaps"] = overlaps;

  MethodResult closed;
  closed.name = "comparison_closed_form";
  closed.eigenvalues = closedform::comparison_eigenvalues(spec);
  closed.pc = closedform::comparison_pc(spec);
  closed.pe = 1.0 - closed.pc;
  closed.extra["overlap_norm2"] = sig12(spec.norm2());
  rep.methods.push_back(std::move(closed));

  const auto inst = instances::make_comparison(spec);
  const auto gp = detection::build_gram_pair(inst.factors);
  rep.methods.push_back(from_detection("sgm", detection::sgm_solve(gp, spec.q0)));
  rep.methods.push_back(from_detection("helstrom", detection::helstrom_solve(inst.ensemble)));
  return rep;
}

RunReport run_rank2(const closedform::Rank2Parameters& rp, const Options& opt) {
  (void)opt;
  rp.validate();
  RunReport rep;
  rep.command = "rank2";
  rep.input = {{"q0", sig12(rp.q0)},         {"p_a", sig12(rp.p_a)},
               {"p_c", sig12(rp.p_c)},       {"p_b", sig12(rp.p_b)},
               {"p_d", sig12(rp.p_d)},       {"X", complex_to_json(rp.X)},
               {"Y", complex_to_json(rp.Y)}, {"W", complex_to_json(rp.W)},
               {"Z", complex_to_json(rp.Z)}};
  if (std::abs(rp.p_a + rp.p_c - 1.0) > 1e-9 || std::abs(rp.p_b + rp.p_d - 1.0) > 1e-9)
    rep.warnings.push_back("weights do not sum to 1; the oracle instance uses complements");

  const auto coeffs = closedform::rank2_coefficients(rp);
  const auto roots = linalg::solve_quartic(coeffs);
  const auto possum = closedform::rank2_positive_sum(coeffs);
  if (possum.used_fallback)
    rep.warnings.push_back("positive-root-sum radical fell back to the quartic solver");

  MethodResult quartic;
  quartic.name = "rank2_quartic";
  quartic.eigenvalues.assign(roots.rbegin(), roots.rend());
  quartic.pc = rp.q0 + possum.value;
  quartic.pe = 1.0 - quartic.pc;
  quartic.extra["coefficients"] = {sig12(coeffs.b), sig12(coeffs.c), sig12(coeffs.d),
                                   sig12(coeffs.e)};
  quartic.extra["radical_R"] = sig12(possum.r);
  quartic.extra["radical_S"] = sig12(possum.s);
  rep.methods.push_back(std::move(quartic));

  const auto inst = instances::make_rank2(rp);
  const auto gp = detection::build_gram_pair(inst.factors);
  rep.methods.push_back(from_detection("sgm", detection::sgm_solve(gp, rp.q0)));
  rep.methods.push_back(from_detection("helstrom", detection::helstrom_solve(inst.ensemble)));
  return rep;
}

RunReport run_gus(const closedform::GusParameters& gp, const Options& opt) {
  (void)opt;
  gp.validate();
  RunReport rep;
  rep.command = "gus";
  rep.input = {{"p_a", sig12(gp.p_a)},
               {"p_c", sig12(gp.p_c)},
               {"X", sig12(gp.X)},
               {"Y", complex_to_json(gp.Y)},
               {"Z", sig12(gp.Z)}};
  if (std::abs(gp.p_a + gp.p_c - 1.0) > 1e-9)
    rep.warnings.push_back("weights do not sum to 1; the oracle instance uses complements");

  const auto [h, l] = closedform::gus_hl(gp);
  const auto broots = linalg::solve_biquadratic(h, l);
  MethodResult biquad;
  biquad.name = "gus_biquadratic";
  biquad.eigenvalues.assign(broots.rbegin(), broots.rend());
  biquad.pc = 0.5 + broots[2] + broots[3];
  biquad.pe = 1.0 - biquad.pc;
  biquad.extra["H"] = sig12(h);
  biquad.extra["L"] = sig12(l);
  rep.methods.push_back(std::move(biquad));

  bool clamped = false;
  MethodResult explicit_form;
  explicit_form.name = "gus_explicit";
  explicit_form.pc = closedform::gus_pc(gp, &clamped);
  explicit_form.pe = 1.0 - explicit_form.pc;
  if (clamped) rep.warnings.push_back("square-root argument clamped to zero");
  rep.methods.push_back(std::move(explicit_form));

  const auto inst = instances::make_gus(gp);
  const auto pair = detection::build_gram_pair(inst.factors);
  rep.methods.push_back(from_detection("sgm", detection::sgm_solve(pair, 0.5)));
  rep.methods.push_back(from_detection("helstrom", detection::helstrom_solve(inst.ensemble)));
  return rep;
}

RunReport run_coherent(const instances::CoherentRun& run, const Options& opt) {
  instances::CoherentRun r = run;
  r.rank_tol = opt.rank_tol;
  const auto pipe = instances::make_coherent(r);

  RunReport rep;
  rep.command = "coherent";
  rep.input = {{"alpha0", complex_to_json(r.alpha0)},
               {"alpha1", complex_to_json(r.alpha1)},
               {"n_thermal", sig12(r.n_thermal)},
               {"dim", r.dim},
               {"q0", sig12(r.q0)},
               {"rank", r.rank},
               {"rank_tol", sig12(r.rank_tol)}};
  merge_warnings(rep.warnings, pipe.warnings);

  auto sgm = detection::sgm_solve(pipe.gram, r.q0);
  merge_warnings(rep.warnings, sgm.warnings);
  const auto audit = detection::verify_measurement(sgm, pipe.factored_ensemble);
  MethodResult sgm_method = from_detection("sgm", sgm);
  sgm_method.extra["measurement_audit_max_deviation"] = sig12(audit.max_deviation);
  rep.methods.push_back(std::move(sgm_method));

  const auto hel = detection::helstrom_solve(pipe.factored_ensemble);
  rep.methods.push_back(from_detection("helstrom", hel));

  append_closed_forms(pipe, r.q0, rep.methods, rep.warnings);
  return rep;
}

SweepSpec parse_sweep_spec(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw UsageError("sweep spec must look like param=start:stop:step");
  SweepSpec spec;
  spec.parameter = text.substr(0, eq);
  const std::string rest = text.substr(eq + 1);
  const auto c1 = rest.find(':');
  const auto c2 = rest.find(':', c1 == std::string::npos ? c1 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw UsageError("sweep spec must look like param=start:stop:step");
  try {
    spec.start = std::stod(rest.substr(0, c1));
    spec.stop = std::stod(rest.substr(c1 + 1, c2 - c1 - 1));
    spec.step = std::stod(rest.substr(c2 + 1));
  } catch (const std::exception&) {
    throw UsageError("sweep bounds must be numbers");
  }
  if (spec.step <= 0.0 || spec.stop < spec.start) throw UsageError("sweep range is empty");
  static const char* allowed[] = {"alpha0", "alpha1", "n-thermal", "q0"};
  if (std::find_if(std::begin(allowed), std::end(allowed), [&spec](const char* a) {
        return spec.parameter == a;
      }) == std::end(allowed))
    throw UsageError("sweep parameter must be one of alpha0, alpha1, n-thermal, q0");
  return spec;
}

SweepResult run_sweep(const instances::CoherentRun& base, const SweepSpec& spec,
                      const Options& opt) {
  SweepResult out;
  out.parameter = spec.parameter;
  out.input = {{"alpha0", complex_to_json(base.alpha0)},
               {"alpha1", complex_to_json(base.alpha1)},
               {"n_thermal", sig12(base.n_thermal)},
               {"dim", base.dim},
               {"q0", sig12(base.q0)},
               {"rank", base.rank},
               {"sweep", spec.parameter + "=" + format12(spec.start) + ":" +
                             format12(spec.stop) + ":" + format12(spec.step)}};

  for (double v = spec.start; v <= spec.stop + spec.step * 0.5; v += spec.step) {
    instances::CoherentRun run = base;
    if (spec.parameter == "alpha0") run.alpha0 = cdouble{v, 0.0};
    else if (spec.parameter == "alpha1") run.alpha1 = cdouble{v, 0.0};
    else if (spec.parameter == "n-thermal") run.n_thermal = v;
    else run.q0 = v;

    json point = json::object();
    point["value"] = sig12(v);
    const RunReport rep = run_coherent(run, opt);
    double pc_sgm = 0.0, pe_sgm = 0.0, pc_hel = 0.0;
    for (const auto& m : rep.methods) {
      if (m.name == "sgm") {
        pc_sgm = m.pc;
        pe_sgm = m.pe;
      } else if (m.name == "helstrom") {
        pc_hel = m.pc;
      }
    }
    point["pc_sgm"] = sig12(pc_sgm);
    point["pe_sgm"] = sig12(pe_sgm);
    point["pc_helstrom"] = sig12(pc_hel);
    if (const auto dev = rep.max_deviation()) point["cross_method_max_deviation"] = sig12(*dev);
    point["warnings"] = rep.warnings;
    out.points.push_back(std::move(point));
  }
  return out;
}

json SweepResult::to_json() const {
  json j = json::object();
  j["schema_version"] = 1;
  j["command"] = "sweep";
  j["parameter"] = parameter;
  j["input"] = input;
  j["points"] = points;
  return j;
}

std::string SweepResult::to_csv() const {
  std::ostringstream os;
  os << "parameter,value,pc_sgm,pe_sgm,pc_helstrom,cross_method_max_deviation,warnings\n";
  for (const auto& p : points) {
    std::string joined;
    for (const auto& w : p["warnings"]) {
      if (!joined.empty()) joined += "; ";
      joined += w.get<std::string>();
    }
    os << parameter << ',' << format12(p["value"].get<double>()) << ','
       << format12(p["pc_sgm"].get<double>()) << ',' << format12(p["pe_sgm"].get<double>())
       << ',' << format12(p["pc_helstrom"].get<double>()) << ',';
    if (p.contains("cross_method_max_deviation"))
      os << format12(p["cross_method_max_deviation"].get<double>());
    os << ",\"" << joined << "\"\n";
  }
  return os.str();
}

std::string SweepResult::render(const Options& opt) const {
  if (opt.format == "csv") return to_csv();
  return to_json().dump(2) + "\n";
}

}  // namespace helstrom::report
