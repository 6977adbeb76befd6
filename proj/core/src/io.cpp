#include "subplanck/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "subplanck/error.hpp"

namespace subplanck {
namespace {

template <typename T>
T get_as(const Json& j, std::string_view field) {
  try {
    return j.get<T>();
  } catch (const Json::exception& e) {
    fail(ErrorKind::validation, "field '" + std::string(field) + "': " + e.what());
  }
}

Json range_to_json(const Range& r) { return {{"min", r.min}, {"max", r.max}, {"step", r.step}}; }

Range range_from_json(const Json& j, Range base, std::string_view what) {
  if (!j.is_object()) fail(ErrorKind::validation, std::string(what) + " must be an object");
  require_known_keys(j, {"min", "max", "step"}, what);
  if (j.contains("min")) base.min = get_as<double>(j["min"], "min");
  if (j.contains("max")) base.max = get_as<double>(j["max"], "max");
  if (j.contains("step")) base.step = get_as<double>(j["step"], "step");
  return base;
}

}  // namespace

void require_known_keys(const Json& j, std::initializer_list<std::string_view> allowed,
                        std::string_view what) {
  if (!j.is_object()) fail(ErrorKind::validation, std::string(what) + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      fail(ErrorKind::validation, "unknown key '" + key + "' in " + std::string(what));
    }
  }
}

Json complex_to_json(Complex z) {
  if (z.imag() == 0.0) return z.real();
  return Json::array({z.real(), z.imag()});
}

Complex complex_from_json(const Json& j, std::string_view field) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  fail(ErrorKind::validation, "field '" + std::string(field) + "' must be a number or [re, im]");
}

Json to_json(const FockVector& psi) {
  Json re = Json::array(), im = Json::array();
  for (const auto& z : psi.amplitudes()) {
    re.push_back(z.real());
    im.push_back(z.imag());
  }
  return {{"cutoff", psi.cutoff()}, {"re", re}, {"im", im}, {"tail_mass", psi.tail_mass()}};
}

FockVector fock_vector_from_json(const Json& j) {
  require_known_keys(j, {"cutoff", "re", "im", "tail_mass"}, "FockVector");
  if (!j.contains("re") || !j.contains("im")) fail(ErrorKind::validation, "FockVector needs re and im");
  const auto re = get_as<std::vector<double>>(j["re"], "re");
  const auto im = get_as<std::vector<double>>(j["im"], "im");
  if (re.size() != im.size()) fail(ErrorKind::dimension, "FockVector: re/im length mismatch");
  if (j.contains("cutoff") && get_as<int>(j["cutoff"], "cutoff") + 1 != static_cast<int>(re.size())) {
    fail(ErrorKind::dimension, "FockVector: cutoff does not match amplitude count");
  }
  std::vector<Complex> a(re.size());
  for (std::size_t k = 0; k < a.size(); ++k) a[k] = {re[k], im[k]};
  return FockVector(std::move(a));
}

Json to_json(const StateSpec& s) {
  return {{"family", std::string(to_string(s.family))},
          {"alpha", complex_to_json(s.alpha)},
          {"beta", complex_to_json(s.beta)},
          {"r", s.r},
          {"phi", s.phi},
          {"l", s.l},
          {"n_add", s.n_add},
          {"n_sub", s.n_sub}};
}

StateSpec state_spec_from_json(const Json& j) {
  require_known_keys(j, {"family", "alpha", "beta", "r", "phi", "l", "n_add", "n_sub"}, "StateSpec");
  if (!j.contains("family")) fail(ErrorKind::validation, "StateSpec needs a family");
  const auto name = get_as<std::string>(j["family"], "family");
  const auto fam = family_from_string(name);
  if (!fam) fail(ErrorKind::validation, "unknown family '" + name + "'");
  StateSpec s;
  s.family = *fam;
  if (j.contains("alpha")) s.alpha = complex_from_json(j["alpha"], "alpha");
  if (j.contains("beta")) s.beta = complex_from_json(j["beta"], "beta");
  if (j.contains("r")) s.r = get_as<double>(j["r"], "r");
  if (j.contains("phi")) s.phi = get_as<double>(j["phi"], "phi");
  if (j.contains("l")) s.l = get_as<int>(j["l"], "l");
  if (j.contains("n_add")) s.n_add = get_as<int>(j["n_add"], "n_add");
  if (j.contains("n_sub")) s.n_sub = get_as<int>(j["n_sub"], "n_sub");
  s.validate();
  return s;
}

Json to_json(const MetricReport& r) {
  Json j = {{"convention", std::string(to_string(r.convention))},
            {"theta", r.theta},
            {"qfi", r.qfi},
            {"qfi_var_g", r.qfi_var_g},
            {"qfi_x4", r.qfi_var_g},
            {"mean_n", r.mean_n},
            {"var_n", r.var_n},
            {"parity", r.parity},
            {"cutoff", r.cutoff},
            {"tail_mass", r.tail_mass}};
  j["fidelity"] = r.fidelity ? Json(*r.fidelity) : Json(nullptr);
  return j;
}

Json to_json(const FringeReport& r) {
  Json dirs = Json::array();
  for (const auto& d : r.lambda_zero) {
    dirs.push_back({{"theta", d.theta}, {"radius", d.radius}, {"found", d.found}});
  }
  return {{"source", std::string(to_string(r.source))},
          {"cfa", r.cfa},
          {"zero_fraction", r.zero_fraction},
          {"search_radius", r.search_radius},
          {"evaluated_directions", r.evaluated_directions},
          {"lambda_zero", dirs}};
}

Json to_json(const GridSpec& g) {
  return {{"x_min", g.x_min}, {"x_max", g.x_max}, {"p_min", g.p_min},
          {"p_max", g.p_max}, {"nx", g.nx},       {"np", g.np}};
}

GridSpec grid_spec_from_json(const Json& j, GridSpec g) {
  require_known_keys(j, {"x_min", "x_max", "p_min", "p_max", "nx", "np"}, "grid");
  if (j.contains("x_min")) g.x_min = get_as<double>(j["x_min"], "x_min");
  if (j.contains("x_max")) g.x_max = get_as<double>(j["x_max"], "x_max");
  if (j.contains("p_min")) g.p_min = get_as<double>(j["p_min"], "p_min");
  if (j.contains("p_max")) g.p_max = get_as<double>(j["p_max"], "p_max");
  if (j.contains("nx")) g.nx = get_as<int>(j["nx"], "nx");
  if (j.contains("np")) g.np = get_as<int>(j["np"], "np");
  g.validate();
  return g;
}

Json to_json(const LocusConfig& c) {
  return {{"pair", std::string(to_string(c.pair.label))},
          {"source_l", c.pair.source_l},
          {"n_values", c.n_values},
          {"r", range_to_json(c.r)},
          {"alpha", range_to_json(c.alpha)},
          {"beta_min", c.beta_min},
          {"beta_max", c.beta_max},
          {"panels", c.panels},
          {"theta_policy", std::string(to_string(c.theta.kind))},
          {"theta", c.theta.theta},
          {"theta_grid", c.theta.grid},
          {"convention", std::string(to_string(c.convention))},
          {"beta_phase", Json::array({c.beta_phase.real(), c.beta_phase.imag()})},
          {"tail_tolerance", c.tail_tolerance},
          {"relative_tolerance", c.relative_tolerance}};
}

LocusConfig locus_config_from_json(const Json& j, LocusConfig c) {
  require_known_keys(j,
                     {"pair", "source_l", "n_values", "r", "alpha", "beta_min", "beta_max", "panels",
                      "theta_policy", "theta", "theta_grid", "convention", "beta_phase",
                      "tail_tolerance", "relative_tolerance"},
                     "locus config");
  if (j.contains("pair")) {
    const auto name = get_as<std::string>(j["pair"], "pair");
    const auto label = pair_from_string(name);
    if (!label) fail(ErrorKind::validation, "unknown pair '" + name + "'");
    if (*label != c.pair.label) {
      // switching pairs resets pair-dependent defaults before the other keys apply
      const LocusConfig d = LocusConfig::defaults(*label);
      c.pair.label = *label;
      c.beta_phase = d.beta_phase;
      c.theta = d.theta;
    }
  }
  if (j.contains("source_l")) c.pair.source_l = get_as<int>(j["source_l"], "source_l");
  if (j.contains("n_values")) c.n_values = get_as<std::vector<int>>(j["n_values"], "n_values");
  if (j.contains("r")) c.r = range_from_json(j["r"], c.r, "r");
  if (j.contains("alpha")) c.alpha = range_from_json(j["alpha"], c.alpha, "alpha");
  if (j.contains("beta_min")) c.beta_min = get_as<double>(j["beta_min"], "beta_min");
  if (j.contains("beta_max")) c.beta_max = get_as<double>(j["beta_max"], "beta_max");
  if (j.contains("panels")) c.panels = get_as<int>(j["panels"], "panels");
  if (j.contains("theta_policy")) {
    const auto name = get_as<std::string>(j["theta_policy"], "theta_policy");
    const auto k = theta_policy_from_string(name);
    if (!k) fail(ErrorKind::validation, "unknown theta policy '" + name + "'");
    c.theta.kind = *k;
  }
  if (j.contains("theta")) c.theta.theta = get_as<double>(j["theta"], "theta");
  if (j.contains("theta_grid")) c.theta.grid = get_as<std::vector<double>>(j["theta_grid"], "theta_grid");
  if (j.contains("convention")) {
    const auto name = get_as<std::string>(j["convention"], "convention");
    const auto conv = convention_from_string(name);
    if (!conv) fail(ErrorKind::validation, "unknown convention '" + name + "'");
    c.convention = *conv;
  }
  if (j.contains("beta_phase")) c.beta_phase = complex_from_json(j["beta_phase"], "beta_phase");
  if (j.contains("tail_tolerance")) c.tail_tolerance = get_as<double>(j["tail_tolerance"], "tail_tolerance");
  if (j.contains("relative_tolerance")) {
    c.relative_tolerance = get_as<double>(j["relative_tolerance"], "relative_tolerance");
  }
  c.validate();
  return c;
}

Json to_json(const LocusPoint& p) {
  Json j = {{"n", p.n},
            {"r", p.r},
            {"alpha", p.alpha},
            {"theta", p.theta},
            {"beta", p.beta},
            {"fq", p.fq},
            {"fq_target", p.fq_target},
            {"residual", p.residual},
            {"root_index", p.root_index},
            {"root_count", p.root_count},
            {"target_l", p.target_l}};
  if (p.swept) {
    j["fidelity"] = std::isnan(p.fidelity) ? Json(nullptr) : Json(p.fidelity);
    j["mean_n_proposed"] = p.mean_n_proposed;
    j["mean_n_target"] = p.mean_n_target;
    j["cutoff"] = p.cutoff;
    j["flagged"] = p.flagged;
    if (!p.note.empty()) j["note"] = p.note;
  }
  return j;
}

Json to_json(const OracleReport& r, bool include_samples) {
  Json printed = Json::array();
  for (const auto& p : r.printed) {
    printed.push_back({{"n", p.params.n},
                       {"m", p.params.m},
                       {"r1", p.params.r1},
                       {"r2", p.params.r2},
                       {"alpha", complex_to_json(p.params.alpha)},
                       {"beta", complex_to_json(p.params.beta)},
                       {"derived", complex_to_json(p.derived)},
                       {"printed", complex_to_json(p.printed)},
                       {"fock", complex_to_json(p.fock)},
                       {"deviation", p.deviation}});
  }
  Json j = {{"seed", r.seed},
            {"samples", r.samples.size()},
            {"tolerance", r.tolerance},
            {"max_deviation", r.max_deviation},
            {"mean_deviation", r.mean_deviation},
            {"max_qfi_deviation", r.max_qfi_deviation},
            {"failures", r.failures},
            {"hermiticity_failures", r.hermiticity_failures},
            {"printed_formula", {{"checked", r.printed.size()},
                                 {"mismatches", r.printed_mismatches},
                                 {"items", printed}}},
            {"pass", r.pass}};
  if (include_samples) {
    Json s = Json::array();
    for (const auto& x : r.samples) {
      s.push_back({{"spec", to_json(x.spec)},
                   {"n", x.n},
                   {"m", x.m},
                   {"theta", x.theta},
                   {"closed", complex_to_json(x.closed)},
                   {"fock", complex_to_json(x.fock)},
                   {"deviation", x.deviation},
                   {"qfi_closed", x.qfi_closed},
                   {"qfi_fock", x.qfi_fock},
                   {"qfi_deviation", x.qfi_deviation},
                   {"qfi_degenerate", x.qfi_degenerate}});
    }
    j["sample_details"] = s;
  }
  return j;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string grid_csv(const PhaseGrid& g) {
  std::string out = "x,p,value\n";
  for (int j = 0; j < g.spec.np; ++j) {
    for (int i = 0; i < g.spec.nx; ++i) {
      out += format_double(g.spec.x(i));
      out += ',';
      out += format_double(g.spec.p(j));
      out += ',';
      out += format_double(g.at(i, j));
      out += '\n';
    }
  }
  return out;
}

void write_text(const std::filesystem::path& path, std::string_view content) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrorKind::io, "cannot open " + path.string() + " for writing");
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!f) fail(ErrorKind::io, "write failed for " + path.string());
}

Json read_json(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) fail(ErrorKind::io, "cannot open " + path.string());
  try {
    return Json::parse(f);
  } catch (const Json::parse_error& e) {
    fail(ErrorKind::validation, path.string() + ": " + e.what());
  }
}

std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace subplanck
