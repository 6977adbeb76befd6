#include "commands.hpp"

#include <cmath>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>

#include "subplanck/error.hpp"
#include "subplanck/figures.hpp"
#include "subplanck/loci.hpp"
#include "subplanck/metrics.hpp"
#include "subplanck/oracle.hpp"
#include "subplanck/phase_space.hpp"
#include "subplanck/state.hpp"

namespace fs = std::filesystem;

namespace subplanck::cli {
namespace {

template <typename T>
T value_or(const Json& cfg, const char* key, T fallback) {
  if (!cfg.contains(key) || cfg[key].is_null()) return fallback;
  try {
    return cfg[key].get<T>();
  } catch (const Json::exception& e) {
    fail(ErrorKind::validation, std::string("config key '") + key + "': " + e.what());
  }
}

bool allow_flagged(const Json& cfg) { return value_or(cfg, "allow_flagged", false); }

double eps(const Json& cfg) { return value_or(cfg, "eps", kDefaultTailTolerance); }

// Tolerance handed to metric operations: flagged inputs pass only when allowed.
double metric_tolerance(const Json& cfg) { return allow_flagged(cfg) ? 1.0 : eps(cfg); }

QfiConvention convention(const Json& cfg) {
  const auto name = value_or<std::string>(cfg, "convention", "appendix");
  const auto c = convention_from_string(name);
  if (!c) fail(ErrorKind::validation, "unknown convention '" + name + "'");
  return *c;
}

std::optional<fs::path> out_dir(const Json& cfg) {
  if (!cfg.contains("out") || cfg["out"].is_null()) return std::nullopt;
  return fs::path(value_or<std::string>(cfg, "out", "."));
}

StateSpec spec_from(const Json& cfg, const char* key = "state") {
  if (!cfg.contains(key)) fail(ErrorKind::validation, std::string("missing '") + key + "' (state spec)");
  return state_spec_from_json(cfg[key]);
}

FockVector state_from(const Json& cfg, const StateSpec& spec) {
  if (cfg.contains("cutoff") && !cfg["cutoff"].is_null()) {
    FockVector psi = build_state(spec, value_or(cfg, "cutoff", 0));
    if (psi.flagged(eps(cfg)) && !allow_flagged(cfg)) {
      fail(ErrorKind::truncation, "state is flagged at the requested cutoff (tail mass " +
                                      format_double(psi.tail_mass()) + ")");
    }
    return psi;
  }
  return make_state(spec, eps(cfg));
}

void print(const Json& j) { std::cout << j.dump(2) << '\n'; }

Json with_config(Json j, const Json& cfg) {
  j["config"] = cfg;
  j["config_hash"] = fnv1a_hex(cfg.dump());
  return j;
}

GridSpec grid_from(const Json& cfg, const FockVector& psi) {
  GridSpec g = auto_grid(psi, value_or(cfg, "samples", 101));
  if (cfg.contains("extent")) {
    const double h = value_or(cfg, "extent", 0.0);
    g.x_min = g.p_min = -h;
    g.x_max = g.p_max = h;
  }
  if (cfg.contains("grid")) g = grid_spec_from_json(cfg["grid"], g);
  g.validate();
  return g;
}

ZeroSearch zero_search(const Json& cfg) {
  ZeroSearch z;
  z.search_radius = value_or(cfg, "search_radius", z.search_radius);
  const auto src = value_or<std::string>(cfg, "cfa_source", "overlap");
  const auto s = fringe_source_from_string(src);
  if (!s) fail(ErrorKind::validation, "unknown cfa source '" + src + "'");
  z.source = *s;
  return z;
}

LocusConfig locus_from(const Json& cfg) {
  if (!cfg.contains("locus") || !cfg["locus"].contains("pair")) {
    fail(ErrorKind::validation, "locus configuration needs a pair");
  }
  const auto name = cfg["locus"]["pair"].get<std::string>();
  const auto label = pair_from_string(name);
  if (!label) fail(ErrorKind::validation, "unknown pair '" + name + "'");
  LocusConfig base = LocusConfig::defaults(*label);
  base.convention = convention(cfg);
  base.tail_tolerance = eps(cfg);
  Json overlay = cfg["locus"];
  if (!overlay.contains("convention")) overlay["convention"] = std::string(to_string(base.convention));
  return locus_config_from_json(overlay, base);
}

Json locus_summary(const std::vector<LocusPoint>& pts, std::size_t omitted) {
  double max_residual = 0.0;
  int flagged = 0;
  for (const auto& p : pts) {
    max_residual = std::max(max_residual, p.residual / std::max(1.0, p.fq));
    flagged += p.flagged ? 1 : 0;
  }
  return {{"points", pts.size()},
          {"omitted", omitted},
          {"flagged", flagged},
          {"max_relative_residual", max_residual}};
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "state",      "state_b",     "pair_point",   "grid",        "extent",      "samples",
      "locus",      "fringe_states", "n_add_values", "theta",     "theta_points", "lambda",
      "direction",  "first_zero",  "directions",   "min_zero_fraction", "search_radius",
      "cfa_source", "seed",        "oracle_samples", "convention", "allow_flagged", "eps",
      "cutoff",     "figure",      "out"};
  return keys;
}

void validate_config(const Json& cfg) {
  if (!cfg.is_object()) fail(ErrorKind::validation, "configuration must be a JSON object");
  for (const auto& [key, value] : cfg.items()) {
    const auto& keys = config_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      fail(ErrorKind::validation, "unknown configuration key '" + key + "'");
    }
  }
}

std::vector<int> parse_int_list(const std::string& text) {
  auto to_int = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      fail(ErrorKind::validation, "not an integer list: '" + text + "'");
    }
  };
  std::vector<int> out;
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const int a = to_int(text.substr(0, dots)), b = to_int(text.substr(dots + 2));
    if (b < a) fail(ErrorKind::validation, "empty range '" + text + "'");
    for (int k = a; k <= b; ++k) out.push_back(k);
    return out;
  }
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    out.push_back(to_int(text.substr(start, comma == std::string::npos ? std::string::npos
                                                                       : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

int run_state(const Json& cfg) {
  const StateSpec spec = spec_from(cfg);
  const FockVector psi = state_from(cfg, spec);
  const double theta = value_or(cfg, "theta", 0.0);
  const MetricReport rep = make_report(psi, theta, convention(cfg), metric_tolerance(cfg));
  Json summary = {{"command", "state"},
                  {"spec", to_json(spec)},
                  {"cutoff", psi.cutoff()},
                  {"tail_mass", psi.tail_mass()},
                  {"eps", eps(cfg)},
                  {"flagged", psi.flagged(eps(cfg))},
                  {"metrics", to_json(rep)}};
  if (auto dir = out_dir(cfg)) {
    Json file = with_config(summary, cfg);
    file["state"] = to_json(psi);
    write_text(*dir / "state.json", file.dump(2) + "\n");
  }
  print(summary);
  return Exit::ok;
}

int run_wigner(const Json& cfg) {
  const StateSpec spec = spec_from(cfg);
  const FockVector psi = state_from(cfg, spec);
  const GridSpec grid = grid_from(cfg, psi);
  const PhaseGrid w = wigner(psi, grid, metric_tolerance(cfg));
  Json header = {{"command", "wigner"},
                 {"grid", to_json(grid)},
                 {"spec", to_json(spec)},
                 {"cutoff", psi.cutoff()},
                 {"convention", std::string(to_string(convention(cfg)))},
                 {"warnings", w.warnings},
                 {"origin", wigner_at(psi, 0.0, metric_tolerance(cfg))}};
  if (auto dir = out_dir(cfg)) {
    write_text(*dir / "wigner.csv", grid_csv(w));
    write_text(*dir / "wigner.json", with_config(header, cfg).dump(2) + "\n");
  }
  for (const auto& msg : w.warnings) std::cerr << "warning: " << msg << '\n';
  print(header);
  return Exit::ok;
}

int run_overlap(const Json& cfg) {
  const StateSpec spec = spec_from(cfg);
  const FockVector psi = state_from(cfg, spec);
  const double tol = metric_tolerance(cfg);
  Json out = {{"command", "overlap"}, {"spec", to_json(spec)}, {"cutoff", psi.cutoff()}};

  if (value_or(cfg, "first_zero", false)) {
    const double dir = value_or(cfg, "direction", std::numbers::pi / 2.0);
    ZeroSearch z = zero_search(cfg);
    z.source = FringeSource::overlap;
    const auto r = first_zero(psi, dir, z, tol);
    out["direction"] = dir;
    out["found"] = r.has_value();
    out["first_zero"] = r ? Json(*r) : Json(nullptr);
    out["search_radius"] = z.search_radius;
  } else if (cfg.contains("lambda")) {
    const Complex lambda = complex_from_json(cfg["lambda"], "lambda");
    out["lambda"] = complex_to_json(lambda);
    out["overlap"] = overlap_field(psi, lambda, tol);
  } else {
    const GridSpec grid = grid_from(cfg, psi);
    const PhaseGrid g = overlap_grid(psi, grid, tol);
    out["grid"] = to_json(grid);
    if (auto dir = out_dir(cfg)) {
      write_text(*dir / "overlap.csv", grid_csv(g));
      write_text(*dir / "overlap.json", with_config(out, cfg).dump(2) + "\n");
    }
  }
  if (auto dir = out_dir(cfg); dir && !out.contains("grid")) {
    write_text(*dir / "overlap.json", with_config(out, cfg).dump(2) + "\n");
  }
  print(out);
  return Exit::ok;
}

int run_cfa(const Json& cfg) {
  const StateSpec base = spec_from(cfg);
  std::vector<int> ns{base.n_add};
  if (cfg.contains("n_add_values")) ns = cfg["n_add_values"].get<std::vector<int>>();
  FringeOptions opts;
  opts.n_directions = value_or(cfg, "directions", opts.n_directions);
  opts.min_zero_fraction = value_or(cfg, "min_zero_fraction", opts.min_zero_fraction);
  opts.search = zero_search(cfg);

  Json rows = Json::array(), reports = Json::array();
  for (int n : ns) {
    const StateSpec spec = base.with_added(n);
    const FockVector psi = state_from(cfg, spec);
    const FringeReport rep = central_fringe_area(psi, opts, metric_tolerance(cfg));
    rows.push_back({{"n_add", n}, {"cfa", rep.cfa}, {"zero_fraction", rep.zero_fraction},
                    {"cutoff", psi.cutoff()}});
    Json full = to_json(rep);
    full["spec"] = to_json(spec);
    reports.push_back(full);
  }
  Json out = {{"command", "cfa"},
              {"source", std::string(to_string(opts.search.source))},
              {"n_directions", opts.n_directions},
              {"rows", rows}};
  if (auto dir = out_dir(cfg)) {
    Json file = with_config(out, cfg);
    file["reports"] = reports;
    write_text(*dir / "cfa.json", file.dump(2) + "\n");
  }
  print(out);
  return Exit::ok;
}

int run_qfi(const Json& cfg) {
  const StateSpec spec = spec_from(cfg);
  const FockVector psi = state_from(cfg, spec);
  const QfiConvention conv = convention(cfg);
  std::vector<double> thetas{value_or(cfg, "theta", 0.0)};
  if (cfg.contains("theta_points")) {
    const int k = value_or(cfg, "theta_points", 1);
    if (k < 1) fail(ErrorKind::validation, "theta_points must be >= 1");
    thetas.clear();
    for (int i = 0; i < k; ++i) thetas.push_back(2.0 * std::numbers::pi * i / k);
  }
  Json rows = Json::array();
  for (double t : thetas) {
    const double var = generator_variance(psi, t, metric_tolerance(cfg));
    rows.push_back({{"theta", t}, {"qfi", convention_factor(conv) * var}, {"qfi_var_g", var},
                    {"qfi_x4", var}});
  }
  Json out = {{"command", "qfi"},
              {"convention", std::string(to_string(conv))},
              {"spec", to_json(spec)},
              {"cutoff", psi.cutoff()},
              {"values", rows}};
  if (oracle_supports(spec) && spec.n_sub == 0) {
    try {
      out["closed_form"] = qfi_closed_form(spec, thetas.front(), conv);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::validation) throw;
      out["closed_form"] = nullptr;
    }
  }
  if (auto dir = out_dir(cfg)) write_text(*dir / "qfi.json", with_config(out, cfg).dump(2) + "\n");
  print(out);
  return Exit::ok;
}

int run_fidelity(const Json& cfg) {
  StateSpec a, b;
  Json out = {{"command", "fidelity"}};
  if (cfg.contains("state_b")) {
    a = spec_from(cfg, "state");
    b = spec_from(cfg, "state_b");
  } else if (cfg.contains("pair_point")) {
    const Json& pp = cfg["pair_point"];
    require_known_keys(pp, {"pair", "n", "source_l", "r", "alpha", "beta", "beta_phase"},
                       "pair_point");
    if (!pp.contains("pair")) fail(ErrorKind::validation, "pair_point needs a pair");
    const auto name = pp["pair"].get<std::string>();
    const auto label = pair_from_string(name);
    if (!label) fail(ErrorKind::validation, "unknown pair '" + name + "'");
    PairSpec ps{*label, pp.value("n", 0), pp.value("source_l", 0)};
    PairParams prm{pp.value("r", 0.0), pp.value("alpha", 0.0), pp.value("beta", 0.0),
                   pp.contains("beta_phase") ? complex_from_json(pp["beta_phase"], "beta_phase")
                                             : default_beta_phase(*label)};
    const ResolvedPair rp = resolve_pair(ps, prm);
    a = rp.proposed;
    b = rp.target;
    out["pair"] = name;
    out["target_l"] = ps.target_l();
  } else {
    fail(ErrorKind::validation, "fidelity needs state + state_b, or a pair_point");
  }
  const int cutoff = std::max(auto_cutoff(a, eps(cfg)), auto_cutoff(b, eps(cfg)));
  const FockVector pa = build_state(a, cutoff), pb = build_state(b, cutoff);
  const double tol = metric_tolerance(cfg);
  const QfiConvention conv = convention(cfg);
  const double theta = value_or(cfg, "theta", 0.0);
  out["proposed"] = to_json(a);
  out["target"] = to_json(b);
  out["cutoff"] = cutoff;
  out["fidelity"] = fidelity(pa, pb, tol);
  out["qfi_proposed"] = qfi_displacement(pa, theta, conv, tol);
  out["qfi_target"] = qfi_displacement(pb, theta, conv, tol);
  out["parity_proposed"] = parity_expectation(pa, tol);
  out["parity_target"] = parity_expectation(pb, tol);
  out["convention"] = std::string(to_string(conv));
  out["theta"] = theta;
  if (auto dir = out_dir(cfg)) {
    write_text(*dir / "fidelity.json", with_config(out, cfg).dump(2) + "\n");
  }
  print(out);
  return Exit::ok;
}

int run_locus(const Json& cfg) {
  const LocusConfig lc = locus_from(cfg);
  LocusResult res = solve_equal_qfi(lc);
  fidelity_sweep(lc, res.points);
  Json summary = locus_summary(res.points, res.omitted.size());
  Json out = {{"command", "locus"},
              {"pair", std::string(to_string(lc.pair.label))},
              {"effective_locus", to_json(lc)},
              {"summary", summary}};
  const fs::path dir = out_dir(cfg).value_or(fs::path("."));
  Json omitted = Json::array();
  for (const auto& o : res.omitted) {
    omitted.push_back({{"n", o.n}, {"r", o.r}, {"alpha", o.alpha}, {"theta", o.theta},
                       {"reason", o.reason}});
  }
  Json manifest = with_config(out, cfg);
  manifest["columns"] = std::string(locus_csv_header());
  manifest["omitted_cells"] = omitted;
  manifest["nonmonotone_targets"] = res.nonmonotone_targets;
  write_text(dir / "locus.csv", locus_csv(res.points));
  write_text(dir / "locus.json", manifest.dump(2) + "\n");
  print(out);
  if (summary["flagged"].get<int>() > 0 && !allow_flagged(cfg)) {
    std::cerr << "error: " << summary["flagged"].get<int>()
              << " locus points are flagged for truncation (use --allow-flagged to accept)\n";
    return Exit::truncation;
  }
  return Exit::ok;
}

int run_figure(const Json& cfg) {
  const auto name = value_or<std::string>(cfg, "figure", "");
  const auto which = figure_from_string(name);
  if (!which) fail(ErrorKind::validation, "unknown figure '" + name + "' (fig1..fig4)");
  const fs::path dir = out_dir(cfg).value_or(fs::path("."));

  FigureOutput fo;
  Json out = {{"command", "figure"}, {"figure", name}};
  if (*which == Figure::fig1) {
    FringeFigureConfig fc = FringeFigureConfig::defaults();
    if (cfg.contains("fringe_states")) {
      fc.states.clear();
      for (const auto& s : cfg["fringe_states"]) fc.states.push_back(state_spec_from_json(s));
    }
    fc.fringe.n_directions = value_or(cfg, "directions", fc.fringe.n_directions);
    fc.fringe.min_zero_fraction = value_or(cfg, "min_zero_fraction", fc.fringe.min_zero_fraction);
    fc.fringe.search = zero_search(cfg);
    fc.tail_tolerance = eps(cfg);
    fo = emit_fringe_figure(fc, dir, cfg);
  } else {
    const LocusConfig lc = locus_from(cfg);
    out["pair"] = std::string(to_string(lc.pair.label));
    fo = emit_figure_dataset(lc, *which, dir, cfg);
  }
  out["csv"] = fo.csv.string();
  out["manifest"] = fo.manifest.string();
  out["rows"] = fo.rows;
  out["omitted"] = fo.omitted;
  out["flagged"] = fo.flagged;
  print(out);
  if (fo.flagged > 0 && !allow_flagged(cfg)) {
    std::cerr << "error: " << fo.flagged
              << " points are flagged for truncation (use --allow-flagged to accept)\n";
    return Exit::truncation;
  }
  return Exit::ok;
}

int run_verify_oracle(const Json& cfg) {
  const auto seed = value_or<std::uint64_t>(cfg, "seed", 0);
  const int samples = value_or(cfg, "oracle_samples", 200);
  const OracleReport rep = verify_oracle(seed, samples);
  Json out = to_json(rep, false);
  out["command"] = "verify-oracle";
  if (auto dir = out_dir(cfg)) {
    Json file = with_config(to_json(rep, true), cfg);
    write_text(*dir / "oracle.json", file.dump(2) + "\n");
  }
  print(out);
  return rep.pass ? Exit::ok : Exit::solver;
}

}  // namespace subplanck::cli
