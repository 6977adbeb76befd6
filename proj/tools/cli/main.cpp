#include <CLI11.hpp>

#include <complex>
#include <functional>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "commands.hpp"
#include "subplanck/error.hpp"

namespace {

using subplanck::Json;
using namespace subplanck::cli;

// A command-line option and how its value lands in the run configuration.
struct Overlay {
  CLI::Option* option;
  std::function<void(Json&)> apply;
};

class Registry {
 public:
  template <typename T>
  CLI::Option* bind(CLI::App* app, const std::string& name, const std::string& help,
                    std::function<void(Json&, const T&)> apply) {
    auto value = std::make_shared<T>();
    CLI::Option* opt = app->add_option(name, *value, help);
    overlays_.push_back({opt, [value, apply](Json& cfg) { apply(cfg, *value); }});
    return opt;
  }

  CLI::Option* flag(CLI::App* app, const std::string& name, const std::string& help,
                    std::function<void(Json&)> apply) {
    CLI::Option* opt = app->add_flag(name, help);
    overlays_.push_back({opt, std::move(apply)});
    return opt;
  }

  void apply(Json& cfg) const {
    for (const auto& o : overlays_) {
      if (o.option->count() > 0) o.apply(cfg);
    }
  }

 private:
  std::vector<Overlay> overlays_;
};

Json& section(Json& cfg, const char* key) {
  if (!cfg.contains(key) || !cfg[key].is_object()) cfg[key] = Json::object();
  return cfg[key];
}

Json polar_json(double magnitude, double phase) {
  return subplanck::complex_to_json(std::polar(magnitude, phase));
}

// Rotates an existing amplitude to a new phase, keeping its magnitude.
void set_phase(Json& node, const char* key, double phase) {
  const double mag = node.contains(key) ? std::abs(subplanck::complex_from_json(node[key], key)) : 1.0;
  node[key] = polar_json(mag, phase);
}

void add_state_flags(Registry& reg, CLI::App* app, bool n_add_list) {
  reg.bind<std::string>(app, "--family", "coherent|cat|ks_plus|ks_minus|sq|ss|ssd",
                        [](Json& c, const std::string& v) { section(c, "state")["family"] = v; });
  reg.bind<double>(app, "--alpha", "displacement amplitude magnitude",
                   [](Json& c, const double& v) { section(c, "state")["alpha"] = v; });
  reg.bind<double>(app, "--alpha-phase", "displacement amplitude phase (rad)",
                   [](Json& c, const double& v) { set_phase(section(c, "state"), "alpha", v); });
  reg.bind<double>(app, "--beta", "cat/compass amplitude magnitude",
                   [](Json& c, const double& v) { section(c, "state")["beta"] = v; });
  reg.bind<double>(app, "--beta-phase", "cat/compass amplitude phase (rad)",
                   [](Json& c, const double& v) { set_phase(section(c, "state"), "beta", v); });
  reg.bind<double>(app, "--r", "squeezing magnitude",
                   [](Json& c, const double& v) { section(c, "state")["r"] = v; });
  reg.bind<double>(app, "--phi", "squeezing phase (rad)",
                   [](Json& c, const double& v) { section(c, "state")["phi"] = v; });
  reg.bind<int>(app, "--l", "basis label",
                [](Json& c, const int& v) { section(c, "state")["l"] = v; });
  reg.bind<int>(app, "--n-sub", "photons subtracted",
                [](Json& c, const int& v) { section(c, "state")["n_sub"] = v; });
  reg.bind<std::string>(
      app, "--n-add", n_add_list ? "photons added: 2, 0..2 or 0,1,2" : "photons added",
      [n_add_list](Json& c, const std::string& v) {
        const auto ns = parse_int_list(v);
        if (n_add_list) {
          c["n_add_values"] = ns;
          section(c, "state")["n_add"] = ns.front();
        } else if (ns.size() != 1) {
          subplanck::fail(subplanck::ErrorKind::validation, "--n-add takes a single value here");
        } else {
          section(c, "state")["n_add"] = ns.front();
        }
      });
}

void add_grid_flags(Registry& reg, CLI::App* app) {
  reg.bind<double>(app, "--extent", "grid half-width in both quadratures",
                   [](Json& c, const double& v) { c["extent"] = v; });
  reg.bind<int>(app, "--samples", "grid samples per axis",
                [](Json& c, const int& v) { c["samples"] = v; });
}

void add_fringe_flags(Registry& reg, CLI::App* app) {
  reg.bind<double>(app, "--search-radius", "first-zero search radius",
                   [](Json& c, const double& v) { c["search_radius"] = v; });
}

void add_theta_flag(Registry& reg, CLI::App* app) {
  reg.bind<double>(app, "--theta", "generator angle (rad)",
                   [](Json& c, const double& v) { c["theta"] = v; });
}

void add_locus_flags(Registry& reg, CLI::App* app) {
  reg.bind<std::string>(app, "--pair", "prstrg-1..3, trgtrgn-1, trgtrgp-2, trgtrgE-3",
                        [](Json& c, const std::string& v) { section(c, "locus")["pair"] = v; });
  reg.bind<std::string>(app, "--n", "photon numbers: 1, 0..4 or 1,2,3",
                        [](Json& c, const std::string& v) {
                          section(c, "locus")["n_values"] = parse_int_list(v);
                        });
  reg.bind<int>(app, "--source-l", "basis label of the photon-added source state",
                [](Json& c, const int& v) { section(c, "locus")["source_l"] = v; });
  for (const char* axis : {"r", "alpha"}) {
    for (const char* end : {"min", "max", "step"}) {
      const std::string name = std::string("--") + axis + "-" + end;
      reg.bind<double>(app, name, std::string(axis) + " grid " + end,
                       [axis, end](Json& c, const double& v) {
                         Json& range = section(section(c, "locus"), axis);
                         range[end] = v;
                       });
    }
  }
  reg.bind<double>(app, "--beta-max", "upper end of the beta bracket",
                   [](Json& c, const double& v) { section(c, "locus")["beta_max"] = v; });
  reg.bind<int>(app, "--panels", "bracket panels for the beta scan",
                [](Json& c, const int& v) { section(c, "locus")["panels"] = v; });
  reg.bind<double>(app, "--beta-phase", "cat/compass amplitude phase (rad)",
                   [](Json& c, const double& v) {
                     section(c, "locus")["beta_phase"] = polar_json(1.0, v);
                   });
  reg.bind<std::string>(app, "--theta-policy", "fixed|sweep|target_invariant",
                        [](Json& c, const std::string& v) {
                          section(c, "locus")["theta_policy"] = v;
                        });
  reg.bind<double>(app, "--theta", "generator angle for the fixed policy (rad)",
                   [](Json& c, const double& v) { section(c, "locus")["theta"] = v; });
}

void add_pair_point_flags(Registry& reg, CLI::App* app) {
  reg.bind<std::string>(app, "--pair", "pair label",
                        [](Json& c, const std::string& v) { section(c, "pair_point")["pair"] = v; });
  reg.bind<int>(app, "--n", "photon number",
                [](Json& c, const int& v) { section(c, "pair_point")["n"] = v; });
  reg.bind<int>(app, "--source-l", "basis label of the source state",
                [](Json& c, const int& v) { section(c, "pair_point")["source_l"] = v; });
  for (const char* key : {"r", "alpha", "beta"}) {
    reg.bind<double>(app, std::string("--") + key, std::string(key) + " of the comparison",
                     [key](Json& c, const double& v) { section(c, "pair_point")[key] = v; });
  }
  reg.bind<double>(app, "--beta-phase", "cat/compass amplitude phase (rad)",
                   [](Json& c, const double& v) {
                     section(c, "pair_point")["beta_phase"] = polar_json(1.0, v);
                   });
}

int exit_code(subplanck::ErrorKind kind) {
  switch (kind) {
    case subplanck::ErrorKind::validation:
    case subplanck::ErrorKind::dimension: return Exit::validation;
    case subplanck::ErrorKind::truncation: return Exit::truncation;
    case subplanck::ErrorKind::solver: return Exit::solver;
    case subplanck::ErrorKind::io: return Exit::other;
  }
  return Exit::other;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sub-Planck phase-space structure and quantum Fisher information toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  Registry reg;
  std::string config_path;
  app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
  reg.bind<std::string>(&app, "--out", "output directory",
                        [](Json& c, const std::string& v) { c["out"] = v; });
  reg.bind<std::string>(&app, "--convention", "appendix|intro",
                        [](Json& c, const std::string& v) {
                          c["convention"] = v;
                          if (c.contains("locus")) c["locus"]["convention"] = v;
                        });
  reg.flag(&app, "--allow-flagged", "accept results flagged for truncation",
           [](Json& c) { c["allow_flagged"] = true; });
  reg.bind<std::uint64_t>(&app, "--seed", "seed for randomized sampling",
                          [](Json& c, const std::uint64_t& v) { c["seed"] = v; });
  reg.bind<std::string>(&app, "--cfa-source", "overlap|wigner",
                        [](Json& c, const std::string& v) { c["cfa_source"] = v; });
  reg.bind<double>(&app, "--eps", "tail-mass tolerance",
                   [](Json& c, const double& v) { c["eps"] = v; });
  reg.bind<int>(&app, "--cutoff", "fixed Fock cutoff instead of the automatic ladder",
                [](Json& c, const int& v) { c["cutoff"] = v; });

  struct Command {
    CLI::App* app;
    std::function<int(const Json&)> run;
    bool writes_files;
  };
  std::vector<Command> commands;

  auto* state = app.add_subcommand("state", "build a state and report its metrics");
  add_state_flags(reg, state, false);
  add_theta_flag(reg, state);
  commands.push_back({state, run_state, true});

  auto* wig = app.add_subcommand("wigner", "Wigner function on a phase-space grid");
  add_state_flags(reg, wig, false);
  add_grid_flags(reg, wig);
  commands.push_back({wig, run_wigner, true});

  auto* ovl = app.add_subcommand("overlap", "displaced overlap field, point value or first zero");
  add_state_flags(reg, ovl, false);
  add_grid_flags(reg, ovl);
  add_fringe_flags(reg, ovl);
  reg.bind<double>(ovl, "--dir", "direction of the first-zero search (rad)",
                   [](Json& c, const double& v) { c["direction"] = v; });
  reg.flag(ovl, "--first-zero", "locate the first zero along --dir",
           [](Json& c) { c["first_zero"] = true; });
  reg.bind<std::vector<double>>(ovl, "--lambda", "evaluate at a single point: re im",
                                [](Json& c, const std::vector<double>& v) { c["lambda"] = v; })
      ->expected(2);
  commands.push_back({ovl, run_overlap, true});

  auto* cfa = app.add_subcommand("cfa", "central fringe area");
  add_state_flags(reg, cfa, true);
  add_fringe_flags(reg, cfa);
  reg.bind<int>(cfa, "--directions", "number of search directions",
                [](Json& c, const int& v) { c["directions"] = v; });
  reg.bind<double>(cfa, "--min-zero-fraction", "required share of directions with a zero",
                   [](Json& c, const double& v) { c["min_zero_fraction"] = v; });
  commands.push_back({cfa, run_cfa, true});

  auto* qfi = app.add_subcommand("qfi", "quantum Fisher information for displacement sensing");
  add_state_flags(reg, qfi, false);
  add_theta_flag(reg, qfi);
  reg.bind<int>(qfi, "--theta-points", "evaluate on a uniform theta grid",
                [](Json& c, const int& v) { c["theta_points"] = v; });
  commands.push_back({qfi, run_qfi, true});

  auto* fid = app.add_subcommand("fidelity", "fidelity of a proposed/target comparison");
  add_pair_point_flags(reg, fid);
  add_theta_flag(reg, fid);
  commands.push_back({fid, run_fidelity, true});

  auto* locus = app.add_subcommand("locus", "equal-QFI locus with fidelity sweep");
  add_locus_flags(reg, locus);
  commands.push_back({locus, run_locus, true});

  auto* figure = app.add_subcommand("figure", "figure dataset: fig1..fig4");
  reg.bind<std::string>(figure, "figure", "fig1|fig2|fig3|fig4",
                        [](Json& c, const std::string& v) { c["figure"] = v; })
      ->required();
  add_locus_flags(reg, figure);
  add_fringe_flags(reg, figure);
  commands.push_back({figure, run_figure, true});

  auto* oracle = app.add_subcommand("verify-oracle", "closed-form vs Fock-space equivalence");
  reg.bind<int>(oracle, "--samples", "number of random samples",
                [](Json& c, const int& v) { c["oracle_samples"] = v; });
  commands.push_back({oracle, run_verify_oracle, false});

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? Exit::ok : Exit::validation;
  }

  try {
    Json cfg = Json::object();
    if (!config_path.empty()) cfg = subplanck::read_json(config_path);
    validate_config(cfg);
    reg.apply(cfg);
    validate_config(cfg);
    for (const auto& cmd : commands) {
      if (!cmd.app->parsed()) continue;
      if (cmd.writes_files && !cfg.contains("out")) cfg["out"] = ".";
      return cmd.run(cfg);
    }
    return Exit::other;
  } catch (const subplanck::Error& e) {
    std::cerr << "error (" << subplanck::to_string(e.kind()) << "): " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const Json::exception& e) {
    std::cerr << "error (validation): " << e.what() << '\n';
    return Exit::validation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return Exit::other;
  }
}
