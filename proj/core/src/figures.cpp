#include "subplanck/figures.hpp"

#include <cmath>

#include "subplanck/error.hpp"

namespace subplanck {
namespace {

bool is_target_target(PairLabel p) {
  return p == PairLabel::trgtrgn1 || p == PairLabel::trgtrgp2 || p == PairLabel::trgtrgE3;
}

Json cutoff_summary(const std::vector<LocusPoint>& points) {
  int lo = 0, hi = 0;
  Json hist = Json::object();
  for (const auto& p : points) {
    if (p.cutoff == 0) continue;
    lo = lo == 0 ? p.cutoff : std::min(lo, p.cutoff);
    hi = std::max(hi, p.cutoff);
    const std::string key = std::to_string(p.cutoff);
    hist[key] = hist.value(key, 0) + 1;
  }
  return {{"ladder_floor", kMinLadderCutoff},
          {"ladder_ceiling", kMaxCutoff},
          {"min", lo},
          {"max", hi},
          {"histogram", hist}};
}

}  // namespace

std::string_view to_string(Figure f) noexcept {
  switch (f) {
    case Figure::fig1: return "fig1";
    case Figure::fig2: return "fig2";
    case Figure::fig3: return "fig3";
    case Figure::fig4: return "fig4";
  }
  return "fig1";
}

std::optional<Figure> figure_from_string(std::string_view name) noexcept {
  for (auto f : {Figure::fig1, Figure::fig2, Figure::fig3, Figure::fig4}) {
    if (to_string(f) == name) return f;
  }
  return std::nullopt;
}

FringeFigureConfig FringeFigureConfig::defaults() {
  FringeFigureConfig c;
  for (int n = 0; n <= 2; ++n) c.states.push_back(StateSpec::cat(2.0, 0).with_added(n));
  for (int n = 0; n <= 2; ++n) c.states.push_back(StateSpec::ks_plus(1.5, 0).with_added(n));
  c.states.push_back(StateSpec::cat(1.5, 0));
  c.states.push_back(StateSpec::cat(2.5, 0));
  return c;
}

std::string_view locus_csv_header() noexcept {
  return "n,r,alpha,theta,beta,fq,fq_target,residual,fidelity,mean_n_proposed,mean_n_target,"
         "root_index,root_count,target_l,cutoff,flagged";
}

std::string locus_csv(const std::vector<LocusPoint>& points) {
  std::string out(locus_csv_header());
  out += '\n';
  for (const auto& p : points) {
    const std::string fields[] = {
        std::to_string(p.n),         format_double(p.r),
        format_double(p.alpha),      format_double(p.theta),
        format_double(p.beta),       format_double(p.fq),
        format_double(p.fq_target),  format_double(p.residual),
        format_double(p.fidelity),   format_double(p.mean_n_proposed),
        format_double(p.mean_n_target), std::to_string(p.root_index),
        std::to_string(p.root_count), std::to_string(p.target_l),
        std::to_string(p.cutoff),    p.flagged ? "1" : "0"};
    bool first = true;
    for (const auto& f : fields) {
      if (!first) out += ',';
      out += f;
      first = false;
    }
    out += '\n';
  }
  return out;
}

FigureOutput emit_figure_dataset(const LocusConfig& cfg, Figure which,
                                 const std::filesystem::path& out_dir,
                                 const Json& effective_config) {
  if (which == Figure::fig1) {
    fail(ErrorKind::validation, "fig1 is a fringe-area figure; use emit_fringe_figure");
  }
  const bool tt = is_target_target(cfg.pair.label);
  if (which == Figure::fig2 && !tt) {
    fail(ErrorKind::validation, "fig2 takes trgtrgn-1, trgtrgp-2 or trgtrgE-3");
  }
  if (which != Figure::fig2 && tt) fail(ErrorKind::validation, "fig3/fig4 take prstrg-1..3");

  LocusResult res = solve_equal_qfi(cfg);
  fidelity_sweep(cfg, res.points);

  FigureOutput out;
  const std::string stem(to_string(which));
  out.csv = out_dir / (stem + ".csv");
  out.manifest = out_dir / (stem + ".json");
  out.rows = static_cast<int>(res.points.size());
  out.omitted = static_cast<int>(res.omitted.size());
  for (const auto& p : res.points) out.flagged += p.flagged ? 1 : 0;

  Json omitted = Json::array();
  for (const auto& o : res.omitted) {
    omitted.push_back(
        {{"n", o.n}, {"r", o.r}, {"alpha", o.alpha}, {"theta", o.theta}, {"reason", o.reason}});
  }
  const std::string dumped = effective_config.dump();
  Json manifest = {{"figure", stem},
                   {"pair", std::string(to_string(cfg.pair.label))},
                   {"config", effective_config},
                   {"config_hash", fnv1a_hex(dumped)},
                   {"convention", std::string(to_string(cfg.convention))},
                   {"theta_policy", {{"kind", std::string(to_string(cfg.theta.kind))},
                                     {"theta", cfg.theta.theta},
                                     {"grid", cfg.theta.grid}}},
                   {"beta_phase", Json::array({cfg.beta_phase.real(), cfg.beta_phase.imag()})},
                   {"csv", out.csv.filename().string()},
                   {"columns", std::string(locus_csv_header())},
                   {"rows", out.rows},
                   {"flagged", out.flagged},
                   {"nonmonotone_targets", res.nonmonotone_targets},
                   {"omitted", {{"count", out.omitted}, {"cells", omitted}}},
                   {"cutoffs", cutoff_summary(res.points)}};

  write_text(out.csv, locus_csv(res.points));
  write_text(out.manifest, manifest.dump(2) + "\n");
  return out;
}

FigureOutput emit_fringe_figure(const FringeFigureConfig& cfg, const std::filesystem::path& out_dir,
                                const Json& effective_config) {
  if (cfg.states.empty()) fail(ErrorKind::validation, "fig1 needs at least one state");
  struct Row {
    FringeReport rep;
    int cutoff = 0;
    std::string error;
  };
  std::vector<Row> rows(cfg.states.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const FockVector psi = make_state(cfg.states[k], cfg.tail_tolerance);
    rows[k].cutoff = psi.cutoff();
    try {
      rows[k].rep = central_fringe_area(psi, cfg.fringe, cfg.tail_tolerance);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::solver) throw;
      rows[k].error = e.what();
    }
  }

  FigureOutput out;
  out.csv = out_dir / "fig1.csv";
  out.manifest = out_dir / "fig1.json";
  std::string csv = "family,l,alpha_re,alpha_im,beta_re,beta_im,r,n_add,cfa,zero_fraction,cutoff\n";
  Json states = Json::array();
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const StateSpec& s = cfg.states[k];
    const bool ok = rows[k].error.empty();
    csv += std::string(to_string(s.family)) + ',' + std::to_string(s.l) + ',' +
           format_double(s.alpha.real()) + ',' + format_double(s.alpha.imag()) + ',' +
           format_double(s.beta.real()) + ',' + format_double(s.beta.imag()) + ',' +
           format_double(s.r) + ',' + std::to_string(s.n_add) + ',' +
           format_double(ok ? rows[k].rep.cfa : std::nan("")) + ',' +
           format_double(ok ? rows[k].rep.zero_fraction : std::nan("")) + ',' +
           std::to_string(rows[k].cutoff) + '\n';
    Json entry = {{"spec", to_json(s)}, {"cutoff", rows[k].cutoff}};
    if (ok) {
      entry["fringe"] = to_json(rows[k].rep);
    } else {
      entry["error"] = rows[k].error;
      ++out.omitted;
    }
    states.push_back(entry);
    ++out.rows;
  }
  Json manifest = {{"figure", "fig1"},
                   {"config", effective_config},
                   {"config_hash", fnv1a_hex(effective_config.dump())},
                   {"source", std::string(to_string(cfg.fringe.search.source))},
                   {"n_directions", cfg.fringe.n_directions},
                   {"min_zero_fraction", cfg.fringe.min_zero_fraction},
                   {"search_radius", cfg.fringe.search.search_radius},
                   {"csv", "fig1.csv"},
                   {"rows", out.rows},
                   {"states", states}};
  write_text(out.csv, csv);
  write_text(out.manifest, manifest.dump(2) + "\n");
  return out;
}

}  // namespace subplanck
