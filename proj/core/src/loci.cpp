#include "subplanck/loci.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/tools/roots.hpp>

#include "subplanck/error.hpp"
#include "subplanck/parallel.hpp"

namespace subplanck {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double wrap_angle(double t) {
  const double two_pi = 2.0 * std::numbers::pi;
  t = std::fmod(t, two_pi);
  return t < 0.0 ? t + two_pi : t;
}

struct TargetCurve {
  std::vector<double> beta;
  std::vector<double> fq;  // NaN where the target could not be built
  bool monotone = true;
};

double target_qfi(const LocusConfig& cfg, int n, double beta, double theta) {
  const ResolvedPair rp = resolve_locus_pair(cfg, n, 0.0, 0.0, beta);
  return policy_qfi(make_state(rp.target, cfg.tail_tolerance), cfg, theta);
}

double target_qfi_or_nan(const LocusConfig& cfg, int n, double beta, double theta) {
  try {
    return target_qfi(cfg, n, beta, theta);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::validation || e.kind() == ErrorKind::truncation) return kNaN;
    throw;
  }
}

TargetCurve target_curve(const LocusConfig& cfg, int n, double theta) {
  TargetCurve c;
  const double w = (cfg.beta_max - cfg.beta_min) / cfg.panels;
  std::vector<double> edges;
  for (int k = 0; k <= cfg.panels; ++k) edges.push_back(cfg.beta_min + k * w);
  edges.back() = cfg.beta_max;
  std::vector<double> f(edges.size());
  parallel_for(edges.size(), [&](std::size_t k) { f[k] = target_qfi_or_nan(cfg, n, edges[k], theta); });

  // Panels whose slope disagrees with a neighbour's are split eightfold.
  auto slope = [&](std::size_t k) { return f[k + 1] - f[k]; };
  std::vector<bool> split(static_cast<std::size_t>(cfg.panels), false);
  for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
    if (slope(k) <= 0.0) {
      c.monotone = false;
      split[k] = true;
      if (k > 0) split[k - 1] = true;
      if (k + 2 < edges.size()) split[k + 1] = true;
    }
  }
  constexpr int kSub = 8;
  for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
    c.beta.push_back(edges[k]);
    c.fq.push_back(f[k]);
    if (!split[k]) continue;
    std::vector<double> sub(kSub - 1);
    parallel_for(sub.size(), [&](std::size_t j) {
      const double b = edges[k] + (edges[k + 1] - edges[k]) * static_cast<double>(j + 1) / kSub;
      sub[j] = target_qfi_or_nan(cfg, n, b, theta);
    });
    for (int j = 1; j < kSub; ++j) {
      c.beta.push_back(edges[k] + (edges[k + 1] - edges[k]) * j / kSub);
      c.fq.push_back(sub[static_cast<std::size_t>(j - 1)]);
    }
  }
  c.beta.push_back(edges.back());
  c.fq.push_back(f.back());
  return c;
}

struct CellResult {
  std::vector<LocusPoint> points;
  std::vector<OmittedCell> omitted;
};

CellResult solve_cell(const LocusConfig& cfg, const TargetCurve& curve, int n, int target_l,
                      double r, double alpha, double theta) {
  CellResult out;
  auto omit = [&](const std::string& why) { out.omitted.push_back({n, r, alpha, theta, why}); };

  double fp = 0.0;
  try {
    const ResolvedPair rp = resolve_locus_pair(cfg, n, r, alpha, 1.0);
    fp = policy_qfi(make_state(rp.proposed, cfg.tail_tolerance), cfg, theta);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::validation || e.kind() == ErrorKind::truncation) {
      omit(std::string("proposed state: ") + e.what());
      return out;
    }
    throw;
  }

  std::vector<std::pair<double, double>> brackets;
  std::vector<double> exact;
  for (std::size_t k = 0; k + 1 < curve.beta.size(); ++k) {
    const double g0 = curve.fq[k] - fp, g1 = curve.fq[k + 1] - fp;
    if (std::isnan(g0) || std::isnan(g1)) continue;
    if (g0 == 0.0) exact.push_back(curve.beta[k]);
    if (g0 * g1 < 0.0) brackets.emplace_back(curve.beta[k], curve.beta[k + 1]);
  }
  if (!curve.fq.empty() && curve.fq.back() - fp == 0.0) exact.push_back(curve.beta.back());

  std::vector<double> roots = exact;
  for (const auto& [a, b] : brackets) {
    auto g = [&](double beta) { return target_qfi(cfg, n, beta, theta) - fp; };
    const double ga = g(a), gb = g(b);
    if (ga == 0.0) {
      roots.push_back(a);
      continue;
    }
    if (gb == 0.0) {
      roots.push_back(b);
      continue;
    }
    if (ga * gb > 0.0) continue;  // the cached edge disagreed with a fresh evaluation
    std::uintmax_t iters = 200;
    const auto tol = boost::math::tools::eps_tolerance<double>(45);
    const auto [lo, hi] = boost::math::tools::toms748_solve(g, a, b, ga, gb, tol, iters);
    roots.push_back(0.5 * (lo + hi));
  }
  std::sort(roots.begin(), roots.end());

  if (roots.empty()) {
    omit("no bracket: target F_Q never reaches the proposed value in the beta range");
    return out;
  }
  int index = 0;
  for (double beta : roots) {
    LocusPoint p;
    p.n = n;
    p.r = r;
    p.alpha = alpha;
    p.theta = theta;
    p.beta = beta;
    p.fq = fp;
    p.fq_target = target_qfi(cfg, n, beta, theta);
    p.residual = std::abs(p.fq_target - fp);
    p.root_index = index++;
    p.root_count = static_cast<int>(roots.size());
    p.multiple = roots.size() > 1;
    p.target_l = target_l;
    if (p.residual > cfg.relative_tolerance * std::max(1.0, fp)) {
      std::ostringstream os;
      os << "residual " << p.residual << " above tolerance at beta " << beta;
      omit(os.str());
      continue;
    }
    out.points.push_back(p);
  }
  return out;
}

}  // namespace

std::vector<double> Range::values() const {
  std::vector<double> v;
  const long count = std::lround(std::floor((max - min) / step + 1e-6));
  for (long k = 0; k <= count; ++k) v.push_back(min + static_cast<double>(k) * step);
  return v;
}

void Range::validate(const char* name) const {
  if (!(std::isfinite(min) && std::isfinite(max) && std::isfinite(step)) || !(step > 0.0) ||
      max < min) {
    fail(ErrorKind::validation, std::string("range ") + name + " must be finite, nonempty, step > 0");
  }
}

std::string_view to_string(ThetaPolicyKind k) noexcept {
  switch (k) {
    case ThetaPolicyKind::fixed: return "fixed";
    case ThetaPolicyKind::sweep: return "sweep";
    case ThetaPolicyKind::target_invariant: return "target_invariant";
  }
  return "fixed";
}

std::optional<ThetaPolicyKind> theta_policy_from_string(std::string_view name) noexcept {
  for (auto k : {ThetaPolicyKind::fixed, ThetaPolicyKind::sweep, ThetaPolicyKind::target_invariant}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

FreeParams free_params(PairLabel label) {
  switch (label) {
    case PairLabel::prstrg1: return {true, true};
    case PairLabel::prstrg2:
    case PairLabel::prstrg3: return {true, false};
    default: return {false, true};
  }
}

LocusConfig LocusConfig::defaults(PairLabel label) {
  LocusConfig c;
  c.pair.label = label;
  c.beta_phase = default_beta_phase(label);
  c.theta.kind = ThetaPolicyKind::fixed;
  c.theta.theta = wrap_angle(std::arg(c.beta_phase));
  return c;
}

void LocusConfig::validate() const {
  if (n_values.empty()) fail(ErrorKind::validation, "locus needs at least one n value");
  for (int n : n_values) {
    if (n < 0) fail(ErrorKind::validation, "photon counts must be >= 0");
  }
  const FreeParams fp = free_params(pair.label);
  if (fp.r) r.validate("r");
  if (fp.alpha) alpha.validate("alpha");
  if (fp.r && r.min < 0.0) fail(ErrorKind::validation, "r range must be >= 0");
  if (!(beta_min > 0.0) || !(beta_max > beta_min) || !std::isfinite(beta_max)) {
    fail(ErrorKind::validation, "beta bracket must satisfy 0 < beta_min < beta_max");
  }
  if (panels < 1) fail(ErrorKind::validation, "panels must be >= 1");
  if (theta.kind == ThetaPolicyKind::sweep && theta.grid.empty()) {
    fail(ErrorKind::validation, "sweep theta policy needs a grid");
  }
  if (!(std::abs(std::abs(beta_phase) - 1.0) < 1e-12)) {
    fail(ErrorKind::validation, "beta_phase must be a unit complex number");
  }
  if (!(tail_tolerance > 0.0 && tail_tolerance <= 1e-3)) {
    fail(ErrorKind::validation, "tail tolerance must lie in (0, 1e-3]");
  }
  if (!(relative_tolerance > 0.0)) fail(ErrorKind::validation, "relative tolerance must be > 0");
  PairSpec probe = pair;
  probe.n = 0;
  (void)probe.target_l();
}

double policy_qfi(const FockVector& psi, const LocusConfig& cfg, double theta) {
  if (cfg.theta.kind != ThetaPolicyKind::target_invariant) {
    return qfi_displacement(psi, theta, cfg.convention, cfg.tail_tolerance);
  }
  // Var G(theta) only carries e^{+-2i theta} harmonics, so four points average exactly.
  double s = 0.0;
  for (int k = 0; k < 4; ++k) {
    s += qfi_displacement(psi, k * std::numbers::pi / 2.0, cfg.convention, cfg.tail_tolerance);
  }
  return s / 4.0;
}

ResolvedPair resolve_locus_pair(const LocusConfig& cfg, int n, double r, double alpha,
                                double beta) {
  PairSpec ps = cfg.pair;
  ps.n = n;
  return resolve_pair(ps, PairParams{r, alpha, beta, cfg.beta_phase});
}

LocusResult solve_equal_qfi(const LocusConfig& cfg) {
  cfg.validate();
  LocusResult res;
  res.config = cfg;

  const FreeParams fp = free_params(cfg.pair.label);
  const std::vector<double> rs = fp.r ? cfg.r.values() : std::vector<double>{0.0};
  const std::vector<double> as = fp.alpha ? cfg.alpha.values() : std::vector<double>{0.0};
  const std::vector<double> thetas = cfg.theta.kind == ThetaPolicyKind::sweep
                                         ? cfg.theta.grid
                                         : std::vector<double>{cfg.theta.theta};

  for (double theta : thetas) {
    for (int n : cfg.n_values) {
      PairSpec ps = cfg.pair;
      ps.n = n;
      const int target_l = ps.target_l();
      const TargetCurve curve = target_curve(cfg, n, theta);
      if (!curve.monotone) ++res.nonmonotone_targets;

      std::vector<CellResult> cells(rs.size() * as.size());
      parallel_for(cells.size(), [&](std::size_t idx) {
        const double r = rs[idx / as.size()];
        const double a = as[idx % as.size()];
        cells[idx] = solve_cell(cfg, curve, n, target_l, r, a, theta);
      });
      for (auto& c : cells) {
        res.points.insert(res.points.end(), c.points.begin(), c.points.end());
        res.omitted.insert(res.omitted.end(), c.omitted.begin(), c.omitted.end());
      }
    }
  }
  return res;
}

void fidelity_sweep(const LocusConfig& cfg, std::vector<LocusPoint>& points) {
  parallel_for(points.size(), [&](std::size_t i) {
    LocusPoint& p = points[i];
    p.swept = true;
    try {
      const ResolvedPair rp = resolve_locus_pair(cfg, p.n, p.r, p.alpha, p.beta);
      const int cutoff = std::max(auto_cutoff(rp.proposed, cfg.tail_tolerance),
                                  auto_cutoff(rp.target, cfg.tail_tolerance));
      const FockVector a = build_state(rp.proposed, cutoff);
      const FockVector b = build_state(rp.target, cutoff);
      p.cutoff = cutoff;
      p.fidelity = fidelity(a, b, cfg.tail_tolerance);
      p.mean_n_proposed = mean_photon(a, cfg.tail_tolerance).mean;
      p.mean_n_target = mean_photon(b, cfg.tail_tolerance).mean;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::truncation && e.kind() != ErrorKind::validation) throw;
      p.flagged = true;
      p.fidelity = kNaN;
      p.note = e.what();
    }
  });
}

}  // namespace subplanck
