#include "subplanck/phase_space.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "subplanck/error.hpp"
#include "subplanck/metrics.hpp"
#include "subplanck/parallel.hpp"

namespace subplanck {
namespace {

void refuse_flagged(const FockVector& psi, double tol, const char* what) {
  if (psi.flagged(tol)) {
    std::ostringstream os;
    os << what << ": input is flagged (tail mass " << psi.tail_mass() << ")";
    fail(ErrorKind::truncation, os.str());
  }
}

double parity_sum(const FockVector& v) {
  double s = 0.0;
  for (std::size_t n = 0; n < v.size(); ++n) s += (n % 2 == 0 ? 1.0 : -1.0) * std::norm(v[n]);
  return s;
}

// Walks D[sign * t * u] psi outward along one ray. Steps along a fixed
// direction compose exactly, so each move only pays for the increment.
class Ray {
 public:
  Ray(const FockVector& base, double direction, FringeSource source)
      : base_(base),
        u_(std::polar(1.0, direction)),
        source_(source),
        sign_(source == FringeSource::overlap ? 1.0 : -1.0) {}

  FockVector move(const FockVector& from, double dt) const {
    return dt == 0.0 ? from : displace(from, sign_ * dt * u_);
  }

  // Signed field: Re chi for the overlap, W for the Wigner function.
  double value(const FockVector& v) const {
    if (source_ == FringeSource::overlap) return inner(base_, v).real();
    return 2.0 / std::numbers::pi * parity_sum(v);
  }

  double overlap(const FockVector& v) const { return std::norm(inner(base_, v)); }

  bool is_zero(const FockVector& v, double threshold) const {
    if (source_ == FringeSource::overlap) return overlap(v) <= threshold;
    return true;  // a sign change of W is a zero by definition
  }

  const FockVector& base() const { return base_; }

 private:
  const FockVector& base_;
  Complex u_;
  FringeSource source_;
  double sign_;
};

std::vector<double> radial_grid(double radius) {
  std::vector<double> t;
  // log-spaced near the origin, then uniform
  constexpr int kLogPoints = 20;
  const double t0 = 1e-3, t1 = std::min(0.05, radius);
  for (int k = 0; k < kLogPoints; ++k) {
    t.push_back(t0 * std::pow(t1 / t0, static_cast<double>(k) / (kLogPoints - 1)));
  }
  for (double x = t1 + 0.01; x < radius; x += 0.01) t.push_back(x);
  t.push_back(radius);
  return t;
}

}  // namespace

void GridSpec::validate() const {
  if (nx < 16 || np < 16) fail(ErrorKind::validation, "grid needs at least 16 samples per axis");
  if (!(std::isfinite(x_min) && std::isfinite(x_max) && std::isfinite(p_min) &&
        std::isfinite(p_max)) ||
      !(x_max > x_min) || !(p_max > p_min)) {
    fail(ErrorKind::validation, "grid ranges must be finite and nonempty");
  }
}

double GridSpec::x(int i) const noexcept { return x_min + i * dx(); }
double GridSpec::p(int j) const noexcept { return p_min + j * dp(); }

GridSpec auto_grid(const FockVector& psi, int samples) {
  const double mean = mean_photon(psi, 1.0).mean;
  const double half = std::sqrt(2.0 * mean + 1.0) + 3.0;
  return {-half, half, -half, half, samples, samples};
}

int working_cutoff(const FockVector& psi, double radius) {
  const double total = psi.norm_squared();
  int n_eff = 0;
  for (std::size_t n = 0; n < psi.size(); ++n) {
    if (std::norm(psi[n]) > 1e-20 * total) n_eff = static_cast<int>(n);
  }
  const double reach = std::pow(std::sqrt(static_cast<double>(n_eff)) + radius + 5.0, 2);
  const double guard = radius * radius / kGeneratorLoadFraction + 1.0;
  return static_cast<int>(std::ceil(std::max({reach, guard, static_cast<double>(n_eff + 1)})));
}

double wigner_at(const FockVector& psi, Complex beta, double tail_tolerance) {
  refuse_flagged(psi, tail_tolerance, "wigner");
  const FockVector base = psi.resized(working_cutoff(psi, std::abs(beta)));
  const FockVector v = displace(base, -beta);
  return 2.0 / std::numbers::pi * parity_sum(v) / psi.norm_squared();
}

PhaseGrid wigner(const FockVector& psi, const GridSpec& grid, double tail_tolerance) {
  refuse_flagged(psi, tail_tolerance, "wigner");
  grid.validate();
  const double corner = std::hypot(std::max(std::abs(grid.x_min), std::abs(grid.x_max)),
                                   std::max(std::abs(grid.p_min), std::abs(grid.p_max)));
  const FockVector base = psi.resized(working_cutoff(psi, corner));
  const double norm = psi.norm_squared();

  PhaseGrid out{grid, std::vector<double>(static_cast<std::size_t>(grid.nx * grid.np)), {}};
  parallel_for(static_cast<std::size_t>(grid.np), [&](std::size_t jj) {
    const int j = static_cast<int>(jj);
    // Along a row D[-(x + dx) - i p] = D[-dx] D[-x - i p] up to a phase that |.|^2 ignores.
    FockVector v = displace(base, -Complex(grid.x(0), grid.p(j)));
    for (int i = 0; i < grid.nx; ++i) {
      if (i > 0) v = displace(v, -grid.dx());
      out.values[static_cast<std::size_t>(j * grid.nx + i)] =
          2.0 / std::numbers::pi * parity_sum(v) / norm;
    }
  });

  const double mean = mean_photon(psi, 1.0).mean;
  if (mean > 0.0) {
    const double limit = 0.5 / std::sqrt(mean);
    if (grid.dx() > limit || grid.dp() > limit) {
      std::ostringstream os;
      os << "grid cell " << std::max(grid.dx(), grid.dp()) << " exceeds 0.5/sqrt(<n>) = " << limit
         << "; fringes may be undersampled";
      out.warnings.push_back(os.str());
    }
  }
  return out;
}

Complex characteristic(const FockVector& psi, Complex lambda, double tail_tolerance) {
  refuse_flagged(psi, tail_tolerance, "overlap");
  const FockVector base = psi.resized(working_cutoff(psi, std::abs(lambda)));
  return inner(base, displace(base, lambda)) / psi.norm_squared();
}

double overlap_field(const FockVector& psi, Complex lambda, double tail_tolerance) {
  return std::norm(characteristic(psi, lambda, tail_tolerance));
}

PhaseGrid overlap_grid(const FockVector& psi, const GridSpec& grid, double tail_tolerance) {
  refuse_flagged(psi, tail_tolerance, "overlap");
  grid.validate();
  const double corner = std::hypot(std::max(std::abs(grid.x_min), std::abs(grid.x_max)),
                                   std::max(std::abs(grid.p_min), std::abs(grid.p_max)));
  const FockVector base = psi.resized(working_cutoff(psi, corner));
  const double norm2 = std::pow(psi.norm_squared(), 2);

  PhaseGrid out{grid, std::vector<double>(static_cast<std::size_t>(grid.nx * grid.np)), {}};
  parallel_for(static_cast<std::size_t>(grid.np), [&](std::size_t jj) {
    const int j = static_cast<int>(jj);
    FockVector v = displace(base, Complex(grid.x(0), grid.p(j)));
    for (int i = 0; i < grid.nx; ++i) {
      if (i > 0) v = displace(v, grid.dx());
      out.values[static_cast<std::size_t>(j * grid.nx + i)] = std::norm(inner(base, v)) / norm2;
    }
  });
  return out;
}

std::string_view to_string(FringeSource s) noexcept {
  return s == FringeSource::wigner ? "wigner" : "overlap";
}

std::optional<FringeSource> fringe_source_from_string(std::string_view name) noexcept {
  if (name == "overlap") return FringeSource::overlap;
  if (name == "wigner") return FringeSource::wigner;
  return std::nullopt;
}

std::optional<double> first_zero(const FockVector& psi, double direction, const ZeroSearch& opts,
                                 double tail_tolerance) {
  refuse_flagged(psi, tail_tolerance, "first_zero");
  if (!(opts.search_radius > 0.0) || !(opts.relative_tolerance > 0.0)) {
    fail(ErrorKind::validation, "first_zero: search radius and tolerance must be positive");
  }
  const FockVector unit = normalize(psi);
  const FockVector base = unit.resized(working_cutoff(unit, opts.search_radius));
  const Ray ray(base, direction, opts.source);
  const std::vector<double> ts = radial_grid(opts.search_radius);

  double t_prev = 0.0;
  FockVector v_prev = base;
  double f_prev = ray.value(base);
  double o_prev2 = 1.0, o_prev = 1.0;  // overlap at the previous two nodes
  double t_prev2 = 0.0;
  FockVector v_prev2 = base;

  for (double t : ts) {
    FockVector v = ray.move(v_prev, t - t_prev);
    const double f = ray.value(v);

    if (f == 0.0 && ray.is_zero(v, opts.zero_threshold)) return t;
    if (f_prev * f < 0.0) {
      double a = t_prev, b = t;
      double fa = f_prev;
      while (b - a > opts.relative_tolerance * b) {
        const double mid = 0.5 * (a + b);
        const double fm = ray.value(ray.move(v_prev, mid - t_prev));
        if ((fa < 0.0) == (fm < 0.0)) {
          a = mid;
          fa = fm;
        } else {
          b = mid;
        }
      }
      const double root = 0.5 * (a + b);
      if (ray.is_zero(ray.move(v_prev, root - t_prev), opts.zero_threshold)) return root;
    }

    if (opts.source == FringeSource::overlap) {
      // grazing zero: O dips to the threshold without Re chi changing sign
      const double o = ray.overlap(v);
      if (o_prev < o_prev2 && o_prev <= o && o_prev < 1e-6) {
        double a = t_prev2, b = t;
        const double g = (std::sqrt(5.0) - 1.0) / 2.0;
        auto eval = [&](double s) { return ray.overlap(ray.move(v_prev2, s - t_prev2)); };
        double c = b - g * (b - a), d = a + g * (b - a);
        double fc = eval(c), fd = eval(d);
        while (b - a > opts.relative_tolerance * b) {
          if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = eval(c);
          } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = eval(d);
          }
        }
        if (std::min(fc, fd) <= opts.zero_threshold) return fc < fd ? c : d;
      }
      o_prev2 = o_prev;
      o_prev = o;
    }

    t_prev2 = t_prev;
    v_prev2 = v_prev;
    t_prev = t;
    v_prev = std::move(v);
    f_prev = f;
  }
  return std::nullopt;
}

FringeReport central_fringe_area(const FockVector& psi, const FringeOptions& opts,
                                 double tail_tolerance) {
  if (opts.n_directions < 4) fail(ErrorKind::validation, "central_fringe_area needs >= 4 directions");
  refuse_flagged(psi, tail_tolerance, "central_fringe_area");

  FringeReport rep;
  rep.source = opts.search.source;
  rep.search_radius = opts.search.search_radius;
  rep.lambda_zero.resize(static_cast<std::size_t>(opts.n_directions));
  const double step = 2.0 * std::numbers::pi / opts.n_directions;

  parallel_for(rep.lambda_zero.size(), [&](std::size_t k) {
    const double theta = step * static_cast<double>(k);
    const auto r = first_zero(psi, theta, opts.search, tail_tolerance);
    rep.lambda_zero[k] = {theta, r.value_or(opts.search.search_radius), r.has_value()};
  });

  int found = 0;
  for (const auto& d : rep.lambda_zero) found += d.found ? 1 : 0;
  rep.zero_fraction = static_cast<double>(found) / opts.n_directions;
  if (rep.zero_fraction < opts.min_zero_fraction) {
    std::ostringstream os;
    os << "central fringe area undefined: only " << found << " of " << opts.n_directions
       << " directions have a first zero within radius " << opts.search.search_radius;
    fail(ErrorKind::solver, os.str());
  }

  const auto radius2 = [&](double theta) {
    const double r = first_zero(psi, theta, opts.search, tail_tolerance)
                         .value_or(opts.search.search_radius);
    return r * r;
  };
  std::vector<double> piece(rep.lambda_zero.size());
  std::vector<int> extra(rep.lambda_zero.size(), 0);
  parallel_for(piece.size(), [&](std::size_t k) {
    struct Span {
      double a, fa, b, fb;
      int depth;
    };
    const auto& lo = rep.lambda_zero[k];
    const auto& hi = rep.lambda_zero[(k + 1) % rep.lambda_zero.size()];
    std::vector<Span> stack{{lo.theta, lo.radius * lo.radius, lo.theta + step,
                             hi.radius * hi.radius, 0}};
    double area = 0.0;
    while (!stack.empty()) {
      const Span s = stack.back();
      stack.pop_back();
      const double m = 0.5 * (s.a + s.b);
      const double fm = radius2(m);
      ++extra[k];
      const double coarse = 0.5 * (s.b - s.a) * (s.fa + s.fb);
      const double fine = 0.25 * (s.b - s.a) * (s.fa + 2.0 * fm + s.fb);
      if (std::abs(fine - coarse) <= opts.refine_tolerance * (s.b - s.a) || s.depth >= opts.max_refine_depth) {
        area += fine;
      } else {
        stack.push_back({s.a, s.fa, m, fm, s.depth + 1});
        stack.push_back({m, fm, s.b, s.fb, s.depth + 1});
      }
    }
    piece[k] = area;
  });
  double sum = 0.0;
  rep.evaluated_directions = opts.n_directions;
  for (std::size_t k = 0; k < piece.size(); ++k) {
    sum += piece[k];
    rep.evaluated_directions += extra[k];
  }
  rep.cfa = 0.5 * sum;
  return rep;
}

}  // namespace subplanck
