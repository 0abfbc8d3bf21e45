#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "hcube/bounds.hpp"
#include "hcube/error.hpp"
#include "hcube/extremal.hpp"
#include "hcube/special.hpp"

namespace hcube {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log2_binom(int n, int k) {
  return (std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)) / std::numbers::ln2;
}

// log2 of a^d (1-a)^(n-d) with 0^0 = 1.
double log2_flip_weight(double a, int d, int n) {
  double out = 0.0;
  if (d > 0) out += a > 0.0 ? d * std::log2(a) : kNegInf;
  if (n - d > 0) out += a < 1.0 ? (n - d) * std::log2(1.0 - a) : kNegInf;
  return out;
}

double log2_sum(const std::vector<double>& terms) {
  double m = kNegInf;
  for (double t : terms) m = std::max(m, t);
  if (m == kNegInf) return kNegInf;
  double s = 0.0;
  for (double t : terms) s += std::exp2(t - m);
  return m + std::log2(s);
}

double log2_add(double a, double b) { return log2_sum({a, b}); }

struct Level {
  int radius;
  double log2_height;
  double log2_fraction;
};

// Validated spheres with equal radii merged and sorted by radius.
std::vector<Level> levels_of(const RadialProfile& f) {
  if (f.n < 0) throw Error(ErrorCode::DomainError, "profile dimension must be >= 0");
  if (!(f.uniform >= 0.0) || !std::isfinite(f.uniform)) {
    throw Error(ErrorCode::NegativeValue, "profile uniform part must be finite and >= 0");
  }
  std::vector<SphereTerm> s = f.spheres;
  for (const SphereTerm& t : s) {
    if (t.radius < 0 || t.radius > f.n) {
      throw Error(ErrorCode::RadiusOutOfRange, "sphere radius " + std::to_string(t.radius) + " not in [0, n]");
    }
    if (std::isnan(t.log2_height) || t.log2_height == std::numeric_limits<double>::infinity()) {
      throw Error(ErrorCode::NonFiniteValue, "sphere height must be finite");
    }
  }
  std::sort(s.begin(), s.end(), [](const SphereTerm& a, const SphereTerm& b) { return a.radius < b.radius; });
  std::vector<Level> out;
  for (const SphereTerm& t : s) {
    if (!out.empty() && out.back().radius == t.radius) {
      out.back().log2_height = log2_add(out.back().log2_height, t.log2_height);
    } else {
      out.push_back({t.radius, t.log2_height, log2_sphere_fraction(f.n, t.radius)});
    }
  }
  return out;
}

// log2 of sum over |y| = s of P(x -> y) for a fixed x with |x| = r.
double log2_kernel(int n, int r, int s, double eta) {
  std::vector<double> terms;
  for (int j = std::max(0, r - s); j <= r; ++j) {
    const int i = s - r + j;
    if (i > n - r) break;
    const int d = i + j;
    terms.push_back(log2_binom(r, j) + log2_binom(n - r, i) + log2_flip_weight(eta, d, n));
  }
  return log2_sum(terms);
}

void require_tightness_params(double q, double eps, double x, int n) {
  if (!(q > 1.0) || !std::isfinite(q)) throw Error(ErrorCode::ParamOutOfRange, "q must exceed 1");
  if (!(eps > 0.0 && eps < 0.5)) throw Error(ErrorCode::ParamOutOfRange, "eps must lie in (0, 1/2)");
  if (!(x > 0.0 && x < 1.0)) throw Error(ErrorCode::ParamOutOfRange, "x must lie in (0, 1)");
  if (n < 1) throw Error(ErrorCode::ParamOutOfRange, "n must be >= 1");
}

int sphere_radius(double alpha, int n) {
  const double sigma = inv_binary_entropy(std::clamp(alpha, 0.0, 1.0));
  return std::clamp(static_cast<int>(std::floor(sigma * n)), 0, n);
}

// Ent_q(f / ||f||_1) / n.
double profile_rate(const RadialProfile& f, double q) {
  const double m1 = profile_log2_moment(f, 1.0);
  return (profile_log2_moment(f, q) - q * m1) / ((q - 1.0) * f.n);
}

// Uniform value c and sphere value v = 2^{log2_v} with c (1 - s) + v s = 1.
RadialProfile sphere_with_floor(int n, int r, double log2_v) {
  const double lf = log2_sphere_fraction(n, r);
  const double sv = std::exp2(lf + log2_v);
  const double c = std::max(0.0, (1.0 - sv) / -std::expm1(lf * std::numbers::ln2));
  const double v = std::exp2(log2_v);
  RadialProfile p;
  p.n = n;
  p.uniform = c;
  const double rel = c / v;
  p.spheres.push_back({r, rel >= 1.0 ? kNegInf : log2_v + std::log2(-std::expm1(std::log(rel)))});
  return p;
}

struct Evaluation {
  double rate;
  double lhs;
  double rhs;
  std::optional<CubeFunction> function;
  double kappa = 0.0;
};

Evaluation evaluate_renyi2(const RadialProfile& p, double eps, double q, TightnessMode mode) {
  Evaluation e;
  if (mode == TightnessMode::Explicit) {
    CubeFunction f = profile_function(p);
    const CheckReport r = check_renyi2_mgl(f, eps, q);
    e.rate = r.extras.front().second;
    e.lhs = r.lhs;
    e.rhs = r.rhs;
    e.function = std::move(f);
    return e;
  }
  const double eta = 2.0 * eps * (1.0 - eps);
  e.rate = std::clamp(profile_rate(p, q), 0.0, 1.0);
  e.lhs = (profile_log2_noisy_energy(p, eta) - 2.0 * profile_log2_moment(p, 1.0)) / p.n;
  e.rhs = psi_2q(e.rate, eps, q);
  return e;
}

Evaluation evaluate_nhc(const RadialProfile& p, double eps, double q, TightnessMode mode) {
  Evaluation e;
  if (mode == TightnessMode::Explicit) {
    CubeFunction f = profile_function(p);
    const CheckReport r = check_nhc(f, eps, q);
    e.rate = r.extras[0].second;
    e.kappa = r.extras[1].second;
    e.lhs = r.lhs / p.n;
    e.rhs = r.rhs / p.n;
    e.function = std::move(f);
    return e;
  }
  const double eta = 2.0 * eps * (1.0 - eps);
  e.rate = std::clamp(profile_rate(p, q), 0.0, 1.0);
  e.kappa = kappa_2q(e.rate, eps, q);
  e.lhs = 0.5 * profile_log2_noisy_energy(p, eta) / p.n;
  e.rhs = profile_log2_moment(p, e.kappa) / (e.kappa * p.n);
  return e;
}

TightnessInstance renyi2_instance(double q, double eps, double x, int n, TightnessMode mode) {
  const double N = (q - 1.0) * x / q;
  const OmegaMax om = omega_max_phi_nu(q, N, eps);
  const int r = sphere_radius(om.argmax.alpha, n);
  const double nu = om.argmax.nu;
  const double lf = log2_sphere_fraction(n, r);
  const auto profile_at = [&](double delta) { return sphere_with_floor(n, r, (nu - delta) * n); };
  const auto rate_at = [&](double delta) { return profile_rate(profile_at(delta), q); };

  // Smallest delta with rate <= x; at delta = nu the function is constant.
  // Below lo the floor value would turn negative.
  double lo = nu + lf / n;
  double hi = nu;
  double delta = lo;
  if (rate_at(lo) > x) {
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (rate_at(mid) > x) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    delta = hi;
  }

  TightnessInstance t{TightnessKind::Renyi2, q, eps, x, n, profile_at(delta), std::nullopt, 0, 0, 0, 0, delta, 0, 0};
  Evaluation e = evaluate_renyi2(t.profile, eps, q, mode);
  t.function = std::move(e.function);
  t.rate = e.rate;
  t.lhs = e.lhs;
  t.rhs = e.rhs;
  t.slack = e.rhs - e.lhs;
  return t;
}

TightnessInstance nhc_instance(double q, double eps, double x, int n, TightnessMode mode) {
  const double N = (q - 1.0) * x / q;
  const double q0 = q0_of(eps);
  std::vector<LevelPoint> points;
  double offset = 0.0;
  if (N + 1.0 / q <= 1.0 / q0) {
    // kappa = q0: a level set of rate 1 - offset with value rate offset,
    // plus the set carrying the q-norm.
    const double a1 = (1.0 / q0 - 1.0 / q - N) / (1.0 / q0 - 1.0 / q);
    offset = 1.0 / std::sqrt(static_cast<double>(n));
    points = {{a1, (1.0 - a1) / q0}, {1.0 - offset, offset}};
  } else if (corner_kappa(q, N, eps) >= q) {
    points = {{1.0 - x, x}};
  } else {
    const double a0 = alpha0_solve(N + 1.0 / q, eps);
    points = {{0.0, N + 1.0 / q}, {a0, 1.0 - a0}};
  }

  RadialProfile spikes;
  spikes.n = n;
  for (const LevelPoint& pt : points) spikes.spheres.push_back({sphere_radius(pt.alpha, n), pt.nu * n});
  const double m1 = profile_log2_moment(spikes, 1.0);
  for (SphereTerm& s : spikes.spheres) s.log2_height -= m1;

  // Mix in the uniform density, weight 1 - 2^t, until the rate comes down to
  // x. The rate is increasing in t and vanishes as t -> -inf.
  const auto mixed = [&](double t) {
    RadialProfile m = spikes;
    m.uniform = -std::expm1(t * std::numbers::ln2);
    for (SphereTerm& s : m.spheres) s.log2_height += t;
    return m;
  };
  RadialProfile p = spikes;
  if (profile_rate(spikes, q) > x) {
    double lo = -2.0 * n;
    double hi = 0.0;
    for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (profile_rate(mixed(mid), q) >= x) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    p = mixed(hi);
  }

  TightnessInstance t{TightnessKind::Nhc, q, eps, x, n, p, std::nullopt, 0, 0, 0, 0, offset, 0, 0};
  Evaluation e = evaluate_nhc(t.profile, eps, q, mode);
  t.function = std::move(e.function);
  t.rate = e.rate;
  t.lhs = e.lhs;
  t.rhs = e.rhs;
  t.slack = e.rhs - e.lhs;
  t.kappa = e.kappa;

  // ||f||_p is nondecreasing in p and ||T f||_2 >= ||f||_1 for f >= 0.
  const double target = t.lhs * n;
  const auto norm = [&](double pw) { return profile_log2_moment(t.profile, pw) / pw; };
  double lo = 1.0;
  double hi = q0;
  if (norm(hi) <= target) {
    t.kappa_achieved = hi;
  } else if (norm(lo) >= target) {
    t.kappa_achieved = lo;
  } else {
    for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (norm(mid) < target) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    t.kappa_achieved = 0.5 * (lo + hi);
  }
  return t;
}

}  // namespace

double log2_sphere_fraction(int n, int r) {
  if (n < 0 || r < 0 || r > n) throw Error(ErrorCode::RadiusOutOfRange, "sphere radius not in [0, n]");
  return log2_binom(n, r) - n;
}

double profile_log2_moment(const RadialProfile& f, double p) {
  if (!(p > 0.0) || !std::isfinite(p)) throw Error(ErrorCode::InvalidOrder, "moment order must be positive");
  const std::vector<Level> levels = levels_of(f);
  const double log2_u = f.uniform > 0.0 ? std::log2(f.uniform) : kNegInf;
  std::vector<double> terms;
  double covered = 0.0;
  for (const Level& l : levels) {
    covered += std::exp2(l.log2_fraction);
    terms.push_back(p * log2_add(log2_u, l.log2_height) + l.log2_fraction);
  }
  const double rest = 1.0 - covered;
  if (f.uniform > 0.0 && rest > 0.0) terms.push_back(p * log2_u + std::log2(rest));
  return log2_sum(terms);
}

double profile_log2_noisy_energy(const RadialProfile& f, double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw Error(ErrorCode::InvalidNoise, "flip probability must lie in [0, 1]");
  const std::vector<Level> levels = levels_of(f);
  const double log2_u = f.uniform > 0.0 ? std::log2(f.uniform) : kNegInf;
  // f = u + sum_i h_i 1_{S_i}; T fixes constants, so
  // <T f, f> = u^2 + 2 u sum_i h_i |S_i|/2^n + sum_{i,j} h_i h_j <T 1_{S_i}, 1_{S_j}>.
  std::vector<double> terms{2.0 * log2_u};
  for (const Level& a : levels) {
    terms.push_back(1.0 + log2_u + a.log2_height + a.log2_fraction);
    for (const Level& b : levels) {
      terms.push_back(a.log2_height + b.log2_height + a.log2_fraction + log2_kernel(f.n, a.radius, b.radius, eta));
    }
  }
  return log2_sum(terms);
}

CubeFunction profile_function(const RadialProfile& f) {
  if (f.n > dimension_cap()) {
    throw Error(ErrorCode::DimensionTooLarge, "explicit profile needs n <= " + std::to_string(dimension_cap()));
  }
  const std::vector<Level> levels = levels_of(f);
  std::vector<double> by_weight(static_cast<std::size_t>(f.n) + 1, f.uniform);
  for (const Level& l : levels) by_weight[static_cast<std::size_t>(l.radius)] += std::exp2(l.log2_height);
  std::vector<double> values(std::size_t{1} << f.n);
  for (std::size_t y = 0; y < values.size(); ++y) values[y] = by_weight[static_cast<std::size_t>(popcount(y))];
  return CubeFunction(f.n, std::move(values));
}

TightnessKind parse_tightness_kind(const std::string& s) {
  if (s == "renyi2") return TightnessKind::Renyi2;
  if (s == "nhc") return TightnessKind::Nhc;
  throw Error(ErrorCode::ParamOutOfRange, "unknown tightness kind '" + s + "' (expected renyi2 or nhc)");
}

std::string to_string(TightnessKind kind) { return kind == TightnessKind::Renyi2 ? "renyi2" : "nhc"; }

TightnessInstance tightness_instance(TightnessKind kind, double q, double eps, double x, int n, TightnessMode mode) {
  require_tightness_params(q, eps, x, n);
  if (mode == TightnessMode::Explicit && n > dimension_cap()) {
    throw Error(ErrorCode::ParamOutOfRange, "explicit mode needs n <= " + std::to_string(dimension_cap()));
  }
  return kind == TightnessKind::Renyi2 ? renyi2_instance(q, eps, x, n, mode) : nhc_instance(q, eps, x, n, mode);
}

}  // namespace hcube
