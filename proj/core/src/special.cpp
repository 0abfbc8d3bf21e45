#include "hcube/special.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "hcube/error.hpp"
#include "hcube/roots.hpp"

namespace hcube {

namespace {

constexpr double kLn2 = std::numbers::ln2;

std::string num(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void check_unit(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) throw Error(ErrorCode::DomainError, std::string(name) + " = " + num(v) + " outside [0, 1]");
}

void check_eps(double eps) {
  if (!(eps >= 0.0 && eps <= 0.5)) throw Error(ErrorCode::DomainError, "eps = " + num(eps) + " outside [0, 1/2]");
}

void check_q(double q) {
  if (!(q > 1.0) || !std::isfinite(q)) throw Error(ErrorCode::DomainError, "q = " + num(q) + " must be a finite value > 1");
}

// D(t) = 1 - H(1/2 - t) for t in [0, 1/2].
double entropy_gap(double t) {
  const double u = 2.0 * t;
  if (u >= 1.0) return 1.0;
  if (u < 0.1) {
    // (1+u) ln(1+u) + (1-u) ln(1-u) = sum_k u^{2k} / (k (2k-1))
    const double u2 = u * u;
    double term = u2;
    double acc = 0.0;
    for (int k = 1; k <= 12; ++k) {
      acc += term / (k * (2.0 * k - 1.0));
      term *= u2;
    }
    return acc / (2.0 * kLn2);
  }
  return ((1.0 + u) * std::log1p(u) + (1.0 - u) * std::log1p(-u)) / (2.0 * kLn2);
}

double entropy_gap_slope(double t) {
  const double u = 2.0 * t;
  return (std::log1p(u) - std::log1p(-u)) / kLn2;
}

// Inverse of entropy_gap on [0, 1/2].
double gap_inverse(double z) {
  if (z <= 0.0) return 0.0;
  if (z >= 1.0) return 0.5;
  const double guess = std::min(0.49, std::sqrt(z * kLn2 / 2.0));
  return roots::newton_increasing(entropy_gap, entropy_gap_slope, z, 0.0, 0.5, guess);
}

double h_slope(double s) { return std::log2((1.0 - s) / s); }

// sigma = H^{-1}(x) together with t = 1/2 - sigma, each carried at full
// relative precision.
struct Sigma {
  double sigma;
  double t;
};

Sigma sigma_of(double x) {
  if (x <= 0.0) return {0.0, 0.5};
  if (x >= 1.0) return {0.5, 0.0};
  if (x > 0.5) {
    const double t = gap_inverse(1.0 - x);
    return {0.5 - t, t};
  }
  const double guess = std::clamp(x / std::log2(1.0 / x), 1e-300, 0.11);
  const double s = roots::newton_increasing(binary_entropy, h_slope, x, 0.0, 0.5, guess);
  return {s, 0.5 - s};
}

// Quantities entering Phi(x, e): y, d = sigma - y, r = 1 - sigma - y.
struct Coupling {
  Sigma sg;
  double ratio;  // y / e
  double y;
  double d;
  double rest;
};

Coupling coupling(double x, double e) {
  Coupling c{sigma_of(x), 0.0, 0.0, 0.0, 0.0};
  const double sigma = c.sg.sigma;
  const double s = sigma * (0.5 + c.sg.t);
  if (s > 0.0) c.ratio = 2.0 * s / (std::sqrt(e * e + 4.0 * (1.0 - 2.0 * e) * s) + e);
  const double ratio = c.ratio;
  c.y = e * ratio;
  c.rest = 0.5 + c.sg.t - c.y;
  // (sigma - y)(1 - sigma - y) e^2 = y^2 (1 - e)^2 avoids the cancellation in sigma - y.
  c.d = ratio * ratio * (1.0 - e) * (1.0 - e) / c.rest;
  return c;
}

double xlog2_ratio(double a, double num_, double den) {
  if (a == 0.0) return 0.0;
  return a * std::log2(num_ / den);
}

double delta_of(double eps) { return 2.0 * eps * (1.0 - eps); }

}  // namespace

double q0_of(double eps) {
  check_eps(eps);
  const double rho = 1.0 - 2.0 * eps;
  return 1.0 + rho * rho;
}

double binary_entropy(double t) {
  check_unit(t, "t");
  if (t == 0.0 || t == 1.0) return 0.0;
  if (t > 0.5) t = 1.0 - t;
  return -t * std::log2(t) - (1.0 - t) * std::log1p(-t) / kLn2;
}

double inv_binary_entropy(double x) {
  check_unit(x, "x");
  return sigma_of(x).sigma;
}

double y_coupling(double x, double e) {
  check_unit(x, "x");
  check_eps(e);
  return coupling(x, e).y;
}

double big_phi(double x, double e) {
  check_unit(x, "x");
  check_eps(e);
  if (x == 1.0) return 0.0;
  const Coupling c = coupling(x, e);
  const double sigma = c.sg.sigma;
  const double one_minus_sigma = 0.5 + c.sg.t;
  double acc = x - 1.0;
  if (c.y > 0.0) {
    acc += c.y * (std::log2(sigma) + std::log2(one_minus_sigma) - 2.0 * std::log2(c.y));
    acc += 2.0 * c.y * std::log2(e);
  }
  acc += xlog2_ratio(c.d, sigma, c.d);
  acc += xlog2_ratio(c.rest, one_minus_sigma, c.rest);
  acc += (1.0 - 2.0 * c.y) * std::log1p(-e) / kLn2;
  return 0.5 * acc;
}

double phi_eps(double x, double eps) {
  check_eps(eps);
  return big_phi(x, delta_of(eps));
}

double phi_prime(double x, double eps) {
  check_unit(x, "x");
  check_eps(eps);
  const double e = delta_of(eps);
  const Coupling c = coupling(x, e);
  const double sigma = c.sg.sigma;
  if (sigma == 0.0) return e > 0.0 ? 1.0 : 0.5;
  const double gap = 2.0 * c.sg.t;  // 1 - 2 sigma
  if (gap == 0.0) return 0.5 * sigma / c.d;
  if (sigma < 0.25) {
    // log((1 - sigma - y) / (sigma - y)) / (2 log((1 - sigma) / sigma)), in logs so that
    // sigma - y may lie far below the double range.
    const double log_d =
        e > 0.0 ? 2.0 * std::log(c.ratio) + 2.0 * std::log1p(-e) - std::log(c.rest) : std::log(sigma);
    return 0.5 * (std::log(c.rest) - log_d) / (std::log(0.5 + c.sg.t) - std::log(sigma));
  }
  return 0.5 * std::log1p(gap / c.d) / std::log1p(gap / sigma);
}

double phi_prime_inv(double s, double eps) {
  const double q0 = q0_of(eps);
  if (!(s >= 1.0 / q0 - 1e-12 && s <= 1.0 + 1e-12)) {
    throw Error(ErrorCode::SlopeOutOfRange, "slope " + num(s) + " outside [1/q0, 1] = [" + num(1.0 / q0) + ", 1]");
  }
  if (s >= phi_prime(0.0, eps)) return 0.0;
  if (s <= phi_prime(1.0, eps)) return 1.0;
  constexpr double kSplit = 0.01;
  if (s <= phi_prime(kSplit, eps)) {
    return roots::bisect([&](double a) { return phi_prime(a, eps) - s; }, kSplit, 1.0, 1e-15);
  }
  // phi' approaches 1 only logarithmically, so search over u = -ln(alpha).
  const double u_max = -std::log(std::numeric_limits<double>::denorm_min());
  const double u = roots::bisect([&](double v) { return s - phi_prime(std::exp(-v), eps); }, -std::log(kSplit),
                                 u_max, 1e-13);
  return std::exp(-u);
}

double dphi_deps_at_zero(double x) {
  check_unit(x, "x");
  const double t = sigma_of(x).t;
  // 2 sqrt(sigma (1 - sigma)) - 1 = -4t^2 / (1 + sqrt(1 - 4t^2))
  const double w = 4.0 * t * t;
  return -(w / (1.0 + std::sqrt(1.0 - w))) / kLn2;
}

double g_alpha(double alpha, double eps) {
  check_unit(alpha, "alpha");
  const double q0 = q0_of(eps);
  if (alpha == 1.0) return 1.0 / q0;
  return 1.0 - alpha - alpha * phi_eps(alpha, eps) / (1.0 - alpha);
}

double alpha0_solve(double target, double eps) {
  const double q0 = q0_of(eps);
  if (!(target >= 1.0 / q0 - 1e-12 && target <= 1.0 + 1e-12)) {
    throw Error(ErrorCode::TargetOutOfRange, "target " + num(target) + " outside [1/q0, 1] = [" + num(1.0 / q0) + ", 1]");
  }
  if (target >= 1.0) return 0.0;
  if (target <= 1.0 / q0) return 1.0;
  return roots::bisect([&](double a) { return g_alpha(a, eps) - target; }, 0.0, 1.0, 1e-15);
}

double psi_2q(double x, double eps, double q) {
  check_unit(x, "x");
  check_eps(eps);
  check_q(q);
  if (phi_prime(1.0 - x, eps) < 1.0 / q) {
    const double a0 = phi_prime_inv(1.0 / q, eps);
    return 2.0 * ((q - 1.0) * x / q + phi_eps(a0, eps) + (1.0 - a0) / q);
  }
  return 2.0 * (phi_eps(1.0 - x, eps) + x);
}

double kappa_2q(double x, double eps, double q) {
  check_unit(x, "x");
  check_eps(eps);
  check_q(q);
  const double q0 = q0_of(eps);
  if (x == 0.0 || eps == 0.0 || eps == 0.5) return q0;
  const double y = (q - 1.0) * x / q + 1.0 / q;
  double kappa;
  if (y <= 1.0 / q0) {
    kappa = q0;
  } else {
    const double k1 = -x / phi_eps(1.0 - x, eps);
    if (k1 >= q) {
      kappa = k1;
    } else {
      const double a0 = alpha0_solve(y, eps);
      kappa = a0 >= 1.0 ? q0 : (a0 - 1.0) / phi_eps(a0, eps);
    }
  }
  return std::clamp(kappa, 1.0, q0);
}

double mgl_psi(double x, double eps) {
  check_unit(x, "x");
  check_eps(eps);
  return entropy_gap((1.0 - 2.0 * eps) * gap_inverse(x));
}

double log_sobolev_C(double x) {
  check_unit(x, "x");
  if (x == 0.0) return 2.0 * kLn2;
  const double t = gap_inverse(x);
  const double w = 4.0 * t * t;
  return 2.0 * (w / (1.0 + std::sqrt(1.0 - w))) / x;
}

double x_threshold(double q, double eps) {
  check_q(q);
  const double q0 = q0_of(eps);
  return std::max(0.0, (q - q0) / (q0 * (q - 1.0)));
}

double eps_threshold(double q) {
  check_q(q);
  if (q >= 2.0) return 0.0;
  return (1.0 - std::sqrt(q - 1.0)) / 2.0;
}

BoundParams make_bound_params(double x, double eps, double q) {
  check_unit(x, "x");
  check_eps(eps);
  check_q(q);
  return BoundParams{x, eps, q, inv_binary_entropy(x), q0_of(eps), (q - 1.0) * x / q + 1.0 / q};
}

}  // namespace hcube
