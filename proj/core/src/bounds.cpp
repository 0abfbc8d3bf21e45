#include "hcube/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hcube/error.hpp"
#include "hcube/roots.hpp"
#include "hcube/special.hpp"

namespace hcube {

namespace {

void require_nonzero(const CubeFunction& f) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroFunction, "function is identically zero");
}

void require_nonnegative(const CubeFunction& f) {
  if (!f.nonnegative()) throw Error(ErrorCode::NegativeValue, "check needs a nonnegative function");
}

void require_rate_dim(const CubeFunction& f) {
  if (f.dim() < 1) throw Error(ErrorCode::DomainError, "entropy-rate checks need n >= 1");
}

double log2_norm(const CubeFunction& f, double q) {
  if (f.is_zero()) return -std::numeric_limits<double>::infinity();
  return log2_lq_norm(f, q);
}

double clamp_rate(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace

CheckReport make_report(std::string name, int n, double eps, std::optional<double> q, double lhs, double rhs,
                        Sense sense) {
  CheckReport r;
  r.name = std::move(name);
  r.n = n;
  r.eps = eps;
  r.q = q;
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = sense == Sense::LhsBelowRhs ? rhs - lhs : lhs - rhs;
  r.pass = r.slack >= -kSlackTolerance;
  return r;
}

CheckReport check_hc_baseline(const CubeFunction& f, double eps, double q) {
  const NoiseParam noise(eps);
  if (!(q >= 1.0) || !std::isfinite(q)) throw Error(ErrorCode::InvalidOrder, "q must be >= 1");
  require_nonzero(f);
  const double rho = noise.rho();
  const double p = 1.0 + rho * rho * (q - 1.0);
  return make_report("hc_baseline", f.dim(), eps, q, log2_norm(noise_apply(f, noise), q), log2_lq_norm(f, p));
}

MglReports check_mgl(const CubeFunction& f, double eps) {
  const NoiseParam noise(eps);
  require_nonnegative(f);
  require_nonzero(f);
  require_rate_dim(f);
  const int n = f.dim();
  const CubeFunction g = f.scaled(1.0 / f.mean());
  const double ent = shannon_entropy(g);
  const double ent_noisy = shannon_entropy(noise_apply(g, noise));
  const double psi_rhs = n * mgl_psi(clamp_rate(ent / n), eps);
  const double rho = noise.rho();
  const double linear_rhs = rho * rho * ent;
  MglReports out{make_report("mgl", n, eps, std::nullopt, ent_noisy, psi_rhs),
                 make_report("mgl_linear", n, eps, std::nullopt, ent_noisy, linear_rhs),
                 make_report("mgl_dominance", n, eps, std::nullopt, psi_rhs, linear_rhs)};
  out.mgl.extras = {{"ent", ent}};
  return out;
}

CheckReport check_renyi2_mgl(const CubeFunction& f, double eps, double q) {
  const NoiseParam noise(eps);
  require_nonnegative(f);
  require_nonzero(f);
  require_rate_dim(f);
  const int n = f.dim();
  const double x = clamp_rate(renyi_entropy(f, q) / n);
  const double lhs = renyi_entropy(noise_apply(f, noise), 2.0) / n;
  CheckReport r = make_report("renyi2_mgl", n, eps, q, lhs, psi_2q(x, eps, q));
  r.extras = {{"x", x}};
  return r;
}

double entropy_rate(const CubeFunction& f, double q) {
  require_nonzero(f);
  if (f.dim() == 0) return 0.0;
  return clamp_rate(renyi_entropy(f.abs(), q) / f.dim());
}

double kappa_for(const CubeFunction& f, double eps, double q) { return kappa_2q(entropy_rate(f, q), eps, q); }

CheckReport check_nhc(const CubeFunction& f, double eps, double q) {
  const NoiseParam noise(eps);
  const double x = entropy_rate(f, q);
  const double kappa = kappa_2q(x, eps, q);
  const double lhs = log2_norm(noise_apply(f, noise), 2.0);
  CheckReport r = make_report("nhc", f.dim(), eps, q, lhs, log2_lq_norm(f, kappa));
  r.extras = {{"x", x}, {"kappa", kappa}, {"baseline_rhs", log2_lq_norm(f, q0_of(eps))}};
  return r;
}

double fixed_point_map(const CubeFunction& f, double eps, double q) {
  return kappa_2q(entropy_rate(f, q), eps, q);
}

double best_q(const CubeFunction& f, double eps) {
  if (!(eps > 0.0 && eps < 0.5)) throw Error(ErrorCode::DomainError, "best_q needs 0 < eps < 1/2");
  require_nonzero(f);
  require_rate_dim(f);
  const CubeFunction g = f.abs();
  if (g.is_constant()) throw Error(ErrorCode::ConstantFunction, "best_q needs a non-constant |f|");
  const double q0 = q0_of(eps);
  const auto gap = [&](double q) {
    const double x = entropy_rate(g, q);
    return -x / phi_eps(1.0 - x, eps) - q;
  };
  return roots::bisect(gap, 1.0, q0, 1e-15);
}

LogSobolevReports check_log_sobolev(const CubeFunction& f) {
  require_nonzero(f);
  const CubeFunction g = f.scaled(1.0 / lq_norm(f, 2.0));
  const double energy = dirichlet_form(g, g);
  const double rate = entropy_rate(g, 2.0);
  const double c = log_sobolev_C(rate);
  const double ent_sq = shannon_entropy(g.squared());
  const double rhs = c * ent_sq;
  LogSobolevReports out{make_report("log_sobolev", f.dim(), 0.0, std::nullopt, energy, rhs, Sense::LhsAboveRhs),
                        make_report("log_sobolev_gross", f.dim(), 0.0, std::nullopt,
                                    2.0 * std::numbers::ln2 * ent_sq, rhs)};
  out.main.extras = {{"C", c}, {"ent_f2", ent_sq}};
  return out;
}

CheckReport check_bounded_support(const CubeFunction& f, double eps) {
  const NoiseParam noise(eps);
  require_nonzero(f);
  const int n = f.dim();
  const double x = n == 0 ? 0.0 : clamp_rate(std::log2(static_cast<double>(f.support_size())) / n);
  const CubeFunction g = f.scaled(1.0 / lq_norm(f, 2.0));
  const double rhs = std::exp2((2.0 * big_phi(x, eps) + 1.0 - x) * n);
  CheckReport r = make_report("bounded_support", n, eps, std::nullopt, inner_product_noisy(g, noise), rhs);
  r.extras = {{"x", x}};
  return r;
}

}  // namespace hcube
