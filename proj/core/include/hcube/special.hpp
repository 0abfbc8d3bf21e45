#pragma once

// Scalar functions of (entropy rate x, noise eps, order q).
//
// Logs are base 2 throughout. sigma = H^{-1}(x) always denotes the branch
// in [0, 1/2], and q0 = 1 + (1 - 2 eps)^2.

namespace hcube {

/// Baseline exponent 1 + (1-2 eps)^2.
double q0_of(double eps);

double binary_entropy(double t);
double inv_binary_entropy(double x);

/// y(x, e), the coupling parameter inside Phi. Stable at e = 0 and e = 1/2.
double y_coupling(double x, double e);

/// Phi(x, e). Note phi_eps uses e = 2 eps (1 - eps).
double big_phi(double x, double e);
double phi_eps(double x, double eps);

/// d phi_eps / dx. Exact expression; endpoints use their limits
/// (1 at x = 0 when eps > 0, 1/q0 at x = 1).
double phi_prime(double x, double eps);

/// The alpha in [0,1] maximizing phi_eps(alpha) - s alpha. Solves
/// phi_prime(alpha) = s when s lies strictly between the endpoint slopes.
double phi_prime_inv(double s, double eps);

/// Closed form of d phi / d eps at eps = 0.
double dphi_deps_at_zero(double x);

/// g(alpha) = 1 - alpha - alpha phi_eps(alpha) / (1 - alpha), with g(1) = 1/q0.
double g_alpha(double alpha, double eps);
/// Unique alpha with g(alpha) = target, target in [1/q0, 1].
double alpha0_solve(double target, double eps);

double psi_2q(double x, double eps, double q);
double kappa_2q(double x, double eps, double q);

/// Classic Mrs. Gerber function 1 - H(eps * H^{-1}(1 - x)), a*b = a + b - 2ab.
double mgl_psi(double x, double eps);

/// Log-Sobolev constant C(x); C(0) = 2 ln 2.
double log_sobolev_C(double x);

/// max(0, (q - q0) / (q0 (q - 1))).
double x_threshold(double q, double eps);
/// (1 - sqrt(q - 1)) / 2 for q <= 2, else 0.
double eps_threshold(double q);

struct BoundParams {
  double x;
  double eps;
  double q;
  double sigma;
  double q0;
  double y_def;  // (q-1) x / q + 1 / q
};

BoundParams make_bound_params(double x, double eps, double q);

}  // namespace hcube
