#pragma once

// Inequality checks on concrete cube functions. A check never throws because
// an inequality fails; failure is reported through CheckReport::pass.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hcube/cube.hpp"

namespace hcube {

inline constexpr double kSlackTolerance = 1e-9;

struct CheckReport {
  std::string name;
  int n = 0;
  double eps = 0.0;
  std::optional<double> q;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // nonnegative means the inequality holds
  bool pass = true;
  std::vector<std::pair<std::string, double>> extras;
};

enum class Sense { LhsBelowRhs, LhsAboveRhs };

/// slack = rhs - lhs for `lhs <= rhs`, lhs - rhs for `lhs >= rhs`.
CheckReport make_report(std::string name, int n, double eps, std::optional<double> q, double lhs, double rhs,
                        Sense sense = Sense::LhsBelowRhs);

/// ||T_eps f||_q <= ||f||_{1 + (1-2eps)^2 (q-1)}, compared as log2 norms.
CheckReport check_hc_baseline(const CubeFunction& f, double eps, double q);

/// Entropy form of Mrs. Gerber's lemma and its linearization, for f >= 0
/// rescaled to E f = 1. The third report compares the two right-hand sides.
struct MglReports {
  CheckReport mgl;
  CheckReport linear;
  CheckReport dominance;
};
MglReports check_mgl(const CubeFunction& f, double eps);

/// Ent_2(T_eps f)/n <= psi_2q(Ent_q(f)/n, eps) for f >= 0.
CheckReport check_renyi2_mgl(const CubeFunction& f, double eps, double q);

/// Normalized Renyi entropy rate Ent_q(|f| / ||f||_1) / n, clamped to [0, 1].
double entropy_rate(const CubeFunction& f, double q);

/// kappa_2q evaluated at the entropy rate of f.
double kappa_for(const CubeFunction& f, double eps, double q);

/// ||T_eps f||_2 <= ||f||_kappa in log2 form. Extras carry kappa and the
/// baseline log2 ||f||_{q0}.
CheckReport check_nhc(const CubeFunction& f, double eps, double q);

/// F(q) = kappa_2q(x(q), eps, q) with x(q) the order-q entropy rate of f.
double fixed_point_map(const CubeFunction& f, double eps, double q);

/// The unique q in (1, q0] with -x(q) / phi_eps(1 - x(q)) = q.
double best_q(const CubeFunction& f, double eps);

/// E(f,f) >= C(Ent_2(|f|/||f||_1)/n) Ent(f^2) with ||f||_2 = 1. Second report
/// checks the right side against 2 ln 2 Ent(f^2).
struct LogSobolevReports {
  CheckReport main;
  CheckReport gross;
};
LogSobolevReports check_log_sobolev(const CubeFunction& f);

/// <T_eps f, f> <= 2^{(2 Phi(x, eps) + 1 - x) n} ||f||_2^2 with 2^{xn} the
/// support size; f rescaled to ||f||_2 = 1.
CheckReport check_bounded_support(const CubeFunction& f, double eps);

/// Largest adjacency eigenvalue of the subgraph induced by `points`.
double max_induced_eigenvalue(int n, std::vector<std::uint64_t> points);

/// lambda(A) <= n - C(k/n) k / 2 with k = log2(2^n / |A|), the form implied
/// by the log-Sobolev check under this Dirichlet-form normalization.
CheckReport eigen_bound_check(int n, std::vector<std::uint64_t> points);

/// Points of the Hamming ball of radius r around 0.
std::vector<std::uint64_t> hamming_ball_points(int n, int r);

}  // namespace hcube
