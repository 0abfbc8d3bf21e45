#pragma once

// The (alpha, nu) level-set picture: alpha is the log2-size rate of a level
// set and nu the log2-value rate of f on it. Everything here is per
// coordinate.

#include <optional>
#include <string>
#include <vector>

#include "hcube/cube.hpp"

namespace hcube {

struct OmegaDomain {
  double q;
  double N;  // 0 < N <= (q-1)/q

  OmegaDomain(double q, double N);
  /// qN/(q-1), the entropy rate this domain encodes.
  double x() const;
  /// (1 - x, x), where the two upper constraints meet.
  double corner_alpha() const;
};

struct LevelPoint {
  double alpha;
  double nu;
};

enum class OmegaVariant { Omega0, Omega };

inline constexpr double kOmegaTolerance = 1e-12;
inline constexpr double kAnchorTolerance = 1e-10;

bool omega_contains(const OmegaDomain& dom, LevelPoint p, OmegaVariant variant = OmegaVariant::Omega);

/// Upper boundary of Omega: nu = min(N + (1-alpha)/q, 1 - alpha).
double omega_upper_nu(const OmegaDomain& dom, double alpha);

struct OmegaMax {
  double value;
  LevelPoint argmax;
};

/// max of phi_eps(alpha) + nu over Omega_0, searched on the two segments of
/// the upper boundary.
OmegaMax omega_max_phi_nu(double q, double N, double eps);

/// f_{alpha1,nu1}(p): the kappa solving
///   phi_eps(alpha) + nu = max{(alpha1-1)/kappa + nu1, (alpha-1)/kappa + nu}.
/// Each branch is increasing in kappa, so the solution is the smaller of the
/// two single-branch roots.
double implicit_kappa(LevelPoint anchor, LevelPoint p, double q, double N, double eps);

struct KappaMax {
  double value;
  LevelPoint argmax;
  /// Both branches of the defining equation are active at the argmax.
  bool second_type;
};

/// M(alpha1, nu1) = max over Omega of implicit_kappa, with its argmax.
KappaMax big_m_point(LevelPoint anchor, double q, double N, double eps);
double big_m(LevelPoint anchor, double q, double N, double eps);

/// -x / phi_eps(1 - x), the corner value; the regime switch is at k = q.
double corner_kappa(double q, double N, double eps);

/// Root in (1 - x, 1) of (a-1)/phi_eps(a) = (a - alpha1)/(a - (1 - nu1)) for
/// the anchor (alpha1, N + (1 - alpha1)/q). Needs corner_kappa < q.
double alpha_star(double alpha1, double q, double N, double eps);

/// f = uniform + sum_i 2^{log2_height_i} on the sphere |y| = radius_i.
struct SphereTerm {
  int radius;
  double log2_height;
};

struct RadialProfile {
  int n = 0;
  double uniform = 0.0;
  std::vector<SphereTerm> spheres;
};

/// log2 E f^p, p > 0. Works for any n.
double profile_log2_moment(const RadialProfile& f, double p);
/// log2 <T_eta f, f>.
double profile_log2_noisy_energy(const RadialProfile& f, double eta);
/// log2 |S_r| - n, the sphere's share of the cube.
double log2_sphere_fraction(int n, int r);
/// The explicit function; needs n <= dimension_cap().
CubeFunction profile_function(const RadialProfile& f);

enum class TightnessKind { Renyi2, Nhc };
enum class TightnessMode { Explicit, Analytic };

TightnessKind parse_tightness_kind(const std::string& s);
std::string to_string(TightnessKind kind);

struct TightnessInstance {
  TightnessKind kind;
  double q;
  double eps;
  double x;
  int n;
  RadialProfile profile;
  std::optional<CubeFunction> function;  // explicit mode only
  double rate;   // Ent_q(f)/n of the instance
  double lhs;    // per coordinate
  double rhs;    // per coordinate
  double slack;  // rhs - lhs
  double delta;  // renyi2: value correction on the sphere; nhc: offset d of the near-full level set
  double kappa;  // kappa_2q at the achieved rate, nhc only
  double kappa_achieved;  // p with ||T_eps f||_2 = ||f||_p, nhc only
};

/// renyi2: mean-1 mixture of the uniform density and the sphere of radius
/// floor(H^{-1}(alpha*) n), with Ent_q(f)/n <= x. lhs = Ent_2(T_eps f)/n,
/// rhs = psi_2q(rate).
/// nhc: one or two spheres as in the kappa tightness argument, scaled to mean
/// 1 and mixed with the uniform density until Ent_q(f)/n = x from above.
/// lhs = log2 ||T_eps f||_2 / n, rhs = log2 ||f||_kappa / n.
TightnessInstance tightness_instance(TightnessKind kind, double q, double eps, double x, int n,
                                     TightnessMode mode = TightnessMode::Analytic);

}  // namespace hcube
