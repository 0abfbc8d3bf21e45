#include "hcube/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hcube/error.hpp"
#include "hcube/roots.hpp"
#include "hcube/special.hpp"

namespace hcube {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kBoundaryGrid = 4000;
constexpr double kTypeTolerance = 1e-6;

std::string num(double v) { return std::to_string(v); }

void require_eps(double eps) {
  if (!(eps >= 0.0 && eps <= 0.5)) throw Error(ErrorCode::InvalidNoise, "eps must lie in [0, 1/2], got " + num(eps));
}

// The level constraint gets the looser anchor tolerance, so the q-line
// inequality of Omega is not re-checked here.
void require_anchor(const OmegaDomain& dom, LevelPoint a) {
  const double t = kOmegaTolerance;
  const bool inside = a.alpha >= -t && a.alpha <= 1.0 + t && a.nu >= -t && a.nu <= 1.0 + t && a.alpha + a.nu <= 1.0 + t;
  if (!inside) {
    throw Error(ErrorCode::AnchorConstraintViolated,
                "anchor (" + num(a.alpha) + ", " + num(a.nu) + ") is outside Omega");
  }
  const double level = (a.alpha - 1.0) / dom.q + a.nu;
  if (std::fabs(level - dom.N) > kAnchorTolerance) {
    throw Error(ErrorCode::AnchorConstraintViolated,
                "anchor must satisfy (alpha-1)/q + nu = N; off by " + num(level - dom.N));
  }
}

// (alpha - 1) / phi_eps(alpha), continued by q0 at alpha = 1.
double own_branch_kappa(double alpha, double eps) {
  if (alpha >= 1.0) return q0_of(eps);
  return (alpha - 1.0) / phi_eps(alpha, eps);
}

struct Branches {
  double anchor;  // root of (alpha1-1)/kappa + nu1 = phi + nu, or inf
  double own;     // root of (alpha-1)/kappa + nu = phi + nu
};

Branches branches(LevelPoint a, LevelPoint p, double eps) {
  Branches b{kInf, kInf};
  const double level = phi_eps(p.alpha, eps) + p.nu;
  const double denom = a.nu - level;
  if (denom > 0.0) b.anchor = (1.0 - a.alpha) / denom;
  if (p.alpha < 1.0) b.own = own_branch_kappa(p.alpha, eps);
  return b;
}

}  // namespace

OmegaDomain::OmegaDomain(double q_, double N_) : q(q_), N(N_) {
  if (!(q > 1.0) || !std::isfinite(q)) throw Error(ErrorCode::InvalidOrder, "q must exceed 1, got " + num(q));
  const double top = (q - 1.0) / q;
  if (!(N > 0.0 && N <= top + kOmegaTolerance)) {
    throw Error(ErrorCode::ParamOutOfRange, "N must lie in (0, (q-1)/q], got " + num(N));
  }
  N = std::min(N, top);
}

double OmegaDomain::x() const { return std::min(1.0, q * N / (q - 1.0)); }

double OmegaDomain::corner_alpha() const { return 1.0 - x(); }

bool omega_contains(const OmegaDomain& dom, LevelPoint p, OmegaVariant variant) {
  const double t = kOmegaTolerance;
  if (!(p.alpha >= -t && p.alpha <= 1.0 + t)) return false;
  if (!(p.nu >= -1.0 - t && p.nu <= 1.0 + t)) return false;
  if (p.alpha + p.nu > 1.0 + t) return false;
  if ((p.alpha - 1.0) / dom.q + p.nu > dom.N + t) return false;
  if (variant == OmegaVariant::Omega && p.nu < -t) return false;
  return true;
}

double omega_upper_nu(const OmegaDomain& dom, double alpha) {
  return std::min(dom.N + (1.0 - alpha) / dom.q, 1.0 - alpha);
}

OmegaMax omega_max_phi_nu(double q, double N, double eps) {
  const OmegaDomain dom(q, N);
  require_eps(eps);
  const double corner = dom.corner_alpha();
  const auto on_q_line = [&](double a) { return phi_eps(a, eps) + dom.N + (1.0 - a) / q; };
  const auto on_diagonal = [&](double a) { return phi_eps(a, eps) + 1.0 - a; };
  const roots::Extremum first = roots::golden_max(on_q_line, 0.0, corner);
  const roots::Extremum second = roots::golden_max(on_diagonal, corner, 1.0);
  if (first.value >= second.value) return {first.value, {first.arg, omega_upper_nu(dom, first.arg)}};
  return {second.value, {second.arg, 1.0 - second.arg}};
}

double implicit_kappa(LevelPoint anchor, LevelPoint p, double q, double N, double eps) {
  const OmegaDomain dom(q, N);
  require_eps(eps);
  require_anchor(dom, anchor);
  if (!omega_contains(dom, p, OmegaVariant::Omega)) {
    throw Error(ErrorCode::PointOutsideOmega, "point (" + num(p.alpha) + ", " + num(p.nu) + ") is outside Omega");
  }
  if (p.alpha >= 1.0) return (1.0 - anchor.alpha) / anchor.nu;
  const Branches b = branches(anchor, p, eps);
  return std::min(b.anchor, b.own);
}

KappaMax big_m_point(LevelPoint anchor, double q, double N, double eps) {
  const OmegaDomain dom(q, N);
  require_eps(eps);
  require_anchor(dom, anchor);
  // Both branch roots are nondecreasing in nu, so the maximum sits on the
  // upper boundary.
  const auto along = [&](double a) {
    return implicit_kappa(anchor, {a, omega_upper_nu(dom, a)}, q, dom.N, eps);
  };
  std::vector<double> grid;
  grid.reserve(kBoundaryGrid + 2);
  for (int i = 0; i <= kBoundaryGrid; ++i) grid.push_back(static_cast<double>(i) / kBoundaryGrid);
  grid.push_back(dom.corner_alpha());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  std::vector<double> vals(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) vals[i] = along(grid[i]);

  std::vector<std::size_t> order(grid.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  const std::size_t top = std::min<std::size_t>(3, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(top), order.end(),
                    [&](std::size_t a, std::size_t b) { return vals[a] > vals[b]; });

  roots::Extremum best{grid[order[0]], vals[order[0]]};
  for (std::size_t t = 0; t < top; ++t) {
    const std::size_t i = order[t];
    const double lo = grid[i == 0 ? 0 : i - 1];
    const double hi = grid[std::min(i + 1, grid.size() - 1)];
    const roots::Extremum e = roots::golden_max(along, lo, hi, 1e-14);
    if (e.value > best.value) best = e;
  }

  const LevelPoint p{best.arg, omega_upper_nu(dom, best.arg)};
  bool second = false;
  if (p.alpha < 1.0) {
    const Branches b = branches(anchor, p, eps);
    second = std::isfinite(b.anchor) && std::fabs(b.anchor - b.own) <= kTypeTolerance * b.own;
  }
  return {best.value, p, second};
}

double big_m(LevelPoint anchor, double q, double N, double eps) { return big_m_point(anchor, q, N, eps).value; }

double corner_kappa(double q, double N, double eps) {
  const OmegaDomain dom(q, N);
  require_eps(eps);
  const double x = dom.x();
  return -x / phi_eps(1.0 - x, eps);
}

double alpha_star(double alpha1, double q, double N, double eps) {
  const OmegaDomain dom(q, N);
  require_eps(eps);
  const double corner = dom.corner_alpha();
  if (!(alpha1 >= 0.0 && alpha1 < corner)) {
    throw Error(ErrorCode::AnchorConstraintViolated,
                "alpha1 must lie in [0, 1 - x) = [0, " + num(corner) + "), got " + num(alpha1));
  }
  if (!(corner_kappa(q, dom.N, eps) < q)) {
    throw Error(ErrorCode::CaseMismatch, "alpha_star needs -x/phi(1-x) < q");
  }
  const double nu1 = dom.N + (1.0 - alpha1) / q;
  const auto gap = [&](double a) {
    return own_branch_kappa(a, eps) - (a - alpha1) / (a - (1.0 - nu1));
  };
  return roots::bisect(gap, corner, 1.0);
}

}  // namespace hcube
