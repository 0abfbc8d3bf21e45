#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "hcube/bounds.hpp"
#include "hcube/error.hpp"
#include "hcube/special.hpp"

namespace hcube {

namespace {

constexpr int kMaxIterations = 100000;
constexpr double kResidualTol = 1e-11;

void normalize_points(int n, std::vector<std::uint64_t>& points) {
  if (n < 1 || n > 62) throw Error(ErrorCode::DomainError, "point-set dimension must lie in [1, 62]");
  const std::uint64_t limit = std::uint64_t{1} << n;
  for (std::uint64_t p : points) {
    if (p >= limit) throw Error(ErrorCode::DomainError, "point " + std::to_string(p) + " outside {0,1}^n");
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (points.empty()) throw Error(ErrorCode::EmptySet, "point set is empty");
}

// Perron root of one connected component by power iteration on M + I, which
// is primitive even when the component is bipartite.
double component_eigenvalue(const std::vector<std::vector<std::uint32_t>>& adj,
                            const std::vector<std::uint32_t>& members, std::vector<std::int64_t>& local) {
  const std::size_t m = members.size();
  if (m == 1) return 0.0;
  for (std::size_t i = 0; i < m; ++i) local[members[i]] = static_cast<std::int64_t>(i);

  std::mt19937_64 rng(0x5eedULL + m);
  std::uniform_real_distribution<double> u(0.5, 1.5);
  std::vector<double> v(m);
  for (double& x : v) x = u(rng);
  std::vector<double> w(m);

  auto normalize = [](std::vector<double>& a) {
    double s = 0.0;
    for (double x : a) s += x * x;
    s = std::sqrt(s);
    for (double& x : a) x /= s;
  };
  normalize(v);

  double mu = 0.0;
  for (int it = 0; it < kMaxIterations; ++it) {
    for (std::size_t i = 0; i < m; ++i) {
      double acc = v[i];
      for (std::uint32_t nb : adj[members[i]]) acc += v[static_cast<std::size_t>(local[nb])];
      w[i] = acc;
    }
    mu = 0.0;
    for (std::size_t i = 0; i < m; ++i) mu += v[i] * w[i];
    double res = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double r = w[i] - mu * v[i];
      res += r * r;
    }
    v.swap(w);
    normalize(v);
    if (std::sqrt(res) <= kResidualTol * mu) break;
  }
  return mu - 1.0;
}

}  // namespace

double max_induced_eigenvalue(int n, std::vector<std::uint64_t> points) {
  normalize_points(n, points);
  const std::size_t size = points.size();
  std::vector<std::vector<std::uint32_t>> adj(size);
  for (std::size_t i = 0; i < size; ++i) {
    for (int b = 0; b < n; ++b) {
      const std::uint64_t nb = points[i] ^ (std::uint64_t{1} << b);
      auto it = std::lower_bound(points.begin(), points.end(), nb);
      if (it != points.end() && *it == nb) adj[i].push_back(static_cast<std::uint32_t>(it - points.begin()));
    }
  }

  std::vector<bool> seen(size, false);
  std::vector<std::int64_t> local(size, -1);
  double best = 0.0;
  for (std::size_t start = 0; start < size; ++start) {
    if (seen[start]) continue;
    std::vector<std::uint32_t> members{static_cast<std::uint32_t>(start)};
    seen[start] = true;
    for (std::size_t head = 0; head < members.size(); ++head) {
      for (std::uint32_t nb : adj[members[head]]) {
        if (!seen[nb]) {
          seen[nb] = true;
          members.push_back(nb);
        }
      }
    }
    best = std::max(best, component_eigenvalue(adj, members, local));
  }
  return best;
}

CheckReport eigen_bound_check(int n, std::vector<std::uint64_t> points) {
  normalize_points(n, points);
  const double size = static_cast<double>(points.size());
  if (size == std::ldexp(1.0, n)) throw Error(ErrorCode::FullCube, "point set is the whole cube");
  // For f supported on A, E(f,f) = 2 (n - <M_A f, f>) ||f||_2^2 and
  // Ent(f^2) >= k ||f||_2^2, so the log-Sobolev bound gives n - lambda >= C k / 2.
  const double k = n - std::log2(size);
  const double c = log_sobolev_C(std::clamp(k / n, 0.0, 1.0));
  const double rhs = n - 0.5 * c * k;
  const double lambda = max_induced_eigenvalue(n, std::move(points));
  CheckReport r = make_report("eigen_bound", n, 0.0, std::nullopt, lambda, rhs);
  // Fraction of the spectral gap n - lambda certified by the bound; 1 means tight.
  const double tightness = 0.5 * c * k / (n - lambda);
  r.extras = {{"set_size", size}, {"log_ratio", k}, {"C", c}, {"tightness", tightness}};
  return r;
}

std::vector<std::uint64_t> hamming_ball_points(int n, int r) {
  if (n < 1 || n > 30) throw Error(ErrorCode::DomainError, "ball enumeration supports 1 <= n <= 30");
  if (r < 0 || r > n) throw Error(ErrorCode::RadiusOutOfRange, "radius " + std::to_string(r) + " not in [0, n]");
  std::vector<std::uint64_t> out;
  const std::uint64_t limit = std::uint64_t{1} << n;
  for (std::uint64_t x = 0; x < limit; ++x) {
    if (popcount(x) <= r) out.push_back(x);
  }
  return out;
}

}  // namespace hcube
