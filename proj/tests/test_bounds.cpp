#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>

#include "hcube/bounds.hpp"
#include "hcube/error.hpp"
#include "hcube/special.hpp"

using namespace hcube;

namespace {

CubeFunction random_function(int n, std::mt19937_64& rng, bool signed_values = false) {
  std::uniform_real_distribution<double> e(-n, n);
  std::bernoulli_distribution sign(0.5);
  std::vector<double> v(std::size_t{1} << n);
  for (double& x : v) {
    x = std::exp2(e(rng));
    if (signed_values && sign(rng)) x = -x;
  }
  return make_function(n, std::move(v));
}

CubeFunction product_function(int n, double a, double b) {
  std::vector<double> v(std::size_t{1} << n);
  for (std::size_t x = 0; x < v.size(); ++x) {
    const int ones = popcount(x);
    v[x] = std::pow(b, ones) * std::pow(a, n - ones);
  }
  return make_function(n, std::move(v));
}

// Dense symmetric adjacency of the induced subgraph, largest eigenvalue by Eigen.
double dense_lambda(int n, const std::vector<std::uint64_t>& pts) {
  const auto m = static_cast<Eigen::Index>(pts.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      if (popcount(pts[i] ^ pts[j]) == 1) a(i, j) = 1.0;
    }
  }
  (void)n;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  return es.eigenvalues().maxCoeff();
}

// The Perron vector of a Hamming ball is constant on levels, so lambda is the
// top eigenvalue of the symmetrized level-transition matrix.
double ball_lambda_quotient(int n, int r) {
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(r + 1, r + 1);
  for (int k = 1; k <= r; ++k) {
    const double w = std::sqrt(double(k) * (n - k + 1));
    b(k, k - 1) = w;
    b(k - 1, k) = w;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b);
  return es.eigenvalues().maxCoeff();
}

const double kEps[] = {0.0, 0.05, 0.15, 0.3, 0.45, 0.5};
const double kQ[] = {1.1, 1.5, 2.0, 3.0};

}  // namespace

TEST(HcBaseline, ConstantIsExactlyTight) {
  auto c = CubeFunction::constant(5, 3.25);
  for (double eps : kEps) {
    for (double q : kQ) {
      auto r = check_hc_baseline(c, eps, q);
      EXPECT_EQ(r.slack, 0.0);
    }
  }
}

TEST(HcBaseline, FullNoiseAndRandom) {
  std::mt19937_64 rng(1);
  auto f = random_function(6, rng);
  auto r = check_hc_baseline(f, 0.5, 2.0);
  EXPECT_NEAR(std::exp2(r.lhs), f.mean(), 1e-12 * f.mean());
  EXPECT_NEAR(std::exp2(r.rhs), lq_norm(f, 1.0), 1e-12 * f.mean());
  for (int t = 0; t < 50; ++t) {
    auto g = random_function(1 + t % 8, rng, t % 3 == 0);
    for (double eps : kEps) {
      for (double q : kQ) EXPECT_TRUE(check_hc_baseline(g, eps, q).pass);
    }
  }
}

TEST(Mgl, ProductFunctionsAreTight) {
  for (int n = 2; n <= 6; ++n) {
    for (auto [a, b] : {std::pair{1.0, 3.0}, std::pair{0.2, 1.0}, std::pair{2.0, 0.0}}) {
      auto f = product_function(n, a, b);
      for (double eps : {0.05, 0.2, 0.4}) {
        auto r = check_mgl(f, eps);
        EXPECT_NEAR(r.mgl.slack, 0.0, 1e-8) << n << " " << a << " " << b << " " << eps;
      }
    }
  }
}

TEST(Mgl, ConstantAndRandom) {
  auto r = check_mgl(CubeFunction::constant(4, 2.0), 0.2);
  EXPECT_NEAR(r.mgl.lhs, 0.0, 1e-15);
  EXPECT_NEAR(r.mgl.rhs, 0.0, 1e-15);
  EXPECT_NEAR(r.linear.rhs, 0.0, 1e-15);
  std::mt19937_64 rng(2);
  for (int t = 0; t < 50; ++t) {
    auto f = random_function(1 + t % 8, rng);
    for (double eps : kEps) {
      auto m = check_mgl(f, eps);
      EXPECT_TRUE(m.mgl.pass);
      EXPECT_TRUE(m.linear.pass);
      EXPECT_TRUE(m.dominance.pass);
    }
  }
  EXPECT_THROW(check_mgl(make_function(1, {1.0, -1.0}), 0.1), Error);
}

TEST(Renyi2Mgl, ConstantAndRandom) {
  for (double eps : kEps) {
    for (double q : kQ) {
      auto r = check_renyi2_mgl(CubeFunction::constant(3, 1.0), eps, q);
      EXPECT_NEAR(r.lhs, 0.0, 1e-14);
      EXPECT_GE(r.slack, -1e-15);
    }
  }
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    auto f = random_function(1 + t % 8, rng);
    for (double eps : kEps) {
      for (double q : kQ) EXPECT_TRUE(check_renyi2_mgl(f, eps, q).pass);
    }
  }
}

TEST(Nhc, ConstantRecoversBaseline) {
  auto c = CubeFunction::constant(4, 0.7);
  for (double eps : kEps) {
    auto r = check_nhc(c, eps, 2.0);
    EXPECT_DOUBLE_EQ(kappa_for(c, eps, 2.0), q0_of(eps));
    EXPECT_EQ(r.slack, 0.0);
    EXPECT_EQ(r.rhs, check_hc_baseline(c, eps, 2.0).rhs);
  }
}

TEST(Nhc, FullNoiseAndRandomSigned) {
  std::mt19937_64 rng(4);
  auto f = random_function(5, rng, true);
  EXPECT_DOUBLE_EQ(kappa_for(f, 0.5, 2.0), 1.0);
  auto r = check_nhc(f, 0.5, 2.0);
  EXPECT_NEAR(std::exp2(r.lhs), std::fabs(f.mean()), 1e-12 * lq_norm(f, 1.0));
  for (int t = 0; t < 60; ++t) {
    auto g = random_function(1 + t % 8, rng, t % 2 == 0);
    for (double eps : kEps) {
      for (double q : kQ) {
        auto c = check_nhc(g, eps, q);
        EXPECT_TRUE(c.pass);
        const double kappa = c.extras[1].second;
        EXPECT_GE(kappa, 1.0);
        EXPECT_LE(kappa, q0_of(eps));
        EXPECT_LE(c.rhs - c.extras[2].second, 1e-12);  // never weaker than the baseline
      }
    }
  }
}

TEST(BestQ, FixedPointAndMinimality) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 10; ++t) {
    auto f = random_function(6, rng);
    for (double eps : {0.05, 0.2, 0.4}) {
      const double qs = best_q(f, eps);
      EXPECT_GT(qs, 1.0);
      EXPECT_LE(qs, q0_of(eps) + 1e-15);
      EXPECT_NEAR(fixed_point_map(f, eps, qs), qs, 1e-8);
      for (double q = 1.01; q <= 4.0; q += 0.01) EXPECT_GE(fixed_point_map(f, eps, q), qs - 1e-9);
      EXPECT_TRUE(check_nhc(f, eps, qs).pass);
      // y(q) strictly decreasing
      double prev = 2.0;
      for (double q = 1.05; q <= 4.0; q += 0.05) {
        const double y = (q - 1) * entropy_rate(f, q) / q + 1 / q;
        EXPECT_LT(y, prev);
        prev = y;
      }
    }
  }
  try {
    best_q(CubeFunction::constant(3, 2.0), 0.1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ConstantFunction);
  }
}

TEST(BestQ, SmallNoiseLimit) {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 10; ++t) {
    const double qs = best_q(random_function(8, rng), 1e-3);
    EXPECT_GT(qs, 1.9);
    EXPECT_LT(qs, 2.0);
  }
}

TEST(LogSobolev, ConstantDictatorRandom) {
  auto c = check_log_sobolev(CubeFunction::constant(3, 5.0));
  EXPECT_NEAR(c.main.lhs, 0.0, 1e-15);
  EXPECT_NEAR(c.main.rhs, 0.0, 1e-14);

  // f(x) = x_1: after scaling to ||f||_2 = 1, E(f,f) = 2, Ent(f^2) = 1, rate 1/3.
  auto d = check_log_sobolev(make_function(3, {0, 1, 0, 1, 0, 1, 0, 1}));
  EXPECT_NEAR(d.main.lhs, 2.0, 1e-14);
  EXPECT_NEAR(d.main.rhs, log_sobolev_C(1.0 / 3.0), 1e-14);
  EXPECT_NEAR(d.main.slack, 2.0 - log_sobolev_C(1.0 / 3.0), 1e-14);
  EXPECT_TRUE(d.main.pass);

  std::mt19937_64 rng(7);
  for (int t = 0; t < 60; ++t) {
    auto r = check_log_sobolev(random_function(1 + t % 8, rng, t % 2 == 0));
    EXPECT_TRUE(r.main.pass);
    EXPECT_GE(r.gross.slack, -1e-12);
  }
}

TEST(BoundedSupport, PointMassAndFullSupport) {
  for (double eps : {0.0, 0.1, 0.3, 0.5}) {
    std::vector<double> v(64, 0.0);
    v[5] = 3.0;
    auto r = check_bounded_support(make_function(6, v), eps);
    EXPECT_NEAR(r.lhs, std::pow(1 - eps, 6), 1e-14);
    EXPECT_NEAR(r.rhs, std::pow(1 - eps, 6), 1e-14);
    EXPECT_TRUE(r.pass);
  }
  std::mt19937_64 rng(8);
  for (int t = 0; t < 60; ++t) {
    auto f = random_function(1 + t % 8, rng, t % 2 == 0);
    for (double eps : kEps) {
      auto r = check_bounded_support(f, eps);
      EXPECT_TRUE(r.pass);
      EXPECT_NEAR(r.rhs, std::exp2(2 * big_phi(1.0, eps) * f.dim()), 1e-15);
    }
  }
}

TEST(BoundedSupport, SphereIsPolynomiallyTight) {
  // record the exponent c with lhs = rhs * n^{-c}; tightness up to a polynomial factor
  const int n = 16;
  for (double eps : {0.1, 0.25}) {
    for (int r = 2; r <= 6; ++r) {
      auto rep = check_bounded_support(sphere_indicator(n, r), eps);
      EXPECT_TRUE(rep.pass);
      const double c = std::log(rep.rhs / rep.lhs) / std::log(double(n));
      EXPECT_GE(c, 0.0);
      EXPECT_LT(c, 3.0) << "eps " << eps << " r " << r;
    }
  }
}

TEST(Eigen, SmallSetsAgainstDenseSolver) {
  EXPECT_EQ(max_induced_eigenvalue(4, {3}), 0.0);
  EXPECT_TRUE(eigen_bound_check(4, {3}).pass);
  std::mt19937_64 rng(9);
  for (int t = 0; t < 30; ++t) {
    const int n = 3 + t % 5;
    std::vector<std::uint64_t> pts;
    std::bernoulli_distribution keep(0.4);
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
      if (keep(rng)) pts.push_back(x);
    }
    if (pts.empty() || pts.size() == (std::size_t{1} << n)) continue;
    EXPECT_NEAR(max_induced_eigenvalue(n, pts), dense_lambda(n, pts), 1e-8);
    EXPECT_TRUE(eigen_bound_check(n, pts).pass);
  }
  EXPECT_THROW(eigen_bound_check(3, {}), Error);
  EXPECT_THROW(eigen_bound_check(2, {0, 1, 2, 3}), Error);
}

TEST(Eigen, StarAndBalls) {
  for (int n = 2; n <= 14; ++n) {
    EXPECT_NEAR(max_induced_eigenvalue(n, hamming_ball_points(n, 1)), std::sqrt(double(n)), 1e-8);
  }
  for (int n = 4; n <= 10; ++n) {
    for (int r = 0; r < n; ++r) {
      EXPECT_NEAR(max_induced_eigenvalue(n, hamming_ball_points(n, r)), ball_lambda_quotient(n, r), 1e-8);
    }
  }
}
