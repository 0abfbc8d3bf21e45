#pragma once

// Seeded property suite over random cube functions. Results depend only on
// the config, never on thread count or scheduling.

#include <cstdint>
#include <string>
#include <vector>

#include "hcube/bounds.hpp"
#include "hcube/cube.hpp"
#include "hcube/extremal.hpp"

namespace hcube {

enum class FunctionModel { LogUniform, Sparse, SphereMixture, Product, Signed };

FunctionModel parse_model(const std::string& s);
std::string to_string(FunctionModel model);
const std::vector<FunctionModel>& all_models();

/// Deterministic in (n, model, seed).
///   log_uniform: log2 f(x) uniform in [-n, n]
///   sparse: log_uniform on 2^ceil(n/2) random points, 0 elsewhere
///   sphere_mixture: sphere_mixture(n, r, v) with random r and admissible v
///   product: prod_i g(x_i) for one random g (equal marginals)
///   signed: log_uniform magnitudes with random signs
CubeFunction random_function(int n, FunctionModel model, std::uint64_t seed);

/// splitmix64 finalizer chained over the key words.
std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> key);

/// Report names in suite order.
const std::vector<std::string>& check_names();

/// Every applicable check on one instance, in check_names() order; checks
/// needing f >= 0 are skipped for sign-changing f. A non-empty `which`
/// keeps only the named checks.
std::vector<CheckReport> run_checks(const CubeFunction& f, double eps, double q,
                                    const std::vector<std::string>& which = {});

struct SuiteConfig {
  std::uint64_t seed = 42;
  std::vector<int> n_range{1, 2, 3, 4, 5, 6, 7, 8};
  std::vector<double> eps_grid{0.0, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5};
  std::vector<double> q_grid{1.1, 1.5, 2.0, 3.0};
  int samples_per_cell = 100;
  std::vector<FunctionModel> models = all_models();
  std::vector<int> trend_n{50, 100, 200};
  std::vector<int> eigen_n{4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14};
  int threads = 0;  // 0 = hardware concurrency; not part of the report

  void validate() const;
};

struct Witness {
  FunctionModel model = FunctionModel::LogUniform;
  int n = 0;
  double eps = 0.0;
  double q = 0.0;
  std::uint64_t sample_seed = 0;
  std::vector<double> values;
};

struct CheckSummary {
  std::string name;
  std::int64_t total = 0;
  std::int64_t passed = 0;
  double min_slack = 0.0;
  Witness argmin;
};

struct TightnessRow {
  TightnessKind kind;
  double q;
  double eps;
  double x;
  int n;
  double rate;
  double lhs;
  double rhs;
  double slack;
};

struct EigenRow {
  int n;
  int radius;
  double lambda;
  double bound;
  double tightness;
  bool pass;
};

struct SuiteReport {
  SuiteConfig config;
  bool passed = true;
  std::vector<CheckSummary> checks;
  std::vector<TightnessRow> tightness_trend;
  std::vector<EigenRow> eigen_trend;
};

/// (q, eps, x) triples of the tightness trend, one per kappa regime.
struct TrendTriple {
  double q;
  double eps;
  double x;
};
const std::vector<TrendTriple>& tightness_panel();

SuiteReport run_suite(const SuiteConfig& config);

}  // namespace hcube
