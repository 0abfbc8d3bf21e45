#include "hcube/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <thread>

#include "hcube/error.hpp"
#include "hcube/special.hpp"

namespace hcube {

namespace {

std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// splitmix64 stream with its own uniform conversion; std distributions are
// not portable across standard libraries.
class Stream {
 public:
  explicit Stream(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }

 private:
  std::uint64_t state_;
};

std::vector<double> log_uniform_values(int n, Stream& rng) {
  std::vector<double> v(std::size_t{1} << n);
  for (double& x : v) x = std::exp2(rng.uniform(-n, n));
  return v;
}

const std::vector<std::string> kCheckNames{
    "hc_baseline", "mgl",         "mgl_linear",        "mgl_dominance", "renyi2_mgl",     "nhc",
    "nhc_dominance", "log_sobolev", "log_sobolev_gross", "lsi_constant",  "bounded_support",
};

bool wanted(const std::vector<std::string>& which, const char* name) {
  return which.empty() || std::find(which.begin(), which.end(), name) != which.end();
}

const std::vector<TrendTriple> kPanel{{2.0, 0.1, 0.5}, {3.0, 0.05, 0.1}, {1.5, 0.1, 0.3}};

struct CellStat {
  std::int64_t total = 0;
  std::int64_t passed = 0;
  double min_slack = std::numeric_limits<double>::infinity();
  std::uint64_t argmin_seed = 0;
};

struct Cell {
  FunctionModel model;
  int n;
  std::size_t eps_idx;
  std::size_t q_idx;
};

}  // namespace

FunctionModel parse_model(const std::string& s) {
  for (FunctionModel m : all_models()) {
    if (to_string(m) == s) return m;
  }
  throw Error(ErrorCode::UnknownModel, "unknown function model '" + s + "'");
}

std::string to_string(FunctionModel model) {
  switch (model) {
    case FunctionModel::LogUniform: return "log_uniform";
    case FunctionModel::Sparse: return "sparse";
    case FunctionModel::SphereMixture: return "sphere_mixture";
    case FunctionModel::Product: return "product";
    case FunctionModel::Signed: return "signed";
  }
  return "unknown";
}

const std::vector<FunctionModel>& all_models() {
  static const std::vector<FunctionModel> models{FunctionModel::LogUniform, FunctionModel::Sparse,
                                                 FunctionModel::SphereMixture, FunctionModel::Product,
                                                 FunctionModel::Signed};
  return models;
}

std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> key) {
  std::uint64_t h = mix(seed);
  for (std::uint64_t k : key) h = mix(h ^ mix(k));
  return h;
}

CubeFunction random_function(int n, FunctionModel model, std::uint64_t seed) {
  if (n < 0 || n > dimension_cap()) {
    throw Error(ErrorCode::DimensionTooLarge, "n = " + std::to_string(n) + " exceeds the dimension cap");
  }
  Stream rng(seed);
  const std::size_t size = std::size_t{1} << n;
  switch (model) {
    case FunctionModel::LogUniform: return CubeFunction(n, log_uniform_values(n, rng));
    case FunctionModel::Sparse: {
      std::vector<double> v = log_uniform_values(n, rng);
      std::vector<std::size_t> idx(size);
      for (std::size_t i = 0; i < size; ++i) idx[i] = i;
      for (std::size_t i = size - 1; i > 0; --i) std::swap(idx[i], idx[rng.below(i + 1)]);
      const std::size_t keep = std::size_t{1} << ((n + 1) / 2);
      for (std::size_t i = keep; i < size; ++i) v[idx[i]] = 0.0;
      return CubeFunction(n, std::move(v));
    }
    case FunctionModel::SphereMixture: {
      const int r = static_cast<int>(rng.below(static_cast<std::uint64_t>(n) + 1));
      const double room = n - std::log2(static_cast<double>(binomial(n, r)));
      const double v = room > 0.0 ? std::exp2(rng.uniform(0.0, room)) : 1.0;
      return sphere_mixture(n, r, std::min(v, std::ldexp(1.0, n) / static_cast<double>(binomial(n, r))));
    }
    case FunctionModel::Product: {
      const double g0 = std::exp2(rng.uniform(-1.0, 1.0));
      const double g1 = std::exp2(rng.uniform(-1.0, 1.0));
      std::vector<double> v(size);
      for (std::size_t x = 0; x < size; ++x) {
        const int ones = popcount(x);
        v[x] = std::pow(g1, ones) * std::pow(g0, n - ones);
      }
      return CubeFunction(n, std::move(v));
    }
    case FunctionModel::Signed: {
      std::vector<double> v = log_uniform_values(n, rng);
      for (double& x : v) {
        if (rng.next() >> 63) x = -x;
      }
      return CubeFunction(n, std::move(v));
    }
  }
  throw Error(ErrorCode::UnknownModel, "unknown function model");
}

const std::vector<std::string>& check_names() { return kCheckNames; }

std::vector<CheckReport> run_checks(const CubeFunction& f, double eps, double q,
                                    const std::vector<std::string>& which) {
  for (const std::string& w : which) {
    if (std::find(kCheckNames.begin(), kCheckNames.end(), w) == kCheckNames.end()) {
      throw Error(ErrorCode::ParamOutOfRange, "unknown check '" + w + "'");
    }
  }
  std::vector<CheckReport> out;
  const bool rated = f.dim() >= 1 && f.nonnegative();
  if (wanted(which, "hc_baseline")) out.push_back(check_hc_baseline(f, eps, q));
  if (rated && (wanted(which, "mgl") || wanted(which, "mgl_linear") || wanted(which, "mgl_dominance"))) {
    MglReports m = check_mgl(f, eps);
    if (wanted(which, "mgl")) out.push_back(std::move(m.mgl));
    if (wanted(which, "mgl_linear")) out.push_back(std::move(m.linear));
    if (wanted(which, "mgl_dominance")) out.push_back(std::move(m.dominance));
  }
  if (rated && wanted(which, "renyi2_mgl")) out.push_back(check_renyi2_mgl(f, eps, q));
  if (wanted(which, "nhc") || wanted(which, "nhc_dominance")) {
    CheckReport nhc = check_nhc(f, eps, q);
    double baseline = nhc.rhs;
    for (const auto& [key, value] : nhc.extras) {
      if (key == "baseline_rhs") baseline = value;
    }
    CheckReport dom = make_report("nhc_dominance", f.dim(), eps, q, nhc.rhs, baseline);
    if (wanted(which, "nhc")) out.push_back(std::move(nhc));
    if (wanted(which, "nhc_dominance")) out.push_back(std::move(dom));
  }
  if (wanted(which, "log_sobolev") || wanted(which, "log_sobolev_gross") || wanted(which, "lsi_constant")) {
    LogSobolevReports ls = check_log_sobolev(f);
    double c = 0.0;
    for (const auto& [key, value] : ls.main.extras) {
      if (key == "C") c = value;
    }
    if (wanted(which, "log_sobolev")) out.push_back(std::move(ls.main));
    if (wanted(which, "log_sobolev_gross")) out.push_back(std::move(ls.gross));
    if (wanted(which, "lsi_constant")) {
      out.push_back(make_report("lsi_constant", f.dim(), 0.0, std::nullopt, 2.0 * std::numbers::ln2, c));
    }
  }
  if (wanted(which, "bounded_support")) out.push_back(check_bounded_support(f, eps));
  return out;
}

void SuiteConfig::validate() const {
  const auto bad = [](const std::string& what) { throw Error(ErrorCode::ParamOutOfRange, what); };
  if (n_range.empty() || eps_grid.empty() || q_grid.empty() || models.empty()) bad("suite grids must be non-empty");
  if (samples_per_cell < 1) bad("samples_per_cell must be >= 1");
  for (int n : n_range) {
    if (n < 1 || n > dimension_cap()) bad("suite dimension " + std::to_string(n) + " outside [1, cap]");
  }
  for (double e : eps_grid) {
    if (!(e >= 0.0 && e <= 0.5)) bad("suite eps " + std::to_string(e) + " outside [0, 1/2]");
  }
  for (double q : q_grid) {
    if (!(q > 1.0) || !std::isfinite(q)) bad("suite q " + std::to_string(q) + " must exceed 1");
  }
  for (int n : trend_n) {
    if (n < 1) bad("trend dimensions must be positive");
  }
  for (int n : eigen_n) {
    if (n < 2 || n > std::min(dimension_cap(), 20)) bad("eigen dimension " + std::to_string(n) + " outside [2, 20]");
  }
}

const std::vector<TrendTriple>& tightness_panel() { return kPanel; }

SuiteReport run_suite(const SuiteConfig& config) {
  config.validate();
  const std::size_t checks = kCheckNames.size();

  std::vector<Cell> cells;
  for (FunctionModel m : config.models) {
    for (int n : config.n_range) {
      for (std::size_t e = 0; e < config.eps_grid.size(); ++e) {
        for (std::size_t qi = 0; qi < config.q_grid.size(); ++qi) cells.push_back({m, n, e, qi});
      }
    }
  }

  const auto sample_seed = [&](const Cell& c, int s) {
    return derive_seed(config.seed, {static_cast<std::uint64_t>(c.model), static_cast<std::uint64_t>(c.n),
                                     c.eps_idx, c.q_idx, static_cast<std::uint64_t>(s)});
  };

  std::vector<std::vector<CellStat>> stats(cells.size(), std::vector<CellStat>(checks));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  const auto worker = [&] {
    try {
      for (std::size_t i = next++; i < cells.size() && !failed; i = next++) {
        const Cell& c = cells[i];
        const double eps = config.eps_grid[c.eps_idx];
        const double q = config.q_grid[c.q_idx];
        for (int s = 0; s < config.samples_per_cell; ++s) {
          const std::uint64_t key = sample_seed(c, s);
          const CubeFunction f = random_function(c.n, c.model, key);
          for (const CheckReport& r : run_checks(f, eps, q)) {
            const auto pos = static_cast<std::size_t>(
                std::find(kCheckNames.begin(), kCheckNames.end(), r.name) - kCheckNames.begin());
            CellStat& st = stats[i][pos];
            ++st.total;
            if (r.pass) ++st.passed;
            if (r.slack < st.min_slack) {
              st.min_slack = r.slack;
              st.argmin_seed = key;
            }
          }
        }
      }
    } catch (...) {
      if (!failed.exchange(true)) failure = std::current_exception();
    }
  };

  unsigned threads = config.threads > 0 ? static_cast<unsigned>(config.threads) : std::thread::hardware_concurrency();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(cells.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  SuiteReport report;
  report.config = config;
  for (std::size_t k = 0; k < checks; ++k) {
    CheckSummary sum;
    sum.name = kCheckNames[k];
    sum.min_slack = std::numeric_limits<double>::infinity();
    std::size_t best = cells.size();
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const CellStat& st = stats[i][k];
      sum.total += st.total;
      sum.passed += st.passed;
      if (st.total > 0 && st.min_slack < sum.min_slack) {
        sum.min_slack = st.min_slack;
        best = i;
      }
    }
    if (best < cells.size()) {
      const Cell& c = cells[best];
      Witness& w = sum.argmin;
      w.model = c.model;
      w.n = c.n;
      w.eps = config.eps_grid[c.eps_idx];
      w.q = config.q_grid[c.q_idx];
      w.sample_seed = stats[best][k].argmin_seed;
      const CubeFunction f = random_function(w.n, w.model, w.sample_seed);
      w.values.assign(f.values().begin(), f.values().end());
    } else {
      sum.min_slack = 0.0;
    }
    if (sum.passed != sum.total) report.passed = false;
    report.checks.push_back(std::move(sum));
  }

  for (const TrendTriple& t : kPanel) {
    for (TightnessKind kind : {TightnessKind::Renyi2, TightnessKind::Nhc}) {
      for (int n : config.trend_n) {
        const TightnessInstance inst = tightness_instance(kind, t.q, t.eps, t.x, n);
        report.tightness_trend.push_back({kind, t.q, t.eps, t.x, n, inst.rate, inst.lhs, inst.rhs, inst.slack});
      }
    }
  }

  for (int n : config.eigen_n) {
    for (int r = 0; r < n; ++r) {
      const CheckReport c = eigen_bound_check(n, hamming_ball_points(n, r));
      double tightness = 0.0;
      for (const auto& [key, value] : c.extras) {
        if (key == "tightness") tightness = value;
      }
      if (!c.pass) report.passed = false;
      report.eigen_trend.push_back({n, r, c.lhs, c.rhs, tightness, c.pass});
    }
  }
  return report;
}

}  // namespace hcube
