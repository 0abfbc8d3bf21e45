// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "hcube/bounds.hpp"
#include "hcube/extremal.hpp"
#include "hcube/io.hpp"
#include "hcube/special.hpp"
#include "hcube/verify.hpp"

using namespace hcube;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string sci(double v, int digits = 3) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

const std::vector<std::string> kNamedChecks{"hc_baseline", "mgl",         "mgl_linear",     "renyi2_mgl",
                                            "nhc",         "log_sobolev", "bounded_support"};

struct SuiteRun {
  SuiteReport report;
  std::string json;
  double seconds;
};

std::vector<SuiteRun>& suite_runs() {
  static std::vector<SuiteRun> runs;
  return runs;
}

const CheckSummary* find_summary(const SuiteReport& r, const std::string& name) {
  for (const CheckSummary& s : r.checks) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

Outcome endpoints() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (int i = 0; i <= 100; ++i) {
    const double x = i / 100.0;
    worst = std::max(worst, std::fabs(phi_eps(x, 0.0) - (x - 1.0) / 2.0));
    worst = std::max(worst, std::fabs(phi_eps(x, 0.5) - (x - 1.0)));
  }
  const bool phi_ok = worst <= 1e-10;

  double slope = 0.0;
  for (double eps : {0.01, 0.05, 0.1, 0.2, 0.3, 0.4, 0.49}) {
    slope = std::max(slope, std::fabs(phi_prime(0.0, eps) - 1.0));
    slope = std::max(slope, std::fabs(phi_prime(1.0, eps) - 1.0 / q0_of(eps)));
  }
  const bool slope_ok = slope <= 1e-5;

  double kap = 0.0;
  for (double q : {1.1, 1.5, 2.0, 3.0, 6.0}) {
    for (int i = 0; i <= 20; ++i) {
      const double x = i / 20.0;
      kap = std::max(kap, std::fabs(kappa_2q(x, 0.0, q) - 2.0));
      kap = std::max(kap, std::fabs(kappa_2q(x, 0.5, q) - 1.0));
    }
    for (double eps : {0.0, 0.05, 0.2, 0.35, 0.5}) kap = std::max(kap, std::fabs(kappa_2q(0.0, eps, q) - q0_of(eps)));
  }
  const bool kappa_ok = kap <= 1e-9;

  const double c_err = std::max(std::fabs(log_sobolev_C(0.0) - 2.0 * std::numbers::ln2),
                                std::fabs(log_sobolev_C(1.0) - 2.0));
  bool c_range = true;
  for (int i = 0; i <= 100; ++i) {
    const double c = log_sobolev_C(i / 100.0);
    c_range = c_range && c >= 2.0 * std::numbers::ln2 - 1e-12 && c <= 2.0 + 1e-12;
  }
  const bool c_ok = c_err <= 1e-3 && c_range;

  const double secs = seconds_since(t0);
  return {phi_ok && slope_ok && kappa_ok && c_ok && secs < 1.0,
          "phi err " + sci(worst) + ", slope err " + sci(slope) + ", kappa err " + sci(kap) + ", C err " +
              sci(c_err) + ", " + sci(secs) + " s"};
}

Outcome inequality_suite() {
  bool ok = true;
  double lowest = std::numeric_limits<double>::infinity();
  std::string where;
  std::int64_t instances = 0;
  double total_secs = 0.0;
  for (std::uint64_t seed : {42, 43}) {
    SuiteConfig c;
    c.seed = seed;
    const auto t0 = Clock::now();
    SuiteReport r = run_suite(c);
    const double secs = seconds_since(t0);
    total_secs += secs;
    for (const std::string& name : kNamedChecks) {
      const CheckSummary* s = find_summary(r, name);
      if (!s || s->total == 0 || s->passed != s->total || s->min_slack < -1e-9) ok = false;
      if (s) {
        instances += s->total;
        if (s->min_slack < lowest) {
          lowest = s->min_slack;
          where = name;
        }
      }
    }
    suite_runs().push_back({std::move(r), "", secs});
  }
  for (SuiteRun& run : suite_runs()) run.json = suite_report_json(run.report);
  return {ok && total_secs < 300.0, std::to_string(instances) + " checks, min slack " + sci(lowest) + " (" + where +
                                        "), " + sci(total_secs) + " s"};
}

Outcome dominance() {
  if (suite_runs().empty()) return {false, "suite did not run"};
  double nhc = std::numeric_limits<double>::infinity(), lsi = nhc;
  bool ok = true;
  for (const SuiteRun& run : suite_runs()) {
    const CheckSummary* d = find_summary(run.report, "nhc_dominance");
    const CheckSummary* c = find_summary(run.report, "lsi_constant");
    if (!d || !c || d->total == 0 || c->total == 0) return {false, "dominance rows missing"};
    nhc = std::min(nhc, d->min_slack);
    lsi = std::min(lsi, c->min_slack);
    ok = ok && d->total == find_summary(run.report, "nhc")->total;
  }
  return {ok && nhc >= -1e-12 && lsi >= -1e-12,
          "log2 ||f||_kappa - log2 ||f||_q0 max " + sci(-nhc) + ", C - 2 ln 2 min " + sci(lsi)};
}

Outcome mgl_products() {
  double worst = 0.0;
  int count = 0;
  for (int n = 2; n <= 6; ++n) {
    for (std::uint64_t s = 0; s < 20; ++s) {
      const CubeFunction f = random_function(n, FunctionModel::Product, derive_seed(4, {std::uint64_t(n), s}));
      for (double eps : {0.01, 0.1, 0.25, 0.4, 0.49}) {
        worst = std::max(worst, std::fabs(check_mgl(f, eps).mgl.slack));
        ++count;
      }
    }
  }
  return {worst <= 1e-8, std::to_string(count) + " instances, max |slack| " + sci(worst)};
}

struct Triple {
  double q, N, eps;
  double x() const { return q * N / (q - 1.0); }
  double corner() const { return 1.0 - x(); }
  LevelPoint anchor(double a1) const { return {a1, N + (1.0 - a1) / q}; }
};

// Triples with N > 0 and N + 1/q > 1/q0, away from the case boundary.
std::vector<Triple> triples(bool corner_wins, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uq(1.05, 8.0), ue(0.02, 0.48), uf(0.02, 0.98);
  std::vector<Triple> out;
  while (static_cast<int>(out.size()) < count) {
    Triple t{uq(rng), 0.0, ue(rng)};
    t.N = uf(rng) * (t.q - 1.0) / t.q;
    if (!(t.N + 1.0 / t.q > 1.0 / q0_of(t.eps) + 1e-3)) continue;
    const double k = corner_kappa(t.q, t.N, t.eps);
    if (std::fabs(k - t.q) < 1e-3) continue;
    if ((k >= t.q) == corner_wins) out.push_back(t);
  }
  return out;
}

Outcome variational() {
  double omega = 0.0;
  int omega_count = 0;
  for (double q : {1.1, 1.3, 1.6, 2.0, 2.5, 3.0, 5.0, 9.0}) {
    for (double eps : {0.0, 0.03, 0.1, 0.2, 0.3, 0.45, 0.5}) {
      for (double frac : {0.01, 0.1, 0.3, 0.6, 0.9, 1.0}) {
        const double N = frac * (q - 1.0) / q;
        const double x = q * N / (q - 1.0);
        omega = std::max(omega, std::fabs(omega_max_phi_nu(q, N, eps).value - 0.5 * psi_2q(x, eps, q)));
        ++omega_count;
      }
    }
  }

  // First form: the corner anchor.
  double first = 0.0;
  const std::vector<Triple> wins = triples(true, 50, 11);
  const std::vector<Triple> inner = triples(false, 50, 12);
  for (const std::vector<Triple>* set : {&wins, &inner}) {
    for (std::size_t i = 0; i < 25; ++i) {
      const Triple& t = (*set)[i];
      first = std::max(first, std::fabs(big_m({t.corner(), t.x()}, t.q, t.N, t.eps) - corner_kappa(t.q, t.N, t.eps)));
    }
  }
  // Second form: the corner dominates every anchor.
  double second = -std::numeric_limits<double>::infinity();
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const Triple& t : wins) {
    const double m = big_m(t.anchor(u(rng) * t.corner()), t.q, t.N, t.eps);
    second = std::max(second, m - corner_kappa(t.q, t.N, t.eps));
  }
  // Third form: the top anchor, and the chain for a random anchor.
  double third = 0.0, chain = -std::numeric_limits<double>::infinity();
  for (const Triple& t : inner) {
    const double a0 = alpha0_solve(t.N + 1.0 / t.q, t.eps);
    const double top = big_m(t.anchor(0.0), t.q, t.N, t.eps);
    third = std::max(third, std::fabs(top - (a0 - 1.0) / phi_eps(a0, t.eps)));
    const double mid = big_m(t.anchor(u(rng) * t.corner()), t.q, t.N, t.eps);
    chain = std::max({chain, corner_kappa(t.q, t.N, t.eps) - mid, mid - top});
  }

  bool decreasing = true;
  for (std::size_t i = 0; i < 5; ++i) {
    const Triple& t = inner[i];
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 20; ++k) {
      const double a = alpha_star(k / 20.0 * t.corner(), t.q, t.N, t.eps);
      decreasing = decreasing && a < prev;
      prev = a;
    }
  }

  const bool ok = omega_count >= 200 && omega <= 1e-6 && first <= 1e-5 && second <= 1e-5 && third <= 1e-5 &&
                  chain <= 1e-5 && decreasing;
  return {ok, std::to_string(omega_count) + " triples, omega err " + sci(omega) + "; M err " + sci(first) + " / " +
                  sci(second) + " / " + sci(third) + ", chain " + sci(chain) + "; alpha* decreasing " +
                  (decreasing ? "yes" : "no")};
}

Outcome tightness_trend() {
  bool ok = true;
  double worst200 = 0.0;
  for (const TrendTriple& t : tightness_panel()) {
    for (TightnessKind kind : {TightnessKind::Renyi2, TightnessKind::Nhc}) {
      double prev = std::numeric_limits<double>::infinity();
      for (int n : {50, 100, 200}) {
        const double s = tightness_instance(kind, t.q, t.eps, t.x, n).slack;
        ok = ok && s < prev && s >= -1e-9;
        prev = s;
      }
      worst200 = std::max(worst200, prev);
    }
  }
  return {ok && worst200 < 0.05, "strictly decreasing on the panel, max slack(200) " + sci(worst200)};
}

Outcome fixed_point() {
  double residual = 0.0, below = 0.0;
  double lo = 2.0, hi = 1.0;
  bool in_range = true;
  for (std::uint64_t t = 0; t < 10; ++t) {
    const CubeFunction f = random_function(8, FunctionModel::LogUniform, derive_seed(7, {t}));
    for (double eps : {0.05, 0.2, 0.4}) {
      const double qs = best_q(f, eps);
      residual = std::max(residual, std::fabs(fixed_point_map(f, eps, qs) - qs));
      for (double q = 1.01; q <= 4.0; q += 0.01) below = std::max(below, qs - fixed_point_map(f, eps, q));
    }
    const double q_small = best_q(f, 1e-3);
    lo = std::min(lo, q_small);
    hi = std::max(hi, q_small);
    in_range = in_range && q_small > 1.9 && q_small < 2.0;
  }
  return {residual <= 1e-8 && below <= 1e-9 && in_range,
          "|F(q*) - q*| " + sci(residual) + ", grid undercut " + sci(below) + ", q*(1e-3) in [" + sci(lo, 6) + ", " +
              sci(hi, 6) + "]"};
}

// Tightness here is the share of the spectral gap n - lambda certified by
// the bound; 1 means exact.
Outcome eigen_bound() {
  bool all_pass = true, small_radius = true, grows = true;
  double star = 0.0, prev_r1 = 0.0;
  int sets = 0;
  for (int n = 4; n <= 14; ++n) {
    std::vector<double> share;
    for (int r = 0; r < n; ++r) {
      const CheckReport c = eigen_bound_check(n, hamming_ball_points(n, r));
      all_pass = all_pass && c.pass;
      ++sets;
      for (const auto& [k, v] : c.extras) {
        if (k == "tightness") share.push_back(v);
      }
    }
    for (std::size_t r = 1; r + 1 < share.size(); ++r) small_radius = small_radius && share[r] > share[r + 1];
    grows = grows && share[1] > prev_r1;
    prev_r1 = share[1];
    star = std::max(star, std::fabs(max_induced_eigenvalue(n, hamming_ball_points(n, 1)) - std::sqrt(double(n))));
  }
  return {all_pass && star <= 1e-8 && small_radius && grows,
          std::to_string(sets) + " balls pass, star err " + sci(star) + ", certified gap share peaks at radius 1 " +
              (small_radius ? "yes" : "no") + " and rises with n to " + sci(prev_r1)};
}

Outcome determinism() {
  if (suite_runs().empty()) return {false, "suite did not run"};
  SuiteConfig c;
  c.seed = 42;
  c.threads = 3;
  const std::string again = suite_report_json(run_suite(c));
  const std::string& first = suite_runs().front().json;
  return {again == first, std::to_string(first.size()) + " bytes, " + (again == first ? "identical" : "different")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"endpoint identities", endpoints},     {"inequality suite", inequality_suite},
      {"dominance", dominance},               {"MGL product tightness", mgl_products},
      {"variational cross-check", variational}, {"tightness trend", tightness_trend},
      {"fixed point", fixed_point},           {"eigenvalue bound", eigen_bound},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("criterion %zu %-24s %s  %s\n", i + 1, criteria[i].first.c_str(), o.pass ? "PASS" : "FAIL",
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
