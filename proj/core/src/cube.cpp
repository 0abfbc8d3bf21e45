#include "hcube/cube.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <numeric>
#include <string>

#include "hcube/error.hpp"

namespace hcube {

namespace {

constexpr int kDefaultCap = 24;
constexpr int kHardCap = 30;

std::atomic<int>& cap_storage() {
  static std::atomic<int> cap = [] {
    int cap = kDefaultCap;
    if (const char* env = std::getenv("CUBE_MAX_N")) {
      char* end = nullptr;
      long v = std::strtol(env, &end, 10);
      if (end != env && *end == '\0' && v >= 0 && v <= kHardCap) cap = static_cast<int>(v);
    }
    return cap;
  }();
  return cap;
}

void check_dim(int n) {
  if (n < 0) throw Error(ErrorCode::DomainError, "dimension must be >= 0, got " + std::to_string(n));
  if (n > dimension_cap()) {
    throw Error(ErrorCode::DimensionTooLarge,
                "n = " + std::to_string(n) + " exceeds cap " + std::to_string(dimension_cap()));
  }
}

void fwht(std::vector<double>& a) {
  const std::size_t len = a.size();
  for (std::size_t h = 1; h < len; h <<= 1) {
    for (std::size_t i = 0; i < len; i += h << 1) {
      for (std::size_t j = i; j < i + h; ++j) {
        const double u = a[j];
        const double v = a[j + h];
        a[j] = u + v;
        a[j + h] = u - v;
      }
    }
  }
}

std::vector<double> rho_powers(int n, double rho) {
  std::vector<double> pw(static_cast<std::size_t>(n) + 1);
  pw[0] = 1.0;
  for (int k = 1; k <= n; ++k) pw[k] = pw[k - 1] * rho;
  return pw;
}

void require_order(double q) {
  if (!(q >= 1.0) || !std::isfinite(q)) {
    throw Error(ErrorCode::InvalidOrder, "norm order must be a finite q >= 1, got " + std::to_string(q));
  }
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

// E (|f|/M)^q with M = max |f|; returns 0 for the zero function.
double scaled_moment(std::span<const double> v, double m, double q) {
  double acc = 0.0;
  for (double x : v) {
    const double a = std::fabs(x) / m;
    if (a > 0.0) acc += (q == 1.0) ? a : (q == 2.0 ? a * a : std::pow(a, q));
  }
  return acc / static_cast<double>(v.size());
}

}  // namespace

int dimension_cap() { return cap_storage().load(std::memory_order_relaxed); }

void set_dimension_cap(int cap) {
  if (cap < 0 || cap > kHardCap) {
    throw Error(ErrorCode::DomainError, "dimension cap must lie in [0, " + std::to_string(kHardCap) + "]");
  }
  cap_storage().store(cap, std::memory_order_relaxed);
}

NoiseParam::NoiseParam(double eps) : eps_(eps) {
  if (!(eps >= 0.0 && eps <= 0.5)) {
    throw Error(ErrorCode::InvalidNoise, "noise parameter must lie in [0, 1/2], got " + std::to_string(eps));
  }
}

CubeFunction::CubeFunction(int n, std::vector<double> values) : n_(n), values_(std::move(values)) {
  check_dim(n);
  const std::size_t expected = std::size_t{1} << n;
  if (values_.size() != expected) {
    throw Error(ErrorCode::LengthMismatch, "expected " + std::to_string(expected) + " values for n = " +
                                               std::to_string(n) + ", got " + std::to_string(values_.size()));
  }
  nonnegative_ = true;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw Error(ErrorCode::NonFiniteValue, "value at index " + std::to_string(i) + " is not finite");
    }
    if (values_[i] < 0.0) nonnegative_ = false;
  }
}

CubeFunction CubeFunction::constant(int n, double c) {
  check_dim(n);
  return CubeFunction(n, std::vector<double>(std::size_t{1} << n, c));
}

bool CubeFunction::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

bool CubeFunction::is_constant() const {
  return std::all_of(values_.begin(), values_.end(), [&](double v) { return v == values_.front(); });
}

double CubeFunction::mean() const {
  return std::accumulate(values_.begin(), values_.end(), 0.0) / static_cast<double>(values_.size());
}

std::size_t CubeFunction::support_size() const {
  return static_cast<std::size_t>(
      std::count_if(values_.begin(), values_.end(), [](double v) { return v != 0.0; }));
}

CubeFunction CubeFunction::abs() const {
  std::vector<double> out(values_.size());
  std::transform(values_.begin(), values_.end(), out.begin(), [](double v) { return std::fabs(v); });
  return CubeFunction(n_, std::move(out));
}

CubeFunction CubeFunction::squared() const {
  std::vector<double> out(values_.size());
  std::transform(values_.begin(), values_.end(), out.begin(), [](double v) { return v * v; });
  return CubeFunction(n_, std::move(out));
}

CubeFunction CubeFunction::scaled(double c) const {
  std::vector<double> out(values_.size());
  std::transform(values_.begin(), values_.end(), out.begin(), [c](double v) { return c * v; });
  return CubeFunction(n_, std::move(out));
}

CubeFunction make_function(int n, std::vector<double> values) { return CubeFunction(n, std::move(values)); }

Spectrum::Spectrum(int n, std::vector<double> coeffs) : n_(n), coeffs_(std::move(coeffs)) {
  check_dim(n);
  if (coeffs_.size() != (std::size_t{1} << n)) {
    throw Error(ErrorCode::LengthMismatch, "spectrum length does not match 2^n");
  }
}

double Spectrum::energy() const {
  double acc = 0.0;
  for (double c : coeffs_) acc += c * c;
  return acc;
}

Spectrum walsh_transform(const CubeFunction& f) {
  std::vector<double> a(f.values().begin(), f.values().end());
  fwht(a);
  const double inv = 1.0 / static_cast<double>(a.size());
  for (double& c : a) c *= inv;
  return Spectrum(f.dim(), std::move(a));
}

CubeFunction inverse_walsh(const Spectrum& s) {
  std::vector<double> a(s.coeffs().begin(), s.coeffs().end());
  fwht(a);
  return CubeFunction(s.dim(), std::move(a));
}

CubeFunction noise_apply(const CubeFunction& f, NoiseParam eps) {
  if (eps.eps() == 0.0 || f.is_constant()) return f;
  std::vector<double> a(f.values().begin(), f.values().end());
  fwht(a);
  const auto pw = rho_powers(f.dim(), eps.rho());
  const double inv = 1.0 / static_cast<double>(a.size());
  for (std::size_t s = 0; s < a.size(); ++s) a[s] *= pw[popcount(s)] * inv;
  fwht(a);
  // T_eps is positivity preserving; drop round-off below zero.
  if (f.nonnegative()) {
    for (double& v : a) v = std::max(v, 0.0);
  }
  return CubeFunction(f.dim(), std::move(a));
}

double inner_product_noisy(const CubeFunction& f, NoiseParam eps) {
  const Spectrum s = walsh_transform(f);
  const auto pw = rho_powers(f.dim(), eps.rho());
  double acc = 0.0;
  for (std::size_t m = 0; m < s.coeffs().size(); ++m) acc += pw[popcount(m)] * s[m] * s[m];
  return acc;
}

double lq_norm(const CubeFunction& f, double q) {
  require_order(q);
  const double m = max_abs(f.values());
  if (m == 0.0) return 0.0;
  return m * std::pow(scaled_moment(f.values(), m, q), 1.0 / q);
}

double log2_lq_norm(const CubeFunction& f, double q) {
  require_order(q);
  const double m = max_abs(f.values());
  if (m == 0.0) throw Error(ErrorCode::ZeroFunction, "log-norm of the zero function");
  return std::log2(m) + std::log2(scaled_moment(f.values(), m, q)) / q;
}

double renyi_entropy(const CubeFunction& f, double q) {
  require_order(q);
  if (!f.nonnegative()) throw Error(ErrorCode::NegativeValue, "entropy needs a nonnegative function");
  const double total = std::accumulate(f.values().begin(), f.values().end(), 0.0);
  if (total == 0.0) throw Error(ErrorCode::ZeroFunction, "entropy of the zero function");

  // Ent_q(f/||f||_1) = n + log2(sum p^q) / (q-1) with p = f / sum f.
  const double n = static_cast<double>(f.dim());
  if (q == 1.0) {
    double acc = 0.0;
    for (double v : f.values()) {
      if (v > 0.0) {
        const double p = v / total;
        acc += p * std::log2(p);
      }
    }
    return n + acc;
  }
  // sum p^q - 1 = sum p (p^{q-1} - 1), kept accurate as q -> 1.
  double excess = 0.0;
  for (double v : f.values()) {
    if (v > 0.0) {
      const double p = v / total;
      excess += p * std::expm1((q - 1.0) * std::log(p));
    }
  }
  if (excess > -0.5) return n + std::log1p(excess) / ((q - 1.0) * std::numbers::ln2);
  // sum p^q far below 1: log1p would cancel, so sum directly around the max.
  const double top = *std::max_element(f.values().begin(), f.values().end()) / total;
  double scaled = 0.0;
  for (double v : f.values()) {
    if (v > 0.0) scaled += std::exp(q * std::log(v / total / top));
  }
  return n + (q * std::log2(top) + std::log2(scaled)) / (q - 1.0);
}

double shannon_entropy(const CubeFunction& f) {
  if (!f.nonnegative()) throw Error(ErrorCode::NegativeValue, "entropy needs a nonnegative function");
  const double m = f.mean();
  if (m == 0.0) throw Error(ErrorCode::ZeroFunction, "entropy of the zero function");
  double acc = 0.0;
  for (double v : f.values()) {
    if (v > 0.0) acc += v * std::log2(v / m);
  }
  return acc / static_cast<double>(f.size());
}

double dirichlet_form(const CubeFunction& f, const CubeFunction& g) {
  if (f.dim() != g.dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                "dimensions " + std::to_string(f.dim()) + " and " + std::to_string(g.dim()) + " differ");
  }
  double acc = 0.0;
  for (std::size_t x = 0; x < f.size(); ++x) {
    for (int i = 0; i < f.dim(); ++i) {
      const std::size_t y = x ^ (std::size_t{1} << i);
      acc += (f[x] - f[y]) * (g[x] - g[y]);
    }
  }
  return acc / static_cast<double>(f.size());
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

int popcount(std::uint64_t x) { return std::popcount(x); }

CubeFunction sphere_indicator(int n, int r) {
  check_dim(n);
  if (r < 0 || r > n) throw Error(ErrorCode::RadiusOutOfRange, "radius " + std::to_string(r) + " not in [0, n]");
  std::vector<double> v(std::size_t{1} << n, 0.0);
  for (std::size_t x = 0; x < v.size(); ++x) v[x] = popcount(x) == r ? 1.0 : 0.0;
  return CubeFunction(n, std::move(v));
}

CubeFunction ball_indicator(int n, int r) {
  check_dim(n);
  if (r < 0 || r > n) throw Error(ErrorCode::RadiusOutOfRange, "radius " + std::to_string(r) + " not in [0, n]");
  std::vector<double> v(std::size_t{1} << n, 0.0);
  for (std::size_t x = 0; x < v.size(); ++x) v[x] = popcount(x) <= r ? 1.0 : 0.0;
  return CubeFunction(n, std::move(v));
}

CubeFunction sphere_mixture(int n, int r, double v) {
  check_dim(n);
  if (r < 0 || r > n) throw Error(ErrorCode::RadiusOutOfRange, "radius " + std::to_string(r) + " not in [0, n]");
  if (!(v >= 0.0) || !std::isfinite(v)) throw Error(ErrorCode::DomainError, "sphere value must be finite and >= 0");
  const double cube = std::ldexp(1.0, n);
  const double sphere = static_cast<double>(binomial(n, r));
  const double mass = sphere * v;
  double rest = 0.0;
  if (sphere == cube) {
    if (v != 1.0) throw Error(ErrorCode::MassOverflow, "sphere covers the cube; value must be 1");
  } else {
    if (mass > cube) throw Error(ErrorCode::MassOverflow, "sphere mass exceeds 2^n");
    rest = (cube - mass) / (cube - sphere);
  }
  std::vector<double> vals(std::size_t{1} << n);
  for (std::size_t x = 0; x < vals.size(); ++x) vals[x] = popcount(x) == r ? v : rest;
  return CubeFunction(n, std::move(vals));
}

}  // namespace hcube
