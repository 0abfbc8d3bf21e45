#pragma once

// Dense functions on the boolean cube {0,1}^n under the uniform measure.
//
// A point x is stored as a bitmask; values[x] is f(x). Walsh coefficients
// are orthonormal: fhat(S) = E_x f(x) (-1)^{|x & S|}, so Parseval reads
// sum_S fhat(S)^2 = E f^2 and the noise operator acts as
// fhat(S) -> (1-2 eps)^{|S|} fhat(S).

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hcube {

/// Largest admissible dimension. Reads CUBE_MAX_N on first use (default 24).
int dimension_cap();
void set_dimension_cap(int cap);

class NoiseParam {
 public:
  explicit NoiseParam(double eps);

  double eps() const noexcept { return eps_; }
  /// Eigenvalue base rho = 1 - 2 eps.
  double rho() const noexcept { return 1.0 - 2.0 * eps_; }

 private:
  double eps_;
};

class CubeFunction {
 public:
  CubeFunction(int n, std::vector<double> values);

  static CubeFunction constant(int n, double c);

  int dim() const noexcept { return n_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t x) const { return values_[x]; }

  bool nonnegative() const noexcept { return nonnegative_; }
  bool is_zero() const;
  bool is_constant() const;

  double mean() const;
  std::size_t support_size() const;

  CubeFunction abs() const;
  CubeFunction squared() const;
  CubeFunction scaled(double c) const;

 private:
  int n_;
  std::vector<double> values_;
  bool nonnegative_;
};

CubeFunction make_function(int n, std::vector<double> values);

class Spectrum {
 public:
  Spectrum(int n, std::vector<double> coeffs);

  int dim() const noexcept { return n_; }
  std::span<const double> coeffs() const noexcept { return coeffs_; }
  double operator[](std::size_t mask) const { return coeffs_[mask]; }
  /// sum_S fhat(S)^2
  double energy() const;

 private:
  int n_;
  std::vector<double> coeffs_;
};

Spectrum walsh_transform(const CubeFunction& f);
CubeFunction inverse_walsh(const Spectrum& s);

/// T_eps f, computed by scaling the Walsh spectrum.
CubeFunction noise_apply(const CubeFunction& f, NoiseParam eps);

/// <T_eps f, f> = sum_S (1-2 eps)^{|S|} fhat(S)^2.
double inner_product_noisy(const CubeFunction& f, NoiseParam eps);

/// (E |f|^q)^{1/q}, q >= 1.
double lq_norm(const CubeFunction& f, double q);
/// log2 ||f||_q, finite for non-zero f.
double log2_lq_norm(const CubeFunction& f, double q);

/// Renyi entropy of f / ||f||_1:  Ent_q = (1/(q-1)) log2 E g^q with E g = 1.
/// q == 1 is accepted and returns the Shannon limit.
double renyi_entropy(const CubeFunction& f, double q);

/// Ent(f) = E f log2 f - E f log2 E f, with 0 log 0 = 0. Not normalized.
double shannon_entropy(const CubeFunction& f);

/// E_x sum_{y ~ x} (f(x) - f(y)) (g(x) - g(y)).
double dirichlet_form(const CubeFunction& f, const CubeFunction& g);

std::uint64_t binomial(int n, int k);
int popcount(std::uint64_t x);

CubeFunction sphere_indicator(int n, int r);
CubeFunction ball_indicator(int n, int r);
/// v on the sphere of radius r around 0, constant elsewhere so that E f = 1.
CubeFunction sphere_mixture(int n, int r, double v);

}  // namespace hcube
