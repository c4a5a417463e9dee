#pragma once

// Independent reference computations used only by the tests. Nothing here
// calls into the library's asymptotic machinery.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "gjq/params.hpp"

namespace gjq::test {

using big = boost::multiprecision::cpp_bin_float_50;
using rational = boost::multiprecision::cpp_rational;
using cplx = std::complex<double>;

/// psi straight from its four logarithms, 50 digits.
inline big psi_reference(double sigma, double tau) {
  const big s(sigma), t(tau);
  return -(1 - t) * log(1 - t) / 2 - (1 + t) * log(1 + t) / 2 + (1 + s) * log(1 + s) / 2 +
         (1 - s) * log(1 - s) / 2;
}

/// U(x) from the unfactored radical 1 - 2 sigma tau x - tau^2 - sigma^2 - x^2, 50 digits.
inline big u_radical(const JacobiParams& p, double x) {
  const big s(p.sigma), t(p.tau), X(x);
  const big r = 1 - 2 * s * t * X - t * t - s * s - X * X;
  return r > 0 ? sqrt(r) : big(0);
}

/// sigma, tau and kappa in exact rational form.
struct ExactScalings {
  rational kappa, sigma, tau;
};

inline ExactScalings exact_scalings(int n, int alpha, int beta) {
  ExactScalings e;
  e.kappa = rational(2 * n + alpha + beta + 1, 2);
  e.sigma = rational(alpha + beta) / (2 * e.kappa);
  e.tau = rational(alpha - beta) / (2 * e.kappa);
  return e;
}

/// phi'(z) = (1+tau)/(1-z) - (1-tau)/(1+z) - (1-sigma)/(x-z)
inline cplx phi_prime(const JacobiParams& p, double x, cplx z) {
  return (1.0 + p.tau) / (1.0 - z) - (1.0 - p.tau) / (1.0 + z) - (1.0 - p.sigma) / (x - z);
}

/// Saddle point found by Newton's method on phi' from a complex starting point.
inline cplx saddle_by_newton(const JacobiParams& p, double x, cplx z) {
  for (int it = 0; it < 100; ++it) {
    const cplx d2 = (1.0 + p.tau) / ((1.0 - z) * (1.0 - z)) + (1.0 - p.tau) / ((1.0 + z) * (1.0 + z)) -
                    (1.0 - p.sigma) / ((x - z) * (x - z));
    const cplx step = phi_prime(p, x, z) / d2;
    z -= step;
    if (std::abs(step) < 1e-16) break;
  }
  return z;
}

/// Reverted-series coefficients z_2, z_3, z_4 from z_1 and the derivatives phi_k at the saddle.
struct ClosedFormZ {
  cplx z2, z3, z4;
};

inline ClosedFormZ z_closed_form(cplx z1, cplx phi3, cplx phi4, cplx phi5) {
  ClosedFormZ c;
  const cplx z1_2 = z1 * z1;
  c.z2 = -z1_2 * z1_2 * phi3 / 6.0;
  c.z3 = std::pow(z1, 5) * (5.0 * z1_2 * phi3 * phi3 - 3.0 * phi4) / 72.0;
  c.z4 = -std::pow(z1, 6) * (9.0 * phi5 - 45.0 * z1_2 * phi3 * phi4 + 40.0 * z1_2 * z1_2 * phi3 * phi3 * phi3) /
         1080.0;
  return c;
}

/// Closed form of c_1 in terms of z_+, x and z_1..z_3, with the overall
/// prefactor 1/(8 z_1 (1 - z_+^2)^2 (x - z_+)^2).
inline cplx c1_closed_form(double x, cplx z, cplx z1, cplx z2, cplx z3) {
  const cplx z1_3 = z1 * z1 * z1;
  const double x2 = x * x;
  const cplx zz2 = z * z, zz3 = zz2 * z, zz4 = zz3 * z, zz5 = zz4 * z, zz6 = zz5 * z;
  const cplx bracket =
      -6.0 * z1_3 * zz2 + 3.0 * z1_3 - 72.0 * z1 * z2 * zz2 * x + 24.0 * z1 * z * z2 * x2 -
      24.0 * z1 * zz3 * z2 * x2 - 48.0 * z3 * x * z - 48.0 * z3 * zz2 * x2 + 96.0 * z3 * zz3 * x +
      24.0 * z3 * zz4 * x2 - 48.0 * z3 * zz5 * x - 12.0 * z1 * z * z2 + 48.0 * z1 * zz3 * z2 -
      48.0 * z3 * zz4 + 24.0 * z3 * zz6 + 12.0 * z1 * z2 * x - 36.0 * z1 * z2 * zz5 - 4.0 * z1_3 * x * z +
      8.0 * z1_3 * zz2 * x2 - 20.0 * z1_3 * zz3 * x + 4.0 * z1_3 * x2 + 15.0 * z1_3 * zz4 + 24.0 * z3 * x2 +
      24.0 * z3 * zz2 + 60.0 * z1 * z2 * zz4 * x;
  const cplx a = 1.0 - zz2;
  return bracket / (8.0 * z1 * a * a * (x - z) * (x - z));
}

/// Same c_1 from the expansion of the prefactor: 3 z3/z1 + 3 e1 z2 + e2 z1^2.
inline cplx c1_by_prefactor_expansion(double x, cplx z, cplx z1, cplx z2, cplx z3) {
  const cplx a = 1.0 - z, b = 1.0 + z, c = x - z;
  const cplx e1 = 0.5 / a - 0.5 / b + 0.5 / c;
  const cplx e2 = 0.5 * (0.5 / (a * a) + 0.5 / (b * b) + 0.5 / (c * c)) + 0.5 * e1 * e1;
  return 3.0 * z3 / z1 + 3.0 * e1 * z2 + e2 * z1 * z1;
}

/// P_n^{(alpha,beta)}(x) from the Rodrigues formula, expanded by Leibniz, in exact arithmetic:
///   P_n = 1/2^n sum_k C(n,k) (alpha+n)_{(k)} (beta+n)_{(n-k)} (x-1)^{n-k} (x+1)^k / n!
/// with falling factorials (a)_{(k)}.
inline rational rodrigues(int n, const rational& alpha, const rational& beta, const rational& x) {
  auto falling = [](const rational& a, int k) {
    rational r = 1;
    for (int i = 0; i < k; ++i) r *= a - i;
    return r;
  };
  auto ipow = [](const rational& b, int e) {
    rational r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
  };
  rational sum = 0;
  rational binom = 1;
  for (int k = 0; k <= n; ++k) {
    sum += binom * falling(alpha + n, n - k) * falling(beta + n, k) * ipow(x - 1, k) * ipow(x + 1, n - k);
    binom = binom * (n - k) / (k + 1);
  }
  rational nfact = 1;
  for (int i = 2; i <= n; ++i) nfact *= i;
  return sum / (ipow(rational(2), n) * nfact);
}

/// Gamma*(z) = sqrt(z/(2 pi)) e^z z^{-z} Gamma(z), 50 digits.
inline big gamma_star_reference(const big& z) {
  using boost::math::constants::pi;
  return sqrt(z / (2 * pi<big>())) * exp(z - z * log(z)) * boost::math::tgamma(z);
}

/// M C^2 from its definition: M = 2^{a+b+1} G(n+a+1) G(n+b+1) / (n! G(n+a+b+1)),
/// C^2 = 2^{-(a+b+1)} e^{2 kappa psi}; 50 digits.
inline big scaling_constant_reference(int n, double alpha, double beta) {
  using boost::math::lgamma;
  const big a(alpha), b(beta), N(n);
  const big kappa = N + (a + b + 1) / 2;
  const big s = (a + b) / (2 * kappa), t = (a - b) / (2 * kappa);
  const big ps = -(1 - t) * log(1 - t) / 2 - (1 + t) * log(1 + t) / 2 + (1 + s) * log(1 + s) / 2 +
                 (1 - s) * log(1 - s) / 2;
  const big log_m = lgamma(N + a + 1) + lgamma(N + b + 1) - lgamma(N + 1) - lgamma(N + a + b + 1);
  return exp(log_m + 2 * kappa * ps);
}

/// Random in-regime (n, alpha, beta) and a bulk point x, reproducible from the seed.
struct Sample {
  JacobiParams p;
  double x = 0.0;
};

inline std::vector<Sample> random_samples(int count, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> deg(20, 2000);
  std::uniform_real_distribution<double> par(0.0, 300.0);
  std::uniform_real_distribution<double> pos(0.1, 0.9);
  std::vector<Sample> out;
  while (static_cast<int>(out.size()) < count) {
    const auto p = derive_params(deg(rng), par(rng), par(rng));
    if (p.sigma > 0.95 || std::abs(p.tau) > 0.95) continue;
    out.push_back({p, p.x_minus + pos(rng) * p.span()});
  }
  return out;
}

}  // namespace gjq::test
