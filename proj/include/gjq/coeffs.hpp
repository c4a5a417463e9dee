#pragma once

// Coefficients p_j, q_j of the amplitude series P(x) ~ sum p_j / kappa^j,
// Q(x) ~ sum q_j / kappa^j, obtained numerically at each x by reverting
//   phi(z) - phi(z_+) = w^2 / 2
// around the saddle point z_+ and expanding
//   f(w) = [(1 - z^2)(x - z)]^{-1/2} dz/dw.
// Also the derived coefficients of the derivative expansions (r_j, s_j for
// P', m_j, n_j for the scaled function v').

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "gjq/error.hpp"
#include "gjq/params.hpp"
#include "gjq/phase.hpp"
#include "gjq/series.hpp"

namespace gjq {

using cplx = std::complex<double>;

enum class SaddleBranch { upper, lower };

struct SaddleData {
  double x = 0.0;
  double u = 0.0;
  cplx z_plus;
  std::vector<cplx> phi_derivs;  ///< phi_derivs[k] = k-th derivative of phi at the saddle, k = 1..max_order
  cplx z1;                       ///< 1/sqrt(phi''), branch fixed by f_0
  cplx prefactor0;               ///< [(1 - z^2)(x - z)]^{-1/2} at the saddle (principal branch)
};

struct CoeffTable {
  double x = 0.0;
  int J = 0;
  std::vector<double> p, q;    ///< amplitude coefficients
  std::vector<double> r, s;    ///< derivative expansion, same parameters
  std::vector<double> m, nn;   ///< expansion of v'
  std::vector<double> dp, dq;  ///< x-derivatives of p_j, q_j
};

namespace detail {

inline double double_factorial_odd(int j) {  // (2j-1)!! = 2^j (1/2)_j
  double r = 1.0;
  for (int k = 1; k <= j; ++k) r *= 2.0 * k - 1.0;
  return r;
}

}  // namespace detail

/// Saddle point z_+ (or its conjugate) and the derivatives of
///   phi(z) = -(1+tau) ln(1-z) - (1-tau) ln(1+z) + (1-sigma) ln(x-z)
/// up to max_order, in closed form.
inline SaddleData saddle(const JacobiParams& p, double x, int max_order,
                         SaddleBranch branch = SaddleBranch::upper) {
  if (!(x > p.x_minus && x < p.x_plus))
    throw domain_error("saddle point requires x strictly between the turning points");
  SaddleData s;
  s.x = x;
  s.u = detail::u_unchecked(p, x);
  if (!(s.u > 0.0)) throw domain_error("saddle points collide with the real axis");
  const double im = branch == SaddleBranch::upper ? s.u : -s.u;
  const cplx z = cplx(x - p.tau, im) / (1.0 + p.sigma);
  s.z_plus = z;

  const cplx a = 1.0 - z, b = 1.0 + z, c = x - z;
  s.phi_derivs.assign(static_cast<std::size_t>(std::max(max_order, 2)) + 1, cplx{});
  cplx pa = a, pb = b, pc = c;
  double fact = 1.0;  // (k-1)!
  double sign = -1.0;  // (-1)^k
  for (int k = 1; k < static_cast<int>(s.phi_derivs.size()); ++k) {
    if (k > 1) {
      fact *= k - 1;
      pa *= a;
      pb *= b;
      pc *= c;
      sign = -sign;
    }
    s.phi_derivs[k] = (1.0 + p.tau) * fact / pa + sign * (1.0 - p.tau) * fact / pb -
                      (1.0 - p.sigma) * fact / pc;
  }

  const cplx phi2 = s.phi_derivs[2];
  if (std::abs(phi2) < 1e-300) throw domain_error("degenerate saddle point");
  s.z1 = 1.0 / std::sqrt(phi2);
  s.prefactor0 = 1.0 / std::sqrt(a * b * c);

  // Pin the branch of z1 so that f_0 = e^{i pi/4} / sqrt(2 U).
  cplx target = std::polar(1.0 / std::sqrt(2.0 * s.u), std::numbers::pi / 4.0);
  if (branch == SaddleBranch::lower) target = std::conj(target);
  const cplx f0 = s.prefactor0 * s.z1;
  if (std::abs(f0 + target) < std::abs(f0 - target)) s.z1 = -s.z1;
  return s;
}

/// Taylor coefficients a_k = phi^{(k)}(z_+)/k! of phi(z_+ + t) - phi(z_+), k = 0..max_order.
inline std::vector<cplx> phi_taylor(const SaddleData& s) {
  std::vector<cplx> a(s.phi_derivs.size(), cplx{});
  double fact = 1.0;
  for (std::size_t k = 1; k < a.size(); ++k) {
    fact *= static_cast<double>(k);
    if (k >= 2) a[k] = s.phi_derivs[k] / fact;
  }
  return a;
}

/// Coefficients t_k of z = z_+ + sum_{k>=1} t_k w^k, returned as a series
/// with t[0] = 0 and length 2J+3 (through w^{2J+2}).
inline std::vector<cplx> z_coeffs(const SaddleData& s, int J) {
  const std::size_t len = 2 * static_cast<std::size_t>(J) + 3;
  if (s.phi_derivs.size() < len + 1) throw domain_error("z_coeffs: saddle data has too few derivatives");
  const auto a = phi_taylor(s);
  std::vector<cplx> t(len, cplx{});
  t[1] = s.z1;
  // Coefficient of w^{k+1} in sum a_m t^m is 2 a_2 z1 t_k + (terms in t_1..t_{k-1}),
  // and 2 a_2 = 1/z1^2.
  for (std::size_t k = 2; k < len; ++k) {
    const std::span<const cplx> outer(a.data(), k + 2);
    const std::span<const cplx> inner(t.data(), k + 1);
    const auto comp = series::compose<cplx>(outer, inner, k + 2);
    t[k] = -comp[k + 1] * s.z1;
  }
  return t;
}

/// Coefficients of phi(z(w)) - phi(z_+) - w^2/2 through w^{2J+3}; all vanish for an exact reversion.
inline std::vector<cplx> reversion_residual(const SaddleData& s, std::span<const cplx> t) {
  const auto a = phi_taylor(s);
  const std::size_t len = std::min(a.size(), t.size() + 1);
  auto comp = series::compose<cplx>(std::span<const cplx>(a.data(), len), t, len);
  comp[2] -= 0.5;
  return comp;
}

/// Series f(w) = [(1 - z^2)(x - z)]^{-1/2} dz/dw through w^{2J}.
inline std::vector<cplx> f_series(const JacobiParams& p, double x, int J,
                                  SaddleBranch branch = SaddleBranch::upper) {
  if (J < 0) throw domain_error("truncation order must be nonnegative");
  const auto s = saddle(p, x, 2 * J + 3, branch);
  const auto t = z_coeffs(s, J);
  const std::size_t len = 2 * static_cast<std::size_t>(J) + 1;

  const cplx a = 1.0 - s.z_plus, b = 1.0 + s.z_plus, c = x - s.z_plus;
  // (a - t)(b + t)(c - t) as a cubic in t
  const std::vector<cplx> g{a * b * c, (a - b) * c - a * b, -c - (a - b), cplx(1.0)};
  const auto G = series::compose<cplx>(g, t, len);
  const auto H = series::pow<cplx, double>(G, -0.5, s.prefactor0, len);
  const auto dt = series::derivative<cplx>(t);
  return series::mul<cplx>(H, dt, len);
}

/// c_j = (2j-1)!! f_{2j}/f_0 = p_j + i q_j for j = 0..J.
inline std::vector<cplx> c_series(const JacobiParams& p, double x, int J,
                                  SaddleBranch branch = SaddleBranch::upper) {
  const auto f = f_series(p, x, J, branch);
  std::vector<cplx> c(static_cast<std::size_t>(J) + 1);
  for (int j = 0; j <= J; ++j) c[j] = detail::double_factorial_odd(j) * f[2 * j] / f[0];
  c[0] = 1.0;
  return c;
}

/// Fills p and q.
inline CoeffTable c_coeffs(const JacobiParams& p, double x, int J) {
  if (J > 6) throw domain_error("truncation order above 6 is not supported");
  const auto c = c_series(p, x, J);
  CoeffTable t;
  t.x = x;
  t.J = J;
  t.p.resize(c.size());
  t.q.resize(c.size());
  for (std::size_t j = 0; j < c.size(); ++j) {
    t.p[j] = c[j].real();
    t.q[j] = c[j].imag();
  }
  return t;
}

/// dp/dx, dq/dx by fourth-order central differences of the c_coeffs pipeline.
inline void coeff_derivatives(CoeffTable& t, const JacobiParams& p) {
  if (!t.dp.empty()) return;
  const double x = t.x;
  double h = p.span() * 1e-5;
  h = std::min({h, 0.25 * (x - p.x_minus), 0.25 * (p.x_plus - x)});
  const auto m2 = c_coeffs(p, x - 2 * h, t.J);
  const auto m1 = c_coeffs(p, x - h, t.J);
  const auto p1 = c_coeffs(p, x + h, t.J);
  const auto p2 = c_coeffs(p, x + 2 * h, t.J);
  const std::size_t len = t.p.size();
  t.dp.assign(len, 0.0);
  t.dq.assign(len, 0.0);
  for (std::size_t j = 1; j < len; ++j) {
    t.dp[j] = (m2.p[j] - 8.0 * m1.p[j] + 8.0 * p1.p[j] - p2.p[j]) / (12.0 * h);
    t.dq[j] = (m2.q[j] - 8.0 * m1.q[j] + 8.0 * p1.q[j] - p2.q[j]) / (12.0 * h);
  }
}

/// Fills r, s: R = P - Q'/(kappa chi') - A'/(kappa A chi') Q, S = Q + P'/(kappa chi') + A'/(kappa A chi') P,
/// with A = 1/sqrt(w U).
inline void rs_coeffs(CoeffTable& t, const JacobiParams& p) {
  coeff_derivatives(t, p);
  const double x = t.x;
  const double u = detail::u_unchecked(p, x);
  const double chi1 = detail::chi_prime_unchecked(x, u);
  const double dlog_w = -p.alpha / (1.0 - x) + p.beta / (1.0 + x);
  const double dlog_u = -(p.sigma * p.tau + x) / (u * u);
  const double a_ratio = -0.5 * (dlog_w + dlog_u) / chi1;

  const std::size_t len = t.p.size();
  t.r.assign(len, 0.0);
  t.s.assign(len, 0.0);
  t.r[0] = t.p[0];
  t.s[0] = t.q[0];
  for (std::size_t j = 1; j < len; ++j) {
    t.r[j] = t.p[j] - t.dq[j - 1] / chi1 - a_ratio * t.q[j - 1];
    t.s[j] = t.q[j] + t.dp[j - 1] / chi1 + a_ratio * t.p[j - 1];
  }
}

/// Fills m, nn: m_j = p_j - p(x) q'_{j-1} - q(x) q_{j-1}, n_j = q_j + p(x) p'_{j-1} + q(x) p_{j-1}.
inline void mn_coeffs(CoeffTable& t, const JacobiParams& p) {
  if (!(std::abs(t.x) < 1.0)) throw domain_error("mn_coeffs requires |x| < 1");
  coeff_derivatives(t, p);
  const double x = t.x;
  const double u = detail::u_unchecked(p, x);
  const double one_m_x2 = (1.0 - x) * (1.0 + x);
  const double px = one_m_x2 / u;
  const double qx = (one_m_x2 * (x + p.sigma * p.tau) - 2.0 * x * u * u) / (2.0 * u * u * u);

  const std::size_t len = t.p.size();
  t.m.assign(len, 0.0);
  t.nn.assign(len, 0.0);
  t.m[0] = t.p[0];
  t.nn[0] = t.q[0];
  for (std::size_t j = 1; j < len; ++j) {
    t.m[j] = t.p[j] - px * t.dq[j - 1] - qx * t.q[j - 1];
    t.nn[j] = t.q[j] + px * t.dp[j - 1] + qx * t.p[j - 1];
  }
}

/// All coefficient families at x.
inline CoeffTable coeff_table(const JacobiParams& p, double x, int J) {
  auto t = c_coeffs(p, x, J);
  rs_coeffs(t, p);
  mn_coeffs(t, p);
  return t;
}

}  // namespace gjq
