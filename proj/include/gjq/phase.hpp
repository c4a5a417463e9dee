#pragma once

// Phase and envelope functions of the oscillatory representation
//   P_n(x) ~ envelope(x) * [cos(kappa chi + pi/4) P(x) + sin(kappa chi + pi/4) Q(x)]
// on the interval between the turning points.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "gjq/error.hpp"
#include "gjq/params.hpp"

namespace gjq {

struct PhaseValue {
  double x = 0.0;
  double u = 0.0;
  double chi = 0.0;
  double chi_prime = 0.0;
  double xi = 0.0;
};

struct PsiValue {
  double psi = 0.0;
  double two_kappa_psi = 0.0;
};

namespace detail {

inline double turning_point_tolerance(const JacobiParams& p) {
  return 4.0 * std::numeric_limits<double>::epsilon() *
         std::max({1.0, std::abs(p.x_minus), std::abs(p.x_plus)});
}

// Unchecked U(x); caller guarantees x lies in [x_-, x_+] up to rounding.
inline double u_unchecked(const JacobiParams& p, double x) {
  const double prod = (p.x_plus - x) * (x - p.x_minus);
  return prod > 0.0 ? std::sqrt(prod) : 0.0;
}

inline double chi_unchecked(const JacobiParams& p, double x, double u) {
  const double s = p.sigma;
  const double t = p.tau;
  return (t + 1.0) * std::atan(u / (1.0 - x + s + t)) +
         (t - 1.0) * std::atan(u / (1.0 + x + s - t)) +
         (1.0 - s) * std::atan2(-u, t + x * s);
}

inline double chi_prime_unchecked(double x, double u) { return u / ((1.0 - x) * (1.0 + x)); }

// (1-s) ln(1-s) + (1+s) ln(1+s); even series below |s| = 1/8.
inline double entropy_pair(double s) {
  if (std::abs(s) < 0.125) {
    const double s2 = s * s;
    double power = s2;
    double sum = 0.0;
    for (int k = 1; k < 40; ++k) {
      const double term = power / (k * (2.0 * k - 1.0));
      sum += term;
      if (term <= 1e-18 * sum) break;
      power *= s2;
    }
    return sum;
  }
  return (1.0 - s) * std::log1p(-s) + (1.0 + s) * std::log1p(s);
}

}  // namespace detail

inline double u_func(const JacobiParams& p, double x) {
  const double tol = detail::turning_point_tolerance(p);
  if (x < p.x_minus - tol || x > p.x_plus + tol)
    throw domain_error("U(x) requested outside [x_-, x_+]");
  return detail::u_unchecked(p, x);
}

/// chi(x) on the closed interval [x_-, x_+]; chi(x_-) = -(1-sigma) pi, chi(x_+) = 0.
inline double chi(const JacobiParams& p, double x) {
  const double tol = detail::turning_point_tolerance(p);
  if (x < p.x_minus - tol || x > p.x_plus + tol)
    throw domain_error("chi(x) requested outside [x_-, x_+]");
  x = std::clamp(x, p.x_minus, p.x_plus);
  return detail::chi_unchecked(p, x, detail::u_unchecked(p, x));
}

inline double chi_prime(const JacobiParams& p, double x) {
  if (!(x > p.x_minus && x < p.x_plus)) throw domain_error("chi'(x) requires x_- < x < x_+");
  if (std::abs(x) >= 1.0) throw domain_error("chi'(x) undefined at x = +-1");
  return detail::chi_prime_unchecked(x, detail::u_unchecked(p, x));
}

inline PsiValue psi(const JacobiParams& p) {
  if (!(std::abs(p.sigma) < 1.0) || !(std::abs(p.tau) < 1.0))
    throw domain_error("psi requires sigma, |tau| < 1");
  PsiValue v;
  v.psi = 0.5 * (detail::entropy_pair(p.sigma) - detail::entropy_pair(p.tau));
  v.two_kappa_psi = 2.0 * p.kappa * v.psi;
  return v;
}

/// xi(x) with exp(-kappa xi) = sqrt((1-x)^alpha (1+x)^beta).
inline double xi(const JacobiParams& p, double x) {
  if (!(x > -1.0 && x < 1.0)) throw domain_error("xi(x) requires -1 < x < 1");
  return -0.5 * (p.sigma + p.tau) * std::log1p(-x) - 0.5 * (p.sigma - p.tau) * std::log1p(x);
}

inline PhaseValue phase_at(const JacobiParams& p, double x) {
  PhaseValue v;
  v.x = x;
  v.u = u_func(p, x);
  v.chi = detail::chi_unchecked(p, std::clamp(x, p.x_minus, p.x_plus), v.u);
  v.chi_prime = detail::chi_prime_unchecked(x, v.u);
  v.xi = xi(p, x);
  return v;
}

/// Solves chi(x) = target on [x_-, x_+]. Newton on chi with a maintained
/// bracket; steps that leave the bracket are replaced by bisection.
inline double invert_chi(const JacobiParams& p, double target, double x0) {
  const double chi_lo = -(1.0 - p.sigma) * std::numbers::pi;
  const double range_tol = 1e-14 * std::max(1.0, std::abs(chi_lo));
  if (!(target >= chi_lo - range_tol && target <= range_tol))
    throw domain_error("invert_chi: target outside [chi(x_-), chi(x_+)]");
  if (target <= chi_lo) return p.x_minus;
  if (target >= 0.0) return p.x_plus;

  const double tol = 1e-14 * std::max(1.0, std::abs(target));
  double lo = p.x_minus;
  double hi = p.x_plus;
  double x = (x0 > lo && x0 < hi) ? x0 : 0.5 * (lo + hi);
  bool polishing = false;

  for (int iter = 0; iter < 100; ++iter) {
    const double u = detail::u_unchecked(p, x);
    const double f = detail::chi_unchecked(p, x, u) - target;
    if (f == 0.0) return x;
    if (f < 0.0) lo = x; else hi = x;
    if (std::abs(f) <= tol) polishing = true;  // one more step squares the residual

    const double slope = detail::chi_prime_unchecked(x, u);
    double next = slope > 0.0 ? x - f / slope : lo;
    if (polishing && next >= lo && next <= hi) return next;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == x) return x;
    x = next;
  }
  const double u = detail::u_unchecked(p, x);
  if (std::abs(detail::chi_unchecked(p, x, u) - target) <= tol) return x;
  throw convergence_error("invert_chi: no convergence after 100 iterations");
}

}  // namespace gjq
