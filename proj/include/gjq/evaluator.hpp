#pragma once

#include <cmath>
#include <limits>
#include <numbers>

#include "gjq/coeffs.hpp"
#include "gjq/error.hpp"
#include "gjq/params.hpp"
#include "gjq/phase.hpp"

namespace gjq {

/// value = envelope * w_osc, with the envelope also kept as a logarithm so
/// that callers can work past the double exponent range.
struct EvalResult {
  double value = 0.0;
  double envelope = 0.0;
  double log_envelope = 0.0;
  double w_osc = 0.0;
  int order_used = 0;
  bool representable = true;
  RegimeReport regime;
};

enum class DerivMethod { same_params, shifted_params };

namespace detail {

inline void require_oscillatory(const JacobiParams& p, double x) {
  if (!(x > p.x_minus && x < p.x_plus))
    throw regime_error("asymptotic evaluation requires x strictly between the turning points");
  if (p.n < 1) throw regime_error("asymptotic evaluation requires n >= 1");
}

// kappa chi(x) + pi/4
inline double oscillator_phase(const JacobiParams& p, double x, double u) {
  return std::fma(p.kappa, chi_unchecked(p, x, u), std::numbers::pi / 4.0);
}

inline double truncated_sum(const std::vector<double>& c, double kappa, int J) {
  double acc = 0.0;
  for (int j = std::min<int>(J, static_cast<int>(c.size()) - 1); j >= 0; --j) acc = acc / kappa + c[j];
  return acc;
}

// log of 2^{(alpha+beta+1)/2} e^{-kappa psi} / sqrt(pi kappa)
inline double log_scale(const JacobiParams& p) {
  return 0.5 * (p.alpha + p.beta + 1.0) * std::numbers::ln2 - p.kappa * psi(p).psi -
         0.5 * std::log(std::numbers::pi * p.kappa);
}

inline EvalResult finish(double log_env, double osc, int J, const RegimeReport& regime) {
  EvalResult r;
  r.log_envelope = log_env;
  r.w_osc = osc;
  r.order_used = J;
  r.regime = regime;
  if (std::abs(log_env) > 700.0) {
    r.representable = false;
    r.envelope = std::numeric_limits<double>::quiet_NaN();
    r.value = std::numeric_limits<double>::quiet_NaN();
  } else {
    r.envelope = std::exp(log_env);
    r.value = r.envelope * osc;
  }
  return r;
}

}  // namespace detail

/// P_n^{(alpha,beta)}(x) from the amplitude expansion truncated after kappa^{-J}.
inline EvalResult eval_jacobi(const JacobiParams& p, double x, int J, const RegimeConfig& cfg = {}) {
  detail::require_oscillatory(p, x);
  const auto t = c_coeffs(p, x, J);
  const double u = detail::u_unchecked(p, x);
  const double theta = detail::oscillator_phase(p, x, u);
  const double P = detail::truncated_sum(t.p, p.kappa, J);
  const double Q = detail::truncated_sum(t.q, p.kappa, J);
  const double osc = std::cos(theta) * P + std::sin(theta) * Q;
  // sqrt(w(x)) = exp(-kappa xi(x))
  const double log_env = detail::log_scale(p) + p.kappa * xi(p, x) - 0.5 * std::log(u);
  return detail::finish(log_env, osc, J, validate_regime(p, cfg, x));
}

/// d/dx P_n^{(alpha,beta)}(x).
inline EvalResult eval_jacobi_deriv(const JacobiParams& p, double x, int J,
                                    DerivMethod method = DerivMethod::same_params,
                                    const RegimeConfig& cfg = {}) {
  if (method == DerivMethod::shifted_params) {
    detail::require_oscillatory(p, x);
    const auto shifted = derive_params(p.n - 1, p.alpha + 1.0, p.beta + 1.0);
    if (shifted.n < 1) {
      // P_1' is the constant (alpha+beta+2)/2
      return detail::finish(std::log(0.5 * (p.alpha + p.beta + 2.0)), 1.0, J, validate_regime(p, cfg, x));
    }
    auto r = eval_jacobi(shifted, x, J, cfg);
    r.log_envelope += std::log(0.5 * (p.alpha + p.beta + p.n + 1.0));
    auto out = detail::finish(r.log_envelope, r.w_osc, J, validate_regime(p, cfg, x));
    return out;
  }

  detail::require_oscillatory(p, x);
  auto t = c_coeffs(p, x, J);
  rs_coeffs(t, p);
  const double u = detail::u_unchecked(p, x);
  const double theta = detail::oscillator_phase(p, x, u);
  const double R = detail::truncated_sum(t.r, p.kappa, J);
  const double S = detail::truncated_sum(t.s, p.kappa, J);
  const double osc = -(std::sin(theta) * R - std::cos(theta) * S);
  const double chi1 = detail::chi_prime_unchecked(x, u);
  // kappa chi' times the envelope of P
  const double log_env = detail::log_scale(p) + p.kappa * xi(p, x) - 0.5 * std::log(u) +
                         std::log(p.kappa * chi1);
  return detail::finish(log_env, osc, J, validate_regime(p, cfg, x));
}

/// Z(x) = sqrt((1 - x^2)/U(x))
inline double z_factor(const JacobiParams& p, double x) {
  return std::sqrt((1.0 - x) * (1.0 + x) / detail::u_unchecked(p, x));
}

/// Scaled function v(x) = Z(x) W(x)/sqrt(pi kappa); order one for all parameter sizes.
inline double eval_v(const JacobiParams& p, double x, int J) {
  detail::require_oscillatory(p, x);
  const auto t = c_coeffs(p, x, J);
  const double u = detail::u_unchecked(p, x);
  const double theta = detail::oscillator_phase(p, x, u);
  const double W = std::cos(theta) * detail::truncated_sum(t.p, p.kappa, J) +
                   std::sin(theta) * detail::truncated_sum(t.q, p.kappa, J);
  return z_factor(p, x) * W / std::sqrt(std::numbers::pi * p.kappa);
}

/// v'(x) = -sqrt(kappa/pi) chi'(x) Z(x) [sin(theta) M(x) - cos(theta) N(x)].
inline double eval_v_prime(const JacobiParams& p, double x, int J) {
  detail::require_oscillatory(p, x);
  auto t = c_coeffs(p, x, J);
  mn_coeffs(t, p);
  const double u = detail::u_unchecked(p, x);
  const double theta = detail::oscillator_phase(p, x, u);
  const double M = detail::truncated_sum(t.m, p.kappa, J);
  const double N = detail::truncated_sum(t.nn, p.kappa, J);
  const double chi1 = detail::chi_prime_unchecked(x, u);
  return -std::sqrt(p.kappa / std::numbers::pi) * chi1 * z_factor(p, x) *
         (std::sin(theta) * M - std::cos(theta) * N);
}

}  // namespace gjq
