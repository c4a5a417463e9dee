#pragma once

// Classical Gauss-Jacobi weights
//   w = M / ((1 - x^2) P'(x)^2),  M = 2^{a+b+1} G(n+a+1) G(n+b+1) / (n! G(n+a+b+1)),
// and scaled weights omega = 1/v'(x)^2, related by w = M C^2 (1-x)^a (1+x)^b omega.

#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "gjq/error.hpp"
#include "gjq/evaluator.hpp"
#include "gjq/parallel.hpp"
#include "gjq/params.hpp"
#include "gjq/phase.hpp"

namespace gjq {

struct ScalingConstant {
  double value = 1.0;      ///< M C^2
  double log_value = 0.0;
};

struct WeightPair {
  int ell = 0;
  double w_classical = 0.0;
  double omega_scaled = 0.0;
  double log_w = 0.0;
  bool representable = true;
};

enum class WeightKind { classical, scaled, both };

/// ln Gamma*(z), Gamma*(z) = sqrt(z/(2 pi)) e^z z^{-z} Gamma(z).
inline double log_gamma_star(double z) {
  if (!(z > 0.0)) throw domain_error("gamma_star requires z > 0");
  if (z >= 10.0) {
    // Stirling series: sum B_{2k} / (2k (2k-1) z^{2k-1})
    static constexpr std::array<double, 10> c{
        1.0 / 12.0,         -1.0 / 360.0,        1.0 / 1260.0,         -1.0 / 1680.0,
        1.0 / 1188.0,       -691.0 / 360360.0,   1.0 / 156.0,          -3617.0 / 122400.0,
        43867.0 / 244188.0, -174611.0 / 125400.0};
    const double r = 1.0 / z;
    const double r2 = r * r;
    double acc = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) acc = acc * r2 + c[k];
    return acc * r;
  }
  return std::lgamma(z) + z - (z - 0.5) * std::log(z) - 0.5 * std::log(2.0 * std::numbers::pi);
}

inline double gamma_star(double z) { return std::exp(log_gamma_star(z)); }

namespace detail {

// ln(Gamma(z + 1/2) / Gamma(z)), written through Gamma* so that no large
// logarithms cancel.
inline double log_gamma_half_ratio(double z) {
  return log_gamma_star(z + 0.5) - log_gamma_star(z) + 0.5 * std::log(z) +
         z * std::log1p(0.5 / z) - 0.5;
}

}  // namespace detail

/// M C^2 from the gamma-ratio form; equals 1 exactly for alpha = beta = 0.
inline ScalingConstant scaling_constant(const JacobiParams& p) {
  const double n = p.n;
  const double za = n + p.alpha + 0.5;
  const double zb = n + p.beta + 0.5;
  const double zab = n + p.alpha + p.beta + 0.5;
  const double z0 = n + 0.5;
  using detail::log_gamma_half_ratio;
  const double ratios = ((log_gamma_half_ratio(za) + log_gamma_half_ratio(zb)) - log_gamma_half_ratio(zab)) -
                        log_gamma_half_ratio(z0);
  const double stars = ((log_gamma_star(za) + log_gamma_star(zb)) - log_gamma_star(zab)) - log_gamma_star(z0);
  const double root = 0.5 * std::log((zab * z0) / (za * zb));
  ScalingConstant s;
  s.log_value = ratios + stars + root;
  s.value = std::exp(s.log_value);
  return s;
}

/// ln M, assembled from ln(M C^2) and ln C^2 = 2 kappa psi - (alpha+beta+1) ln 2.
inline double log_weight_normalization(const JacobiParams& p) {
  return scaling_constant(p).log_value + (p.alpha + p.beta + 1.0) * std::numbers::ln2 - psi(p).two_kappa_psi;
}

/// ln((1-x)^alpha (1+x)^beta)
inline double log_weight_function(const JacobiParams& p, double x) {
  return p.alpha * std::log1p(-x) + p.beta * std::log1p(x);
}

struct ClassicalWeight {
  double value = 0.0;
  double log_value = 0.0;
  bool representable = true;
};

inline ClassicalWeight classical_weight(const JacobiParams& p, double x, int J,
                                        DerivMethod method = DerivMethod::same_params) {
  const auto d = eval_jacobi_deriv(p, x, J, method);
  ClassicalWeight w;
  w.log_value = log_weight_normalization(p) - std::log((1.0 - x) * (1.0 + x)) -
                2.0 * (d.log_envelope + std::log(std::abs(d.w_osc)));
  w.representable = std::abs(w.log_value) < 700.0;
  w.value = w.representable ? std::exp(w.log_value) : 0.0;
  return w;
}

inline double scaled_weight(const JacobiParams& p, double x, int J) {
  const double vp = eval_v_prime(p, x, J);
  return 1.0 / (vp * vp);
}

/// ln w from a scaled weight.
inline double log_classical_from_scaled(const JacobiParams& p, const ScalingConstant& mc2, double x,
                                        double omega) {
  return mc2.log_value + log_weight_function(p, x) + std::log(omega);
}

struct WeightOptions {
  int J = 3;
  WeightKind kind = WeightKind::scaled;
  DerivMethod deriv = DerivMethod::same_params;
  bool parallel = false;
};

/// Weights at the given nodes. The scaled kind converts omega to w; the
/// classical kind converts w back to omega; both computes each independently.
inline std::vector<WeightPair> all_weights(const JacobiParams& p, std::span<const double> nodes,
                                           const WeightOptions& opt = {}) {
  const auto mc2 = scaling_constant(p);
  std::vector<WeightPair> out(nodes.size());
  parallel_for(nodes.size(), opt.parallel, [&](std::size_t i) {
    const double x = nodes[i];
    WeightPair& w = out[i];
    w.ell = static_cast<int>(i) + 1;
    if (opt.kind != WeightKind::classical) {
      w.omega_scaled = scaled_weight(p, x, opt.J);
      w.log_w = log_classical_from_scaled(p, mc2, x, w.omega_scaled);
    }
    if (opt.kind != WeightKind::scaled) {
      const auto c = classical_weight(p, x, opt.J, opt.deriv);
      w.log_w = c.log_value;
      if (opt.kind == WeightKind::classical)
        w.omega_scaled = std::exp(c.log_value - mc2.log_value - log_weight_function(p, x));
    }
    w.representable = std::abs(w.log_w) < 700.0;
    w.w_classical = w.representable ? std::exp(w.log_w) : 0.0;
  });
  return out;
}

}  // namespace gjq
