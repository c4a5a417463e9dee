#pragma once

#include <cmath>
#include <string>

#include "gjq/error.hpp"

namespace gjq {

/// Degree and parameters of P_n^{(alpha,beta)} together with the large-kappa
/// scalings and the turning points of the oscillatory region.
struct JacobiParams {
  int n = 0;
  double alpha = 0.0;
  double beta = 0.0;
  double kappa = 0.5;    ///< n + (alpha+beta+1)/2
  double sigma = 0.0;    ///< (alpha+beta)/(2 kappa)
  double tau = 0.0;      ///< (alpha-beta)/(2 kappa)
  double x_minus = -1.0;
  double x_plus = 1.0;

  [[nodiscard]] double span() const { return x_plus - x_minus; }
};

/// Tunables describing where the elementary-function expansions are trusted.
struct RegimeConfig {
  double delta = 0.02;   ///< interior margin, as a fraction of x_plus - x_minus
  double sigma0 = 0.95;
  double tau0 = 0.95;
  int J = 3;             ///< default truncation order of the coefficient series
};

struct RegimeReport {
  bool in_bulk = false;
  bool near_left_tp = false;
  bool near_right_tp = false;
  bool out_of_regime = false;
  bool params_in_regime = true;  ///< sigma <= sigma0 and |tau| <= tau0

  [[nodiscard]] std::string label() const {
    if (out_of_regime) return "out";
    if (near_left_tp) return "left";
    if (near_right_tp) return "right";
    return "bulk";
  }
};

inline JacobiParams derive_params(int n, double alpha, double beta) {
  if (n < 0) throw domain_error("degree n must be nonnegative");
  if (!(alpha > -1.0)) throw domain_error("alpha must exceed -1");
  if (!(beta > -1.0)) throw domain_error("beta must exceed -1");

  JacobiParams p;
  p.n = n;
  p.alpha = alpha;
  p.beta = beta;
  p.kappa = n + 0.5 * (alpha + beta + 1.0);
  p.sigma = (alpha + beta) / (2.0 * p.kappa);
  p.tau = (alpha - beta) / (2.0 * p.kappa);

  const double radicand = (1.0 - p.sigma * p.sigma) * (1.0 - p.tau * p.tau);
  if (radicand < 0.0) throw domain_error("turning points are complex for these parameters");
  const double r = std::sqrt(radicand);
  const double mid = -p.sigma * p.tau;
  p.x_minus = mid - r;
  p.x_plus = mid + r;
  return p;
}

inline bool params_in_regime(const JacobiParams& p, const RegimeConfig& cfg) {
  return p.sigma <= cfg.sigma0 && std::abs(p.tau) <= cfg.tau0;
}

/// Classifies x against the bulk interval [x_- + delta*span, x_+ - delta*span].
/// Never throws.
inline RegimeReport validate_regime(const JacobiParams& p, const RegimeConfig& cfg, double x) {
  RegimeReport r;
  r.params_in_regime = params_in_regime(p, cfg);
  const double margin = cfg.delta * p.span();
  if (!(x >= p.x_minus && x <= p.x_plus)) {
    r.out_of_regime = true;
  } else if (x < p.x_minus + margin) {
    r.near_left_tp = true;
  } else if (x > p.x_plus - margin) {
    r.near_right_tp = true;
  } else {
    r.in_bulk = true;
  }
  if (!r.params_in_regime) {
    r.out_of_regime = true;
    r.in_bulk = false;
  }
  return r;
}

}  // namespace gjq
