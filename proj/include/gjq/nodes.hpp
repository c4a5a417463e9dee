#pragma once

// Zeros of P_n^{(alpha,beta)} from the phase condition cos(kappa chi + pi/4) = 0,
// refined by the expansion x = xi_0 + xi_2/kappa^2 + xi_4/kappa^4.

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "gjq/coeffs.hpp"
#include "gjq/error.hpp"
#include "gjq/parallel.hpp"
#include "gjq/params.hpp"
#include "gjq/phase.hpp"

namespace gjq {

struct NodeEstimate {
  int ell = 0;
  double x0 = 0.0;  ///< phase inversion only
  double x2 = 0.0;  ///< with xi_2/kappa^2
  double x4 = 0.0;  ///< with xi_4/kappa^4 as well
  int order = 0;
  bool low_confidence = false;
  RegimeReport regime;

  [[nodiscard]] double value() const { return order == 0 ? x0 : order == 2 ? x2 : x4; }
};

/// chi at the ell-th zero of the leading cosine: kappa chi + pi/4 = pi/2 - (n + 1 - ell) pi.
inline double node_phase(const JacobiParams& p, int ell) {
  return std::numbers::pi * (ell - p.n - 0.75) / p.kappa;
}

inline double initial_node(const JacobiParams& p, int ell, double warm_start) {
  if (ell < 1 || ell > p.n) throw domain_error("node index out of range");
  const double target = node_phase(p, ell);
  const double chi_min = -(1.0 - p.sigma) * std::numbers::pi;
  if (!(target > chi_min && target < 0.0))
    throw regime_error("node " + std::to_string(ell) + " escapes the oscillatory window");
  return invert_chi(p, target, warm_start);
}

inline double initial_node(const JacobiParams& p, int ell) {
  return initial_node(p, ell, p.x_minus + 1.0 / p.n);
}

/// xi_2 and xi_4 at the first approximation x.
struct NodeCorrections {
  double xi2 = 0.0;
  double xi4 = 0.0;
};

inline NodeCorrections node_corrections(const JacobiParams& p, double x, int order) {
  NodeCorrections c;
  if (order == 0) return c;
  const int J = order >= 4 ? 3 : 1;
  auto t = c_coeffs(p, x, J);
  const double u = detail::u_unchecked(p, x);
  const double q1 = t.q[1];
  const double one_m_x2 = (1.0 - x) * (1.0 + x);
  c.xi2 = one_m_x2 * q1 / u;
  if (order < 4) return c;

  coeff_derivatives(t, p);
  const double dq1 = t.dq[1];
  const double p2 = t.p[2];
  const double q3 = t.q[3];
  const double st = p.sigma * p.tau;
  const double x2 = x * x;
  const double u2 = u * u;
  const double q1s = q1 * q1;
  const double term0 = 3.0 * q1s * (x + st) * one_m_x2 * one_m_x2;
  const double term2 = (6.0 * dq1 * q1 * one_m_x2 * one_m_x2 - 6.0 * x * q1s * one_m_x2) * u2;
  const double term3 = (6.0 * p2 * x2 * q1 + 2.0 * q1s * q1 * x2 + 6.0 * q3 - 6.0 * p2 * q1 -
                        6.0 * q3 * x2 - 2.0 * q1s * q1) * u2 * u;
  c.xi4 = (term0 + term2 + term3) / (6.0 * u2 * u2);
  return c;
}

inline NodeEstimate refine_from(const JacobiParams& p, int ell, double x0, int order,
                                const RegimeConfig& cfg = {}) {
  if (order != 0 && order != 2 && order != 4) throw domain_error("node order must be 0, 2 or 4");
  NodeEstimate e;
  e.ell = ell;
  e.order = order;
  e.x0 = e.x2 = e.x4 = x0;
  if (order > 0) {
    const auto c = node_corrections(p, x0, order);
    const double k2 = p.kappa * p.kappa;
    e.x2 = x0 + c.xi2 / k2;
    e.x4 = e.x2 + c.xi4 / (k2 * k2);
    const auto inside = [&](double v) { return v > p.x_minus && v < p.x_plus && std::isfinite(v); };
    if (!inside(e.x2)) {
      e.x2 = e.x4 = x0;
      e.low_confidence = true;
    } else if (!inside(e.x4)) {
      e.x4 = x0;
      e.low_confidence = true;
    }
  }
  e.regime = validate_regime(p, cfg, e.value());
  return e;
}

inline NodeEstimate refined_node(const JacobiParams& p, int ell, int order, const RegimeConfig& cfg = {}) {
  return refine_from(p, ell, initial_node(p, ell), order, cfg);
}

struct NodeOptions {
  int order = 4;
  bool parallel = false;
  RegimeConfig regime;
};

/// All n zeros in increasing order. Sequential mode warm-starts each
/// inversion from the previous zero; parallel mode seeds every partition
/// independently. The result is checked for count, ordering and range.
inline std::vector<NodeEstimate> all_nodes(const JacobiParams& p, const NodeOptions& opt = {}) {
  if (p.n < 1) throw domain_error("all_nodes requires n >= 1");
  const int n = p.n;
  std::vector<double> x0(n);

  if (!opt.parallel || thread_budget() == 1) {
    double start = p.x_minus + 1.0 / n;
    for (int ell = 1; ell <= n; ++ell) {
      x0[ell - 1] = initial_node(p, ell, start);
      start = x0[ell - 1];
    }
  } else {
    const double chi_min = -(1.0 - p.sigma) * std::numbers::pi;
    parallel_chunks(static_cast<std::size_t>(n), [&](std::size_t begin, std::size_t end) {
      const double frac = (node_phase(p, static_cast<int>(begin) + 1) - chi_min) / (-chi_min);
      double start = p.x_minus + frac * p.span();
      for (std::size_t i = begin; i < end; ++i) {
        x0[i] = initial_node(p, static_cast<int>(i) + 1, start);
        start = x0[i];
      }
    });
  }

  std::vector<NodeEstimate> out(n);
  parallel_for(static_cast<std::size_t>(n), opt.parallel, [&](std::size_t i) {
    out[i] = refine_from(p, static_cast<int>(i) + 1, x0[i], opt.order, opt.regime);
  });

  for (int i = 0; i < n; ++i) {
    const double v = out[i].value();
    if (!(v > p.x_minus && v < p.x_plus))
      throw convergence_error("node " + std::to_string(i + 1) + " left the oscillatory interval");
    if (i > 0 && !(v > out[i - 1].value()))
      throw convergence_error("nodes " + std::to_string(i) + " and " + std::to_string(i + 1) +
                              " are not strictly increasing");
  }
  return out;
}

}  // namespace gjq
