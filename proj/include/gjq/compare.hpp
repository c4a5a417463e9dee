#pragma once

// Per-node errors of the asymptotic nodes and weights against the oracle.

#include <cmath>
#include <vector>

#include "gjq/nodes.hpp"
#include "gjq/oracle.hpp"
#include "gjq/weights.hpp"

namespace gjq {

struct ComparisonRow {
  int ell = 0;
  double node = 0.0;
  double oracle_node = 0.0;
  double node_err_abs = 0.0;
  double node_err_rel = 0.0;
  double w_err_rel = 0.0;      ///< classical path
  double omega_err_rel = 0.0;  ///< scaled path
  std::string regime;
};

struct ComparisonReport {
  int n = 0;
  double alpha = 0.0;
  double beta = 0.0;
  int order = 2;
  int J = 3;
  std::vector<ComparisonRow> rows;
};

struct CompareOptions {
  int max_n = 5000;
  DerivMethod deriv = DerivMethod::same_params;
  bool parallel = false;
};

template <class Real = oracle_real>
ComparisonReport compare_report(const JacobiParams& p, int order, int J, const CompareOptions& opt = {}) {
  if (p.n > opt.max_n) throw size_guard_error("comparison limited to n <= " + std::to_string(opt.max_n));
  ComparisonReport rep;
  rep.n = p.n;
  rep.alpha = p.alpha;
  rep.beta = p.beta;
  rep.order = order;
  rep.J = J;

  const auto est = all_nodes(p, NodeOptions{.order = order, .parallel = opt.parallel});
  const auto ref_nodes = oracle_nodes<Real>(p.n, p.alpha, p.beta,
                                            OracleOptions{.max_n = opt.max_n, .parallel = opt.parallel});
  const auto ref_w = oracle_weights<Real>(p.n, p.alpha, p.beta, ref_nodes);

  std::vector<double> xs(est.size());
  for (std::size_t i = 0; i < est.size(); ++i) xs[i] = est[i].value();
  const auto w = all_weights(p, xs, WeightOptions{.J = J, .kind = WeightKind::both, .deriv = opt.deriv,
                                                  .parallel = opt.parallel});
  const auto mc2 = scaling_constant(p);

  rep.rows.resize(est.size());
  for (std::size_t i = 0; i < est.size(); ++i) {
    auto& r = rep.rows[i];
    r.ell = static_cast<int>(i) + 1;
    r.node = xs[i];
    r.oracle_node = static_cast<double>(ref_nodes[i]);
    r.node_err_abs = static_cast<double>(abs(Real(xs[i]) - ref_nodes[i]));
    r.node_err_rel = r.node_err_abs / std::abs(r.oracle_node);
    r.regime = est[i].regime.label();

    const Real log_ref = log(ref_w[i]);
    r.w_err_rel = static_cast<double>(abs(exp(Real(w[i].log_w) - log_ref) - 1));
    const double log_omega = std::log(w[i].omega_scaled);
    const Real log_omega_ref = log_ref - Real(mc2.log_value) - Real(p.alpha) * log(1 - ref_nodes[i]) -
                               Real(p.beta) * log(1 + ref_nodes[i]);
    r.omega_err_rel = static_cast<double>(abs(exp(Real(log_omega) - log_omega_ref) - 1));
  }
  return rep;
}

}  // namespace gjq
