#pragma once

// Assembled Gauss-Jacobi rules and weighted sums over them.

#include <cmath>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "gjq/compensated.hpp"
#include "gjq/error.hpp"
#include "gjq/nodes.hpp"
#include "gjq/oracle.hpp"
#include "gjq/params.hpp"
#include "gjq/weights.hpp"

namespace gjq {

enum class RuleMethod { automatic, asymptotic, oracle, hybrid };

inline std::string_view to_string(RuleMethod m) {
  switch (m) {
    case RuleMethod::automatic: return "automatic";
    case RuleMethod::asymptotic: return "asymptotic";
    case RuleMethod::oracle: return "oracle";
    case RuleMethod::hybrid: return "hybrid";
  }
  return "unknown";
}

inline RuleMethod parse_rule_method(std::string_view s) {
  if (s == "automatic") return RuleMethod::automatic;
  if (s == "asymptotic") return RuleMethod::asymptotic;
  if (s == "oracle") return RuleMethod::oracle;
  if (s == "hybrid") return RuleMethod::hybrid;
  throw domain_error("unknown rule method '" + std::string(s) + "'");
}

struct NodeFlags {
  RegimeReport regime;
  bool low_confidence = false;
  bool polished = false;
  bool representable = true;
};

struct RuleMeta {
  int node_order = 4;
  int J = 3;
  RuleMethod method = RuleMethod::asymptotic;  ///< the path actually taken
  std::vector<NodeFlags> flags;
};

struct QuadratureRule {
  JacobiParams params;
  std::vector<double> nodes;
  std::vector<double> weights;         ///< classical; 0 where not representable
  std::vector<double> weights_scaled;
  std::vector<double> log_weights;
  double log_scaling = 0.0;  ///< ln(M C^2)
  RuleMeta meta;

  [[nodiscard]] std::size_t size() const { return nodes.size(); }
};

struct RuleOptions {
  int order = 4;
  int J = 3;
  RuleMethod method = RuleMethod::automatic;
  bool strict = false;
  int small_n_cutoff = 20;
  int oracle_max_n = 5000;
  RegimeConfig regime;
  bool parallel = false;
};

namespace detail {

template <class Real>
QuadratureRule oracle_rule(const JacobiParams& p, const RuleOptions& opt) {
  QuadratureRule rule;
  rule.params = p;
  rule.meta.node_order = opt.order;
  rule.meta.J = opt.J;
  rule.meta.method = RuleMethod::oracle;
  const auto xs = oracle_nodes<Real>(p.n, p.alpha, p.beta,
                                     OracleOptions{.max_n = opt.oracle_max_n, .parallel = opt.parallel});
  const auto ws = oracle_weights<Real>(p.n, p.alpha, p.beta, xs);
  const auto mc2 = scaling_constant(p);
  rule.log_scaling = mc2.log_value;
  const std::size_t n = xs.size();
  rule.nodes.resize(n);
  rule.weights.resize(n);
  rule.weights_scaled.resize(n);
  rule.log_weights.resize(n);
  rule.meta.flags.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Real log_w = log(ws[i]);
    const Real log_omega = log_w - Real(mc2.log_value) - Real(p.alpha) * log(1 - xs[i]) -
                           Real(p.beta) * log(1 + xs[i]);
    rule.nodes[i] = static_cast<double>(xs[i]);
    rule.log_weights[i] = static_cast<double>(log_w);
    rule.weights_scaled[i] = static_cast<double>(exp(log_omega));
    auto& f = rule.meta.flags[i];
    f.representable = std::abs(rule.log_weights[i]) < 700.0;
    rule.weights[i] = f.representable ? static_cast<double>(ws[i]) : 0.0;
    f.regime = params_in_regime(p, opt.regime) ? validate_regime(p, opt.regime, rule.nodes[i])
                                               : RegimeReport{.out_of_regime = true, .params_in_regime = false};
  }
  return rule;
}

// Moves x one Newton step toward the zero when that lowers |P|; returns P'(x) at the result.
template <class Real>
bool newton_polish(const JacobiOracle<Real>& oracle, double& x) {
  const auto before = oracle(Real(x));
  const double next = static_cast<double>(Real(x) - before.newton_ratio());
  if (!std::isfinite(next) || next == x) return false;
  const auto after = oracle(Real(next));
  const Real r_before = ldexp(abs(before.value), before.value_exp2 - after.value_exp2);
  if (!(abs(after.value) < r_before)) return false;
  x = next;
  return true;
}

}  // namespace detail

inline bool oracle_dispatch(const JacobiParams& p, const RuleOptions& opt) {
  return p.n < opt.small_n_cutoff || !params_in_regime(p, opt.regime);
}

template <class Real = oracle_real>
QuadratureRule gauss_jacobi_rule(int n, double alpha, double beta, const RuleOptions& opt = {}) {
  const auto p = derive_params(n, alpha, beta);
  if (n < 1) throw domain_error("a quadrature rule needs n >= 1");
  if (opt.J < 1 || opt.J > 6) throw domain_error("J must be between 1 and 6");
  if (opt.order != 0 && opt.order != 2 && opt.order != 4) throw domain_error("node order must be 0, 2 or 4");

  const bool to_oracle = opt.method == RuleMethod::oracle ||
                         (opt.method == RuleMethod::automatic && oracle_dispatch(p, opt));
  if (!to_oracle && opt.strict && !params_in_regime(p, opt.regime))
    throw regime_error("parameters outside the asymptotic regime");
  if (to_oracle) return detail::oracle_rule<Real>(p, opt);

  QuadratureRule rule;
  rule.params = p;
  rule.meta.node_order = opt.order;
  rule.meta.J = opt.J;
  rule.meta.method = opt.method == RuleMethod::hybrid ? RuleMethod::hybrid : RuleMethod::asymptotic;

  const auto est = all_nodes(p, NodeOptions{.order = opt.order, .parallel = opt.parallel, .regime = opt.regime});
  rule.nodes.resize(n);
  rule.meta.flags.resize(n);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = est[i].value();
    rule.meta.flags[i].regime = est[i].regime;
    rule.meta.flags[i].low_confidence = est[i].low_confidence;
  }
  if (opt.strict) {
    for (int i = 0; i < n; ++i)
      if (rule.meta.flags[i].regime.out_of_regime)
        throw regime_error("node " + std::to_string(i + 1) + " is out of regime");
  }

  const auto w = all_weights(p, rule.nodes, WeightOptions{.J = opt.J, .kind = WeightKind::scaled,
                                                          .parallel = opt.parallel});
  const auto mc2 = scaling_constant(p);
  rule.log_scaling = mc2.log_value;
  rule.weights.resize(n);
  rule.weights_scaled.resize(n);
  rule.log_weights.resize(n);
  for (int i = 0; i < n; ++i) {
    rule.weights[i] = w[i].w_classical;
    rule.weights_scaled[i] = w[i].omega_scaled;
    rule.log_weights[i] = w[i].log_w;
    rule.meta.flags[i].representable = w[i].representable;
  }

  if (rule.meta.method == RuleMethod::hybrid) {
    const JacobiOracle<Real> oracle(n, alpha, beta);
    const Real log_m = oracle_log_normalization<Real>(n, alpha, beta);
    for (int i = 0; i < n; ++i) {
      auto& f = rule.meta.flags[i];
      if (f.regime.in_bulk && !f.low_confidence) continue;
      double x = rule.nodes[i];
      if (!detail::newton_polish(oracle, x)) continue;
      const double lo = i > 0 ? rule.nodes[i - 1] : -1.0;
      const double hi = i + 1 < n ? rule.nodes[i + 1] : 1.0;
      if (!(x > lo && x < hi)) continue;
      rule.nodes[i] = x;
      f.polished = true;
      const auto v = oracle(Real(x));
      const Real log_d = log(abs(v.derivative)) + v.deriv_exp2 * log(Real(2));
      const Real log_w = log_m - log((1 - Real(x)) * (1 + Real(x))) - 2 * log_d;
      rule.log_weights[i] = static_cast<double>(log_w);
      rule.weights_scaled[i] = std::exp(rule.log_weights[i] - mc2.log_value - log_weight_function(p, x));
      f.representable = std::abs(rule.log_weights[i]) < 700.0;
      rule.weights[i] = f.representable ? std::exp(rule.log_weights[i]) : 0.0;
    }
  }
  return rule;
}

enum class IntegrationMode { weighted, plain };

/// weighted: sum w_l f(x_l). plain: the weight function is divided out at
/// each node, so f must carry it.
template <class F>
double integrate(const QuadratureRule& rule, F&& f, IntegrationMode mode = IntegrationMode::weighted) {
  CompensatedSum<double> acc;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double x = rule.nodes[i];
    const double lw = mode == IntegrationMode::weighted
                          ? rule.log_weights[i]
                          : rule.log_scaling + std::log(rule.weights_scaled[i]);
    const double w = (mode == IntegrationMode::weighted && rule.meta.flags[i].representable)
                         ? rule.weights[i]
                         : std::exp(lw);
    acc += w * f(x);
  }
  return acc.value();
}

}  // namespace gjq
