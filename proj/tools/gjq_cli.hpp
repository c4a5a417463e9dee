#pragma once

// Command implementations behind the gjq executable. Kept apart from main()
// so the test suite can drive run() with string streams.

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "gjq/gjq.hpp"

namespace gjq::cli {

enum class ExitCode : int { ok = 0, failure = 1, domain = 2, size_guard = 3 };

struct CliConfig {
  std::string command;  ///< nodes | weights | rule | eval | check | bench
  int n = 0;
  double alpha = 0.0;
  double beta = 0.0;
  int order = 4;
  int J = 3;
  std::string format = "csv";
  std::string output;  ///< empty: standard output
  bool oracle = false;
  int digits = kMaxPlainDigits;
  std::string method = "automatic";
  std::vector<double> x;  ///< eval points
  int repeat = 1;         ///< bench repetitions
};

namespace detail {

inline void validate(const CliConfig& c) {
  static const std::vector<std::string> commands{"nodes", "weights", "rule", "eval", "check", "bench"};
  if (std::find(commands.begin(), commands.end(), c.command) == commands.end())
    throw domain_error("unknown command '" + c.command + "'");
  if (c.format != "csv" && c.format != "json") throw domain_error("format must be csv or json");
  const int max_digits = c.oracle ? kMaxOracleDigits : kMaxPlainDigits;
  if (c.digits < 1 || c.digits > max_digits)
    throw domain_error("digits must be between 1 and " + std::to_string(max_digits));
  if (c.order != 0 && c.order != 2 && c.order != 4) throw domain_error("order must be 0, 2 or 4");
  if (c.J < 0 || c.J > 6) throw domain_error("J must be between 0 and 6");
  if (c.command == "eval" && c.x.empty()) throw domain_error("eval needs at least one --x");
  if (c.repeat < 1) throw domain_error("repeat must be positive");
  derive_params(c.n, c.alpha, c.beta);
  if (c.command != "eval" && c.n < 1) throw domain_error("n must be at least 1");
}

template <class Real>
std::string oracle_str(const Real& v, int digits) {
  return v.str(digits, std::ios_base::fmtflags{});
}

inline int plain_digits(int digits) { return std::min(digits, kMaxPlainDigits); }

/// Nodes, weights and scaled weights straight from the oracle.
struct OracleTable {
  std::vector<oracle_real> nodes, weights, weights_scaled;
};

inline OracleTable oracle_table(const CliConfig& c, bool with_weights) {
  OracleTable t;
  t.nodes = oracle_nodes(c.n, c.alpha, c.beta, OracleOptions{.parallel = true});
  if (!with_weights) return t;
  t.weights = oracle_weights(c.n, c.alpha, c.beta, t.nodes);
  const auto p = derive_params(c.n, c.alpha, c.beta);
  const oracle_real log_mc2 = scaling_constant(p).log_value;
  t.weights_scaled.resize(t.nodes.size());
  for (std::size_t i = 0; i < t.nodes.size(); ++i) {
    const auto& x = t.nodes[i];
    t.weights_scaled[i] =
        exp(log(t.weights[i]) - log_mc2 - oracle_real(c.alpha) * log(1 - x) - oracle_real(c.beta) * log(1 + x));
  }
  return t;
}

inline nlohmann::json header_json(const CliConfig& c) {
  return {{"n", c.n}, {"alpha", c.alpha}, {"beta", c.beta}, {"order", c.order}, {"J", c.J}};
}

inline RuleOptions rule_options(const CliConfig& c) {
  return RuleOptions{.order = c.order,
                     .J = c.J,
                     .method = c.oracle ? RuleMethod::oracle : parse_rule_method(c.method),
                     .parallel = true};
}

inline void cmd_nodes(const CliConfig& c, std::ostream& out) {
  if (c.oracle) {
    const auto t = oracle_table(c, false);
    if (c.format == "csv") {
      out << "ell,node\n";
      for (std::size_t i = 0; i < t.nodes.size(); ++i) out << i + 1 << ',' << oracle_str(t.nodes[i], c.digits) << '\n';
    } else {
      auto j = header_json(c);
      j["nodes"] = nlohmann::json::array();
      for (const auto& x : t.nodes) j["nodes"].push_back(round_digits(static_cast<double>(x), plain_digits(c.digits)));
      out << j.dump(2) << '\n';
    }
    return;
  }
  const auto p = derive_params(c.n, c.alpha, c.beta);
  const auto est = all_nodes(p, NodeOptions{.order = c.order, .parallel = true});
  if (c.format == "csv") {
    out << "ell,node,regime\n";
    for (const auto& e : est) out << e.ell << ',' << format_real(e.value(), c.digits) << ',' << e.regime.label() << '\n';
  } else {
    auto j = header_json(c);
    j["nodes"] = nlohmann::json::array();
    j["flags"] = nlohmann::json::array();
    for (const auto& e : est) {
      j["nodes"].push_back(round_digits(e.value(), c.digits));
      j["flags"].push_back({{"regime", e.regime.label()}, {"low_confidence", e.low_confidence}});
    }
    out << j.dump(2) << '\n';
  }
}

inline void cmd_rule(const CliConfig& c, std::ostream& out, bool with_nodes) {
  if (c.oracle && c.format == "csv") {
    const auto t = oracle_table(c, true);
    out << (with_nodes ? "ell,node,weight,weight_scaled\n" : "ell,weight,weight_scaled\n");
    for (std::size_t i = 0; i < t.nodes.size(); ++i) {
      out << i + 1 << ',';
      if (with_nodes) out << oracle_str(t.nodes[i], c.digits) << ',';
      out << oracle_str(t.weights[i], c.digits) << ',' << oracle_str(t.weights_scaled[i], c.digits) << '\n';
    }
    return;
  }
  const auto rule = gauss_jacobi_rule(c.n, c.alpha, c.beta, rule_options(c));
  const int digits = plain_digits(c.digits);
  if (c.format == "json") {
    auto j = rule_to_json(rule, digits);
    if (!with_nodes) j.erase("nodes");
    out << j.dump(2) << '\n';
    return;
  }
  if (with_nodes) {
    write_rule_csv(out, rule, digits);
    return;
  }
  out << "ell,weight,weight_scaled\n";
  for (std::size_t i = 0; i < rule.size(); ++i)
    out << i + 1 << ',' << format_real(rule.weights[i], digits) << ',' << format_real(rule.weights_scaled[i], digits)
        << '\n';
}

inline void cmd_eval(const CliConfig& c, std::ostream& out) {
  const auto p = derive_params(c.n, c.alpha, c.beta);
  nlohmann::json rows = nlohmann::json::array();
  if (c.format == "csv")
    out << (c.oracle ? "x,value,derivative\n" : "x,value,derivative,log_envelope,v,v_prime,regime\n");
  for (double x : c.x) {
    if (c.oracle) {
      if (!(x >= -1.0 && x <= 1.0)) throw domain_error("oracle evaluation requires x in [-1, 1]");
      const auto v = oracle_eval(c.n, c.alpha, c.beta, oracle_real(x));
      if (c.format == "csv") {
        out << format_real(x) << ',' << oracle_str(v.full_value(), c.digits) << ','
            << oracle_str(v.full_derivative(), c.digits) << '\n';
      } else {
        rows.push_back({{"x", x},
                        {"value", static_cast<double>(v.full_value())},
                        {"derivative", static_cast<double>(v.full_derivative())}});
      }
      continue;
    }
    const auto v = eval_jacobi(p, x, c.J);
    const auto d = eval_jacobi_deriv(p, x, c.J);
    const double vv = eval_v(p, x, c.J);
    const double vp = eval_v_prime(p, x, c.J);
    if (c.format == "csv") {
      out << format_real(x) << ',' << format_real(v.value, c.digits) << ',' << format_real(d.value, c.digits) << ','
          << format_real(v.log_envelope, c.digits) << ',' << format_real(vv, c.digits) << ','
          << format_real(vp, c.digits) << ',' << v.regime.label() << '\n';
    } else {
      rows.push_back({{"x", x},
                      {"value", v.value},
                      {"derivative", d.value},
                      {"log_envelope", v.log_envelope},
                      {"representable", v.representable},
                      {"v", vv},
                      {"v_prime", vp},
                      {"regime", v.regime.label()}});
    }
  }
  if (c.format == "json") {
    auto j = header_json(c);
    j["points"] = std::move(rows);
    out << j.dump(2) << '\n';
  }
}

inline void cmd_check(const CliConfig& c, std::ostream& out) {
  const auto p = derive_params(c.n, c.alpha, c.beta);
  const auto rep = compare_report(p, c.order, c.J, CompareOptions{.parallel = true});
  const int digits = plain_digits(c.digits);
  if (c.format == "csv")
    write_report_csv(out, rep, digits);
  else
    out << report_to_json(rep, digits).dump(2) << '\n';
}

inline void cmd_bench(const CliConfig& c, std::ostream& out) {
  using clock = std::chrono::steady_clock;
  const auto seconds = [](clock::time_point a, clock::time_point b) {
    return std::chrono::duration<double>(b - a).count();
  };
  double t_params = 0.0, t_nodes = 0.0, t_weights = 0.0;
  for (int r = 0; r < c.repeat; ++r) {
    const auto t0 = clock::now();
    const auto p = derive_params(c.n, c.alpha, c.beta);
    const auto t1 = clock::now();
    const auto est = all_nodes(p, NodeOptions{.order = c.order, .parallel = true});
    const auto t2 = clock::now();
    std::vector<double> xs(est.size());
    for (std::size_t i = 0; i < est.size(); ++i) xs[i] = est[i].value();
    const auto w = all_weights(p, xs, WeightOptions{.J = c.J, .parallel = true});
    const auto t3 = clock::now();
    t_params += seconds(t0, t1);
    t_nodes += seconds(t1, t2);
    t_weights += seconds(t2, t3);
    if (w.size() != xs.size()) throw convergence_error("weight count mismatch");
  }
  const double reps = c.repeat;
  const double per = 1e6 / (reps * c.n);
  struct Row {
    const char* phase;
    double total;
  };
  const Row rows[] = {{"params", t_params}, {"nodes", t_nodes}, {"weights", t_weights}};
  if (c.format == "csv") {
    out << "phase,seconds,per_node_us\n";
    for (const auto& r : rows)
      out << r.phase << ',' << format_real(r.total / reps, 6) << ',' << format_real(r.total * per, 6) << '\n';
  } else {
    auto j = header_json(c);
    j["threads"] = thread_budget();
    j["repeat"] = c.repeat;
    for (const auto& r : rows) j["phases"][r.phase] = {{"seconds", r.total / reps}, {"per_node_us", r.total * per}};
    out << j.dump(2) << '\n';
  }
}

}  // namespace detail

/// Runs one command; diagnostics go to err as a single line.
inline int run(const CliConfig& c, std::ostream& out, std::ostream& err) {
  try {
    detail::validate(c);
    std::ostringstream buf;
    if (c.command == "nodes") detail::cmd_nodes(c, buf);
    else if (c.command == "weights") detail::cmd_rule(c, buf, false);
    else if (c.command == "rule") detail::cmd_rule(c, buf, true);
    else if (c.command == "eval") detail::cmd_eval(c, buf);
    else if (c.command == "check") detail::cmd_check(c, buf);
    else detail::cmd_bench(c, buf);

    if (c.output.empty()) {
      out << buf.str();
    } else {
      std::ofstream f(c.output);
      if (!f) throw domain_error("cannot open output file '" + c.output + "'");
      f << buf.str();
      if (!f) throw domain_error("write to '" + c.output + "' failed");
    }
    return static_cast<int>(ExitCode::ok);
  } catch (const size_guard_error& e) {
    err << "gjq: " << e.what() << '\n';
    return static_cast<int>(ExitCode::size_guard);
  } catch (const domain_error& e) {
    err << "gjq: " << e.what() << '\n';
    return static_cast<int>(ExitCode::domain);
  } catch (const regime_error& e) {
    err << "gjq: " << e.what() << '\n';
    return static_cast<int>(ExitCode::domain);
  } catch (const std::exception& e) {
    err << "gjq: " << e.what() << '\n';
    return static_cast<int>(ExitCode::failure);
  }
}

}  // namespace gjq::cli
