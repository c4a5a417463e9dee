#pragma once

// CSV and JSON forms of rules and comparison reports. CSV numbers use
// to_chars/from_chars, so output is locale independent and 17 significant
// digits reproduce every double exactly.

#include <charconv>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "json.hpp"

#include "gjq/compare.hpp"
#include "gjq/error.hpp"
#include "gjq/rule.hpp"

namespace gjq {

inline constexpr int kMaxPlainDigits = 17;
inline constexpr int kMaxOracleDigits = 32;

inline std::string format_real(double v, int digits = kMaxPlainDigits) {
  if (digits < 1 || digits > kMaxPlainDigits) throw domain_error("digits must be between 1 and 17");
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, digits);
  if (res.ec != std::errc{}) throw domain_error("number formatting failed");
  return {buf, res.ptr};
}

inline double parse_real(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw domain_error("malformed number '" + std::string(s) + "'");
  return v;
}

/// Value rounded to the given number of significant digits.
inline double round_digits(double v, int digits) { return parse_real(format_real(v, digits)); }

namespace detail {

inline std::vector<std::string_view> split_csv_line(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace detail

inline void write_rule_csv(std::ostream& os, const QuadratureRule& rule, int digits = kMaxPlainDigits) {
  os << "ell,node,weight,weight_scaled\n";
  for (std::size_t i = 0; i < rule.size(); ++i) {
    os << (i + 1) << ',' << format_real(rule.nodes[i], digits) << ',' << format_real(rule.weights[i], digits)
       << ',' << format_real(rule.weights_scaled[i], digits) << '\n';
  }
}

/// Columns of a rule read back from CSV.
struct RuleTable {
  std::vector<int> ell;
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> weights_scaled;
};

inline RuleTable read_rule_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw domain_error("empty rule CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "ell,node,weight,weight_scaled") throw domain_error("unexpected rule CSV header '" + line + "'");
  RuleTable t;
  while (std::getline(is, line)) {
    if (line.empty() || line == "\r") continue;
    const auto cols = detail::split_csv_line(line);
    if (cols.size() != 4) throw domain_error("rule CSV row needs 4 columns: '" + line + "'");
    t.ell.push_back(static_cast<int>(parse_real(cols[0])));
    t.nodes.push_back(parse_real(cols[1]));
    t.weights.push_back(parse_real(cols[2]));
    t.weights_scaled.push_back(parse_real(cols[3]));
  }
  return t;
}

inline nlohmann::json flags_to_json(const NodeFlags& f) {
  return {{"regime", f.regime.label()},
          {"low_confidence", f.low_confidence},
          {"polished", f.polished},
          {"representable", f.representable}};
}

inline nlohmann::json rule_to_json(const QuadratureRule& rule, int digits = kMaxPlainDigits) {
  nlohmann::json j;
  j["n"] = rule.params.n;
  j["alpha"] = rule.params.alpha;
  j["beta"] = rule.params.beta;
  j["order"] = rule.meta.node_order;
  j["J"] = rule.meta.J;
  auto rounded = [digits](const std::vector<double>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (double x : v) a.push_back(round_digits(x, digits));
    return a;
  };
  j["nodes"] = rounded(rule.nodes);
  j["weights"] = rounded(rule.weights);
  j["weights_scaled"] = rounded(rule.weights_scaled);
  nlohmann::json flags = nlohmann::json::array();
  for (const auto& f : rule.meta.flags) flags.push_back(flags_to_json(f));
  j["flags"] = std::move(flags);
  return j;
}

inline void write_report_csv(std::ostream& os, const ComparisonReport& rep, int digits = kMaxPlainDigits) {
  os << "ell,node_err_abs,node_err_rel,w_err_rel,omega_err_rel\n";
  for (const auto& r : rep.rows) {
    os << r.ell << ',' << format_real(r.node_err_abs, digits) << ',' << format_real(r.node_err_rel, digits) << ','
       << format_real(r.w_err_rel, digits) << ',' << format_real(r.omega_err_rel, digits) << '\n';
  }
}

inline nlohmann::json report_to_json(const ComparisonReport& rep, int digits = kMaxPlainDigits) {
  nlohmann::json j;
  j["n"] = rep.n;
  j["alpha"] = rep.alpha;
  j["beta"] = rep.beta;
  j["order"] = rep.order;
  j["J"] = rep.J;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : rep.rows) {
    rows.push_back({{"ell", r.ell},
                    {"node", round_digits(r.node, digits)},
                    {"node_err_abs", round_digits(r.node_err_abs, digits)},
                    {"node_err_rel", round_digits(r.node_err_rel, digits)},
                    {"w_err_rel", round_digits(r.w_err_rel, digits)},
                    {"omega_err_rel", round_digits(r.omega_err_rel, digits)},
                    {"regime", r.regime}});
  }
  j["rows"] = std::move(rows);
  return j;
}

}  // namespace gjq
