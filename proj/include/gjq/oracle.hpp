#pragma once

// Extended-precision reference values for P_n^{(alpha,beta)}, its zeros and
// the Gauss-Jacobi weights. Independent of the asymptotic machinery except
// that asymptotic nodes may be used as starting points; every zero is then
// certified by a sign change of the recurrence value.

#include <cmath>
#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

#include <Eigen/Eigenvalues>
#include <boost/math/special_functions/gamma.hpp>

#if defined(GJQ_HAVE_FLOAT128)
#include <boost/multiprecision/float128.hpp>
#else
#include <boost/multiprecision/cpp_bin_float.hpp>
#endif

#include "gjq/error.hpp"
#include "gjq/nodes.hpp"
#include "gjq/parallel.hpp"
#include "gjq/params.hpp"

namespace gjq {

#if defined(GJQ_HAVE_FLOAT128)
using oracle_real = boost::multiprecision::float128;
#else
using oracle_real = boost::multiprecision::cpp_bin_float_quad;
#endif

/// value * 2^value_exp2 and derivative * 2^deriv_exp2.
template <class Real>
struct OracleValue {
  Real value{0};
  Real derivative{0};
  int value_exp2 = 0;
  int deriv_exp2 = 0;

  [[nodiscard]] Real full_value() const { return ldexp(value, value_exp2); }
  [[nodiscard]] Real full_derivative() const { return ldexp(derivative, deriv_exp2); }
  [[nodiscard]] double value_hi() const { return static_cast<double>(full_value()); }
  [[nodiscard]] double value_lo() const { return static_cast<double>(full_value() - Real(value_hi())); }
  [[nodiscard]] double derivative_hi() const { return static_cast<double>(full_derivative()); }
  [[nodiscard]] double derivative_lo() const {
    return static_cast<double>(full_derivative() - Real(derivative_hi()));
  }
  /// P / P'
  [[nodiscard]] Real newton_ratio() const { return ldexp(value / derivative, value_exp2 - deriv_exp2); }
};

/// Three-term recurrence P_k = (a_k x + b_k) P_{k-1} - c_k P_{k-2} with the
/// x-independent coefficients tabulated once.
template <class Real>
class JacobiRecurrence {
 public:
  JacobiRecurrence(int n, const Real& alpha, const Real& beta) : n_(n) {
    if (n < 0) throw domain_error("degree must be nonnegative");
    a_.resize(n + 1);
    b_.resize(n + 1);
    c_.resize(n + 1);
    if (n >= 1) {
      a_[1] = (alpha + beta + 2) / 2;
      b_[1] = (alpha - beta) / 2;
    }
    for (int k = 2; k <= n; ++k) {
      const Real c = 2 * k + alpha + beta;
      const Real d = 2 * k * (k + alpha + beta) * (c - 2);
      a_[k] = (c - 1) * c * (c - 2) / d;
      b_[k] = (c - 1) * (alpha * alpha - beta * beta) / d;
      c_[k] = 2 * (k + alpha - 1) * (k + beta - 1) * c / d;
    }
  }

  [[nodiscard]] int degree() const { return n_; }

  /// P_n(x) as (mantissa, binary exponent); rescales past 2^600.
  [[nodiscard]] std::pair<Real, int> evaluate(const Real& x) const {
    if (n_ == 0) return {Real(1), 0};
    static const Real big = ldexp(Real(1), 600);
    Real p0 = 1;
    Real p1 = a_[1] * x + b_[1];
    int exp2 = 0;
    for (int k = 2; k <= n_; ++k) {
      Real p2 = (a_[k] * x + b_[k]) * p1 - c_[k] * p0;
      p0 = p1;
      p1 = p2;
      if (abs(p1) > big) {
        p0 = ldexp(p0, -600);
        p1 = ldexp(p1, -600);
        exp2 += 600;
      }
    }
    return {p1, exp2};
  }

 private:
  int n_;
  std::vector<Real> a_, b_, c_;
};

/// P_n and P_n' = (n+alpha+beta+1)/2 P_{n-1}^{(alpha+1,beta+1)} at extended precision.
template <class Real = oracle_real>
class JacobiOracle {
 public:
  JacobiOracle(int n, double alpha, double beta)
      : n_(n), alpha_(alpha), beta_(beta), value_(n, Real(alpha), Real(beta)),
        deriv_(n > 0 ? n - 1 : 0, Real(alpha) + 1, Real(beta) + 1) {
    if (n < 0) throw domain_error("degree must be nonnegative");
    if (!(alpha > -1.0) || !(beta > -1.0)) throw domain_error("alpha and beta must exceed -1");
    deriv_scale_ = (Real(n) + Real(alpha) + Real(beta) + 1) / 2;
  }

  [[nodiscard]] OracleValue<Real> operator()(const Real& x) const {
    OracleValue<Real> out;
    std::tie(out.value, out.value_exp2) = value_.evaluate(x);
    if (n_ == 0) {
      out.derivative = 0;
      return out;
    }
    std::tie(out.derivative, out.deriv_exp2) = deriv_.evaluate(x);
    out.derivative *= deriv_scale_;
    return out;
  }

  [[nodiscard]] int degree() const { return n_; }
  [[nodiscard]] double alpha() const { return alpha_; }
  [[nodiscard]] double beta() const { return beta_; }

 private:
  int n_;
  double alpha_, beta_;
  JacobiRecurrence<Real> value_;
  JacobiRecurrence<Real> deriv_;
  Real deriv_scale_;
};

template <class Real = oracle_real>
OracleValue<Real> oracle_eval(int n, double alpha, double beta, const Real& x) {
  return JacobiOracle<Real>(n, alpha, beta)(x);
}

struct OracleOptions {
  int max_n = 5000;
  bool use_asymptotic_seeds = true;
  bool parallel = false;
};

/// Eigenvalues of the symmetric Jacobi matrix (Golub-Welsch), in double.
inline std::vector<double> golub_welsch_nodes(int n, double alpha, double beta) {
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(n > 1 ? n - 1 : 1);
  const double ab = alpha + beta;
  for (int k = 0; k < n; ++k) {
    const double c = 2.0 * k + ab;
    diag[k] = (k == 0 || c == 0.0) ? (beta - alpha) / (ab + 2.0)
                                   : (beta * beta - alpha * alpha) / (c * (c + 2.0));
  }
  for (int k = 1; k < n; ++k) {
    const double c = 2.0 * k + ab;
    const double b2 = k == 1 ? 4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab))
                             : 4.0 * k * (k + alpha) * (k + beta) * (k + ab) / (c * c * (c + 1.0) * (c - 1.0));
    sub[k - 1] = std::sqrt(b2);
  }
  if (n == 1) return {diag[0]};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw convergence_error("Golub-Welsch eigenvalue solver failed");
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + n};
}

namespace detail {

template <class Real>
int sign_at(const JacobiOracle<Real>& oracle, const Real& x) {
  const auto v = oracle(x);
  return v.value > 0 ? 1 : (v.value < 0 ? -1 : 0);
}

// Midpoint brackets around sorted seeds; empty when any bracket lacks a sign change.
template <class Real>
std::vector<Real> certify_brackets(const JacobiOracle<Real>& oracle, const std::vector<double>& seeds) {
  const int n = oracle.degree();
  if (static_cast<int>(seeds.size()) != n) return {};
  std::vector<Real> edges(n + 1);
  edges[0] = -1;
  edges[n] = 1;
  for (int i = 1; i < n; ++i) {
    if (!(seeds[i] > seeds[i - 1])) return {};
    edges[i] = (Real(seeds[i - 1]) + Real(seeds[i])) / 2;
  }
  int prev = sign_at(oracle, edges[0]);
  for (int i = 1; i <= n; ++i) {
    const int s = sign_at(oracle, edges[i]);
    if (s == 0 || prev == 0 || s == prev) return {};
    prev = s;
  }
  return edges;
}

template <class Real>
Real bracketed_newton(const JacobiOracle<Real>& oracle, Real lo, Real hi, Real x, int ell) {
  static const Real tol("1e-28");
  const int sign_lo = sign_at(oracle, lo);
  if (!(x > lo && x < hi)) x = (lo + hi) / 2;
  for (int iter = 0; iter < 60; ++iter) {
    const auto v = oracle(x);
    if (v.value == 0) return x;
    if ((v.value > 0) == (sign_lo > 0)) lo = x; else hi = x;
    Real next = x - v.newton_ratio();
    if (abs(next - x) < tol && next >= lo && next <= hi) return next;
    if (!(next > lo && next < hi)) next = (lo + hi) / 2;
    x = next;
    if (hi - lo < tol) return x;
  }
  throw convergence_error("oracle Newton iteration did not converge for zero " + std::to_string(ell));
}

}  // namespace detail

/// All n zeros at extended precision, increasing.
template <class Real = oracle_real>
std::vector<Real> oracle_nodes(int n, double alpha, double beta, const OracleOptions& opt = {}) {
  if (n < 1) throw domain_error("oracle_nodes requires n >= 1");
  if (n > opt.max_n)
    throw size_guard_error("oracle limited to n <= " + std::to_string(opt.max_n));
  const JacobiOracle<Real> oracle(n, alpha, beta);

  std::vector<double> seeds;
  std::vector<Real> edges;
  const auto p = derive_params(n, alpha, beta);
  if (opt.use_asymptotic_seeds && n >= 2 && params_in_regime(p, RegimeConfig{})) {
    try {
      for (const auto& e : all_nodes(p, NodeOptions{.order = 2})) seeds.push_back(e.value());
      edges = detail::certify_brackets(oracle, seeds);
    } catch (const std::exception&) {
      edges.clear();
    }
  }
  if (edges.empty()) {
    seeds = golub_welsch_nodes(n, alpha, beta);
    edges = detail::certify_brackets(oracle, seeds);
  }
  if (edges.empty()) {
    // Locate the first bracket without a sign change for the diagnostic.
    int bad = 1;
    for (int i = 1; i < n; ++i)
      if (!(seeds[i] > seeds[i - 1])) { bad = i + 1; break; }
    throw convergence_error("oracle could not bracket zero " + std::to_string(bad));
  }

  std::vector<Real> zeros(n);
  parallel_for(static_cast<std::size_t>(n), opt.parallel, [&](std::size_t i) {
    zeros[i] = detail::bracketed_newton(oracle, edges[i], edges[i + 1], Real(seeds[i]), static_cast<int>(i) + 1);
  });
  return zeros;
}

/// ln M_{n,alpha,beta} at extended precision.
template <class Real = oracle_real>
Real oracle_log_normalization(int n, double alpha, double beta) {
  using boost::math::lgamma;
  const Real a(alpha), b(beta), nn(n);
  return (a + b + 1) * log(Real(2)) + lgamma(nn + a + 1) + lgamma(nn + b + 1) - lgamma(nn + 1) -
         lgamma(nn + a + b + 1);
}

/// w = M / ((1 - x^2) P'(x)^2) at each node.
template <class Real = oracle_real>
std::vector<Real> oracle_weights(int n, double alpha, double beta, const std::vector<Real>& nodes) {
  const JacobiOracle<Real> oracle(n, alpha, beta);
  const Real log_m = oracle_log_normalization<Real>(n, alpha, beta);
  std::vector<Real> w(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Real& x = nodes[i];
    const auto v = oracle(x);
    const Real log_d = log(abs(v.derivative)) + v.deriv_exp2 * log(Real(2));
    w[i] = exp(log_m - log((1 - x) * (1 + x)) - 2 * log_d);
  }
  return w;
}

/// 2^{alpha+beta+1} B(alpha+1, beta+1)
template <class Real = oracle_real>
Real oracle_total_mass(double alpha, double beta) {
  using boost::math::lgamma;
  const Real a(alpha), b(beta);
  return exp((a + b + 1) * log(Real(2)) + lgamma(a + 1) + lgamma(b + 1) - lgamma(a + b + 2));
}

/// Moments I_k = int x^k (1-x)^alpha (1+x)^beta dx, k = 0..kmax, from
/// (k + alpha + beta + 2) I_{k+1} = k I_{k-1} + (beta - alpha) I_k.
template <class Real = oracle_real>
std::vector<Real> oracle_moments(double alpha, double beta, int kmax) {
  std::vector<Real> m(static_cast<std::size_t>(kmax) + 1);
  const Real a(alpha), b(beta);
  m[0] = oracle_total_mass<Real>(alpha, beta);
  if (kmax >= 1) m[1] = m[0] * (b - a) / (a + b + 2);
  for (int k = 1; k < kmax; ++k) m[k + 1] = (k * m[k - 1] + (b - a) * m[k]) / (k + a + b + 2);
  return m;
}

}  // namespace gjq
