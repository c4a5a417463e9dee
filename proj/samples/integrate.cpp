// Builds a 200-point rule for (1-x)^30 (1+x)^20 and integrates a few functions.

#include <cmath>
#include <cstdio>

#include "gjq/gjq.hpp"

int main() {
  const int n = 200;
  const double alpha = 30.0;
  const double beta = 20.0;
  const auto rule = gjq::gauss_jacobi_rule(n, alpha, beta);

  const double mass = gjq::integrate(rule, [](double) { return 1.0; });
  const double exact_mass = static_cast<double>(gjq::oracle_total_mass(alpha, beta));
  std::printf("method %s, %zu nodes\n", std::string(gjq::to_string(rule.meta.method)).c_str(), rule.size());
  std::printf("int w(x) dx       = %.16e (rel. err %.2e)\n", mass, std::abs(mass / exact_mass - 1.0));

  const double c = gjq::integrate(rule, [](double x) { return std::cos(4.0 * x); });
  std::printf("int w(x) cos(4x)  = %.16e\n", c);

  // plain mode: the integrand carries the weight function itself
  const double plain = gjq::integrate(
      rule, [&](double x) { return std::pow(1.0 - x, alpha) * std::pow(1.0 + x, beta) * x * x; },
      gjq::IntegrationMode::plain);
  const auto m = gjq::oracle_moments(alpha, beta, 2);
  std::printf("int w(x) x^2 dx   = %.16e (rel. err %.2e)\n", plain,
              std::abs(plain / static_cast<double>(m[2]) - 1.0));
  return 0;
}
