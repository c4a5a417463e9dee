#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "gjq/nodes.hpp"
#include "gjq/oracle.hpp"

using namespace gjq;

namespace {

const JacobiParams kExample1 = derive_params(25, 50, 41);

std::vector<double> reference_nodes(const JacobiParams& p) {
  // Golub-Welsch seeds only, so the reference does not depend on the asymptotic nodes.
  const auto z = oracle_nodes(p.n, p.alpha, p.beta, OracleOptions{.use_asymptotic_seeds = false});
  std::vector<double> out(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) out[i] = static_cast<double>(z[i]);
  return out;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST(NodePhase, FirstNodeOfExampleOne) {
  EXPECT_NEAR(node_phase(kExample1, 1), -1.095133, 1e-6);
  EXPECT_DOUBLE_EQ(node_phase(kExample1, 1), (0.25 - 25) * std::numbers::pi / 71);
}

TEST(InitialNode, ExampleOnePrintedValues) {
  EXPECT_NEAR(initial_node(kExample1, 1), -0.7415548, 1e-7);
  EXPECT_NEAR(initial_node(kExample1, 2), -0.682106, 1e-6);
}

TEST(InitialNode, ExampleOneRelativeErrors) {
  const auto ref = reference_nodes(kExample1);
  const struct {
    int ell;
    double printed;
  } cases[] = {{1, 7.4e-4}, {2, 3.2e-4}, {13, 1.3e-5}, {25, 1.0e-3}};
  for (const auto& c : cases) {
    const double e = rel(initial_node(kExample1, c.ell), ref[c.ell - 1]);
    EXPECT_GT(e, c.printed / 1.5) << "ell " << c.ell;
    EXPECT_LT(e, c.printed * 1.5) << "ell " << c.ell;
  }
}

TEST(InitialNode, RejectsBadIndex) {
  EXPECT_THROW(initial_node(kExample1, 0), gjq::domain_error);
  EXPECT_THROW(initial_node(kExample1, 26), gjq::domain_error);
}

TEST(RefinedNode, CorrectionOrdersAtTheThirteenthZero) {
  const double ref = reference_nodes(kExample1)[12];
  const double e2 = rel(refined_node(kExample1, 13, 2).value(), ref);
  const double e4 = rel(refined_node(kExample1, 13, 4).value(), ref);
  EXPECT_GT(e2, 0.80e-9 / 3);
  EXPECT_LT(e2, 0.80e-9 * 3);
  EXPECT_GT(e4, 0.13e-12 / 3);
  EXPECT_LT(e4, 0.13e-12 * 3);
}

TEST(RefinedNode, OrderZeroIsTheInitialNode) {
  for (int ell : {1, 7, 25}) {
    const auto e = refined_node(kExample1, ell, 0);
    EXPECT_EQ(e.value(), initial_node(kExample1, ell));
    EXPECT_EQ(e.x0, e.x2);
  }
  EXPECT_THROW(refined_node(kExample1, 3, 3), gjq::domain_error);
}

TEST(RefinedNode, LegendreCorrectionImprovesTheNode) {
  const auto p = derive_params(40, 0, 0);
  const auto ref = reference_nodes(p);
  for (int ell : {15, 20, 26}) {
    const auto e = refined_node(p, ell, 2);
    EXPECT_LT(std::abs(e.x2 - ref[ell - 1]), 0.1 * std::abs(e.x0 - ref[ell - 1])) << "ell " << ell;
  }
}

TEST(AllNodes, CountOrderingAndRange) {
  for (int order : {0, 2, 4}) {
    const auto est = all_nodes(kExample1, NodeOptions{.order = order});
    ASSERT_EQ(est.size(), 25u);
    for (int i = 0; i < 25; ++i) {
      EXPECT_EQ(est[i].ell, i + 1);
      EXPECT_GT(est[i].value(), kExample1.x_minus);
      EXPECT_LT(est[i].value(), kExample1.x_plus);
      if (i > 0) {
        EXPECT_GT(est[i].value(), est[i - 1].value());
        EXPECT_GT(est[i].x0, est[i - 1].x0);
      }
    }
  }
}

TEST(AllNodes, ParallelMatchesSequential) {
  const auto p = derive_params(400, 30, 12);
  const auto a = all_nodes(p, NodeOptions{.order = 4});
  const auto b = all_nodes(p, NodeOptions{.order = 4, .parallel = true});
  for (int i = 0; i < p.n; ++i) EXPECT_NEAR(a[i].value(), b[i].value(), 1e-15);
}

TEST(AllNodes, BulkAccuracyAtDegreeOneHundred) {
  const auto p = derive_params(100, 50, 41);
  const auto ref = reference_nodes(p);
  const auto est = all_nodes(p, NodeOptions{.order = 2});
  for (int ell = 10; ell <= 90; ++ell) EXPECT_LT(std::abs(est[ell - 1].value() - ref[ell - 1]), 1e-8) << ell;
}

TEST(AllNodes, SwapSymmetry) {
  for (const auto& [n, a, b] : {std::tuple{25, 50.0, 41.0}, {100, 50.0, 41.0}, {333, 7.5, 120.0}}) {
    const auto fwd = all_nodes(derive_params(n, a, b));
    const auto bwd = all_nodes(derive_params(n, b, a));
    for (int i = 0; i < n; ++i) EXPECT_NEAR(bwd[i].value(), -fwd[n - 1 - i].value(), 1e-13) << n << ' ' << i;
  }
}

TEST(AllNodes, CorrectionsMoveTowardTheOracle) {
  for (const auto& p : {kExample1, derive_params(100, 50, 41)}) {
    const auto ref = reference_nodes(p);
    const auto est = all_nodes(p, NodeOptions{.order = 4});
    for (int ell = 10; ell <= p.n - 10; ++ell) {
      const auto& e = est[ell - 1];
      const double r = ref[ell - 1];
      EXPECT_LE(std::abs(r - e.x2), std::abs(r - e.x0)) << "n " << p.n << " ell " << ell;
      EXPECT_LE(std::abs(r - e.x4), std::abs(r - e.x2)) << "n " << p.n << " ell " << ell;
    }
  }
}

TEST(AllNodes, ErrorProfileIsSmallestInTheMiddle) {
  const auto p = derive_params(100, 50, 41);
  const auto ref = reference_nodes(p);
  const auto est = all_nodes(p, NodeOptions{.order = 0});
  std::vector<double> err(p.n);
  for (int i = 0; i < p.n; ++i) err[i] = std::abs(est[i].value() - ref[i]);
  const auto best = std::min_element(err.begin(), err.end()) - err.begin();
  EXPECT_GT(best, p.n / 5);
  EXPECT_LT(best, 4 * p.n / 5);
  auto sorted = err;
  std::nth_element(sorted.begin(), sorted.begin() + p.n / 2, sorted.end());
  EXPECT_GT(err.front(), sorted[p.n / 2]);
  EXPECT_GT(err.back(), sorted[p.n / 2]);
}

TEST(AllNodes, EndpointNodesCarryRegimeFlags) {
  const auto est = all_nodes(derive_params(100, 50, 41));
  int not_bulk = 0;
  for (const auto& e : est) not_bulk += e.regime.in_bulk ? 0 : 1;
  EXPECT_LE(not_bulk, 10);
  EXPECT_TRUE(est[50].regime.in_bulk);
}
