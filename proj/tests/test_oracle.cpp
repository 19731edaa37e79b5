#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "holant/oracle.hpp"
#include "holant/polymer.hpp"
#include "support.hpp"

using namespace holant;

TEST(Oracle, MatchingPolynomials) {
  for (double t : {0.0, 0.3, 1.0, 2.5}) {
    auto p3 = path_graph(3);
    EXPECT_NEAR(std::abs(brute_holant(p3, uniform_builtin(p3, "matching"), {1.0, t}).value - (1 + 2 * t)), 0, 1e-12);
    auto c3 = cycle_graph(3);
    EXPECT_NEAR(std::abs(brute_holant(c3, uniform_builtin(c3, "matching"), {1.0, t}).value - (1 + 3 * t)), 0, 1e-12);
    auto k4 = complete_graph(4);
    EXPECT_NEAR(std::abs(brute_holant(k4, uniform_builtin(k4, "matching"), {1.0, t}).value - (1 + 6 * t + 3 * t * t)),
                0, 1e-12);
  }
}

TEST(Oracle, EdgelessAndZeroSignatures) {
  MultiGraph empty(2, {});
  auto pi = uniform_builtin(empty, "constant", 1, 3.0);
  auto r = brute_holant(empty, pi, {1.0, 1.0});
  EXPECT_EQ(r.value, Complex(9.0));
  EXPECT_EQ(r.count, 1u);
  auto k2 = path_graph(2);
  EXPECT_EQ(brute_holant(k2, uniform_builtin(k2, "constant", 1, 0.0), {1.0, 1.0}).value, Complex(0.0));
}

TEST(Oracle, TableOrder) {
  auto p3 = path_graph(3);
  auto r = brute_holant(p3, uniform_builtin(p3, "matching"), {1.0, 0.5}, true);
  ASSERT_EQ(r.table.size(), 4u);
  EXPECT_EQ(r.table[1].first, (Assignment{0, 1}));
  EXPECT_EQ(r.table[3].second, Complex(0.0));
  EXPECT_EQ(r.count, 4u);
}

TEST(Oracle, PolymerZ) {
  PolymerSystem none;
  EXPECT_EQ(brute_polymer_z(none), Complex(1.0));
  PolymerSystem one;
  one.universe = 2;
  one.add({0, 1}, 0.3, 1);
  EXPECT_NEAR(std::abs(brute_polymer_z(one) - 1.3), 0, 1e-15);
  PolymerSystem two;
  two.universe = 4;
  two.add({0, 1}, 0.3, 1);
  two.add({2, 3}, Complex(0.1, 0.2), 1);
  EXPECT_LT(std::abs(brute_polymer_z(two) - 1.3 * Complex(1.1, 0.2)), 1e-15);
  two.add({1, 2}, 0.5, 1);
  EXPECT_LT(std::abs(brute_polymer_z(two) - (1.3 * Complex(1.1, 0.2) + 0.5)), 1e-15);
}

TEST(Oracle, Gibbs) {
  auto k2 = path_graph(2);
  auto g = exact_gibbs(k2, uniform_builtin(k2, "matching"), {1.0, 1.0});
  ASSERT_EQ(g.size(), 2u);
  EXPECT_DOUBLE_EQ(g[{0}], 0.5);
  EXPECT_DOUBLE_EQ(g[{1}], 0.5);
  auto point = exact_gibbs(k2, uniform_builtin(k2, "zero-one"), {1.0, 1.0});
  ASSERT_EQ(point.size(), 1u);
  EXPECT_DOUBLE_EQ(point.begin()->second, 1.0);
  std::mt19937_64 rng(4);
  auto g5 = testkit::random_graph(rng, 6, 3);
  auto pi = uniform_builtin(g5, "matching");
  double total = 0.0;
  for (auto& [a, p] : exact_gibbs(g5, pi, {1.0, 0.7})) total += p;
  EXPECT_NEAR(total, 1.0, 1e-12);
  EXPECT_THROW(exact_gibbs(k2, uniform_builtin(k2, "matching"), {1.0, -1.0}), UnsupportedWeights);
}

TEST(Oracle, Gate) {
  auto big = grid_graph(5, 6);
  EXPECT_THROW(brute_holant(big, uniform_builtin(big, "matching"), {1.0, 0.1}), GateExceeded);
}

TEST(Oracle, BijectionOnRandomInstances) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 30; ++t) {
    MultiGraph g = testkit::random_graph(rng, 7, 3);
    int kappa = 1 + t % 2;
    auto pi = testkit::random_assignment(rng, g, kappa, 1.0);
    auto z = testkit::random_fugacity(rng, kappa, 0.8);
    WeightEvaluator eval(g, pi, z);
    auto sys = holant_polymer_system(g, enumerate_polymers(g, kappa, g.edge_count()), eval);
    Complex lhs = brute_holant(g, pi, z).value;
    Complex rhs = holant_from_polymer_z(brute_polymer_z(sys), g, pi, z);
    EXPECT_LT(std::abs(lhs - rhs), 1e-9 * std::max(1.0, std::abs(lhs)));
  }
}
