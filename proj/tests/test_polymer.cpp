#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "holant/oracle.hpp"
#include "holant/polymer.hpp"
#include "holant/polymer_system.hpp"
#include "support.hpp"

using namespace holant;

TEST(Polymer, Incompatibility) {
  auto c4 = cycle_graph(4);
  auto a = make_polymer(c4, {*c4.find_edge(0, 1)}, {1}, 1);
  auto b = make_polymer(c4, {*c4.find_edge(2, 3)}, {1}, 1);
  auto c = make_polymer(c4, {*c4.find_edge(1, 2)}, {1}, 1);
  EXPECT_TRUE(incompatible(a, a));
  EXPECT_FALSE(incompatible(a, b));
  EXPECT_TRUE(incompatible(a, c));
}

TEST(Polymer, MakePolymerValidates) {
  auto c4 = cycle_graph(4);
  EXPECT_THROW(make_polymer(c4, {0, 3}, {1}, 1), ArgumentError);
  EXPECT_THROW(make_polymer(c4, {0}, {0}, 1), ArgumentError);
  EXPECT_THROW(make_polymer(c4, {0}, {2}, 1), ArgumentError);
  EXPECT_THROW(make_polymer(c4, {*c4.find_edge(0, 1), *c4.find_edge(2, 3)}, {1, 1}, 1), ArgumentError);
}

TEST(Polymer, EnumerationCounts) {
  EXPECT_EQ(enumerate_polymers(path_graph(2), 2, 1).size(), 2u);
  EXPECT_EQ(enumerate_polymers(cycle_graph(3), 1, 3).size(), 7u);
  auto all = enumerate_polymers(cycle_graph(3), 2, 3);
  EXPECT_EQ(all.size(), 3u * 2 + 3u * 4 + 8u);
  EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
}

TEST(Polymer, AnchoredCountBound) {
  for (auto g : {cycle_graph(5), complete_graph(4), grid_graph(2, 3)}) {
    double delta = max_degree(g);
    for (int kappa = 1; kappa <= 2; ++kappa)
      for (int m = 1; m <= 5; ++m)
        EXPECT_LT(static_cast<double>(enumerate_polymers(g, kappa, m, 0).size()),
                  std::pow(delta * kappa * std::numbers::e, m) / 2);
  }
}

TEST(Polymer, MatchingWeights) {
  auto p3 = path_graph(3);
  auto pi = uniform_builtin(p3, "matching");
  FugacityVector z{1.0, 0.3};
  EXPECT_NEAR(std::abs(polymer_weight(p3, make_polymer(p3, {0}, {1}, 1), pi, z) - 0.3), 0.0, 1e-15);
  EXPECT_EQ(polymer_weight(p3, make_polymer(p3, {0, 1}, {1, 1}, 1), pi, z), Complex(0.0));
}

TEST(Polymer, FamilyAssignmentBijection) {
  auto p3 = path_graph(3);
  EXPECT_EQ(family_to_assignment({}, p3), (Assignment{0, 0}));
  auto fam = assignment_to_family({1, 1}, p3);
  ASSERT_EQ(fam.size(), 1u);
  EXPECT_EQ(fam[0].edges, (std::vector<int>{0, 1}));
  auto c4 = cycle_graph(4);
  Assignment sigma(4, 0);
  sigma[*c4.find_edge(0, 1)] = 1;
  sigma[*c4.find_edge(2, 3)] = 1;
  EXPECT_EQ(assignment_to_family(sigma, c4).size(), 2u);

  std::mt19937_64 rng(3);
  for (int t = 0; t < 30; ++t) {
    MultiGraph g = testkit::random_graph(rng, 7, 3);
    std::uniform_int_distribution<int> colour(0, 2);
    Assignment s(g.edge_count());
    for (auto& c : s) c = colour(rng);
    EXPECT_EQ(family_to_assignment(assignment_to_family(s, g), g), s);
  }
  auto a = make_polymer(c4, {0}, {1}, 1);
  EXPECT_THROW(family_to_assignment({a, a}, c4), ArgumentError);
}

TEST(Polymer, HolantFromPolymerZ) {
  MultiGraph empty(3, {});
  auto pi = uniform_builtin(empty, "constant", 1, 2.0);
  EXPECT_EQ(holant_from_polymer_z(1.0, empty, pi, {1.0, 0.5}), Complex(8.0));
  auto k2 = path_graph(2);
  auto pk = uniform_builtin(k2, "matching");
  FugacityVector z{1.0, 0.25};
  auto sys = holant_polymer_system(k2, enumerate_polymers(k2, 1, 1), WeightEvaluator(k2, pk, z));
  EXPECT_NEAR(std::abs(holant_from_polymer_z(brute_polymer_z(sys), k2, pk, z) - 1.25), 0.0, 1e-15);
}

TEST(Polymer, WeightMultiplicativity) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    MultiGraph g = testkit::random_graph(rng, 6, 3);
    auto pi = testkit::random_assignment(rng, g, 2, 0.8);
    auto z = testkit::random_fugacity(rng, 2, 0.7);
    auto table = brute_holant(g, pi, z, true).table;
    Complex pre = ground_prefactor(g, pi, z);
    for (auto& [sigma, w] : table) {
      Complex prod = 1.0;
      for (auto& p : assignment_to_family(sigma, g)) prod *= polymer_weight(g, p, pi, z);
      EXPECT_LT(std::abs(prod * pre - w), 1e-12 * std::max(1.0, std::abs(w)));
    }
  }
}

TEST(Polymer, FugacityValidation) {
  EXPECT_THROW(require_fugacity({0.0, 1.0}, 1), InvalidFugacity);
  EXPECT_THROW(require_fugacity({1.0}, 1), InvalidFugacity);
  EXPECT_NO_THROW(require_fugacity({1.0, 0.0, 2.0}, 2));
}

TEST(Polymer, CompactAndRelabelPreserveHolant) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 20; ++t) {
    MultiGraph g = testkit::random_graph(rng, 6, 3);
    auto pi = testkit::random_assignment(rng, g, 3, 0.9);
    auto z = testkit::random_fugacity(rng, 3, 0.6);
    z[2] = 0.0;
    Complex exact = brute_holant(g, pi, z).value;
    auto c = compact_domain(g, pi, z);
    EXPECT_EQ(c.kappa(), 2);
    EXPECT_EQ(c.colour_map, (std::vector<int>{0, 1, 3}));
    EXPECT_LT(std::abs(brute_holant(g, c.pi, c.z).value - exact), 1e-12 * std::abs(exact) + 1e-14);
    auto r = relabel_ground(g, pi, z, 1);
    EXPECT_LT(std::abs(brute_holant(g, r.pi, r.z).value - exact), 1e-12 * std::abs(exact) + 1e-14);
  }
}
