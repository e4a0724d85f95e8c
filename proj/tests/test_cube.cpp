#include <gtest/gtest.h>

#include <random>

#include "brute.hpp"
#include "fixtures.hpp"
#include "treebraid/cube.hpp"

using namespace treebraid;
using treebraid::testing::load_fixture;
using treebraid::testing::prepare;

namespace {

Ingredient V(Vertex v) { return {v, false}; }
Ingredient E(Vertex v) { return {v, true}; }

OrbitCochain random_cochain(const AbramsModel& model, int dim, std::mt19937& rng, int terms) {
  auto cells = model.enumerate(dim);
  OrbitCochain out;
  if (cells.empty()) return out;
  std::uniform_int_distribution<std::size_t> pick(0, cells.size() - 1);
  std::uniform_int_distribution<int> coeff(-3, 3);
  for (int i = 0; i < terms; ++i) out.add(cells[pick(rng)], coeff(rng));
  return out;
}

OrbitCochain plus(const OrbitCochain& a, const OrbitCochain& b) {
  OrbitCochain out = a;
  for (const auto& [c, v] : b) out.add(c, v);
  return out;
}

}  // namespace

TEST(Cells, MinimalYTwoStrands) {
  auto y = load_fixture("y").tree;
  AbramsModel model(y, 2);
  EXPECT_EQ(model.enumerate(0).size(), 6u);
  EXPECT_EQ(model.enumerate(1).size(), 6u);
  EXPECT_TRUE(model.enumerate(2).empty());
}

TEST(Cells, OneStrandIsTheTree) {
  auto t0 = load_fixture("t0").tree;
  AbramsModel model(t0, 1);
  EXPECT_EQ(model.enumerate(0).size(), t0.size());
  EXPECT_EQ(model.enumerate(1).size(), t0.size() - 1);
}

TEST(Cells, CountsMatchBruteForce) {
  for (auto [name, n] : std::vector<std::pair<const char*, int>>{
           {"y", 2}, {"y", 3}, {"linear2", 3}, {"t0", 3}, {"caterpillar_binary", 3}}) {
    auto inst = prepare(name, n);
    AbramsModel model(inst.tree, n);
    auto brute = treebraid::testing::brute_cell_counts(inst.tree, n);
    for (std::size_t d = 0; d < brute.size(); ++d) {
      EXPECT_EQ(model.enumerate(static_cast<int>(d)).size(), brute[d]) << name << " n=" << n << " d=" << d;
    }
    EXPECT_TRUE(model.enumerate(static_cast<int>(brute.size())).empty());
  }
}

TEST(Cells, OrderedCountIsFactorialMultiple) {
  auto inst = prepare("y", 3);
  AbramsModel model(inst.tree, 3);
  for (int d = 0; d <= 2; ++d) {
    EXPECT_EQ(model.enumerate_ordered(d).size(), 6 * model.enumerate(d).size());
  }
}

TEST(Cells, BudgetIsEnforced) {
  auto inst = prepare("t0", 3);
  AbramsModel model(inst.tree, 3);
  try {
    model.enumerate(0, Budget{10});
    FAIL() << "expected BudgetExceeded";
  } catch (const BudgetExceeded& e) {
    EXPECT_GT(e.estimate(), 10u);
  }
}

TEST(Boundary, OneCubeFaces) {
  auto y = load_fixture("y").tree;
  AbramsModel model(y, 1);
  ConfCube c(std::vector<Ingredient>{E(3)});
  auto faces = model.boundary(c, Orientation::kProduct);
  ASSERT_EQ(faces.size(), 2u);
  int total = 0;
  for (const auto& f : faces) {
    total += f.sign;
    if (f.cell[0] == V(3)) EXPECT_EQ(f.sign, 1);
    if (f.cell[0] == V(1)) EXPECT_EQ(f.sign, -1);
  }
  EXPECT_EQ(total, 0);
}

TEST(Boundary, SquareOnTwoDisjointEdges) {
  auto inst = prepare("linear2", 2);
  AbramsModel model(inst.tree, 2);
  // edges into the two leaves 2 and 4 have disjoint closures
  const Vertex a = inst.at("2"), b = inst.at("4");
  ConfCube sq(std::vector<Ingredient>{E(a), E(b)});
  ASSERT_TRUE(model.is_cell(sq));
  auto faces = model.boundary(sq, Orientation::kProduct);
  ASSERT_EQ(faces.size(), 4u);
  for (const auto& f : faces) {
    const bool first_moved = f.cell[1] == E(b);
    const bool upper = first_moved ? f.cell[0] == V(a) : f.cell[1] == V(b);
    // d(e x f) = de x f - e x df with de = upper - lower
    const int expect = (upper ? 1 : -1) * (first_moved ? 1 : -1);
    EXPECT_EQ(f.sign, expect);
  }
}

TEST(Boundary, SquaresVanish) {
  for (auto [name, n] : std::vector<std::pair<const char*, int>>{{"y", 3}, {"linear2", 3}, {"t0", 3}}) {
    auto inst = prepare(name, n);
    AbramsModel model(inst.tree, n);
    for (int d = 2; d <= model.top_dimension(); ++d) {
      for (const auto& c : model.enumerate(d)) {
        OrbitCochain acc;
        for (const auto& f : model.boundary(c)) {
          for (const auto& g : model.boundary(f.cell)) acc.add(g.cell, f.sign * g.sign);
        }
        EXPECT_TRUE(acc.empty()) << name;
      }
    }
    for (const auto& c : model.enumerate_ordered(2)) {
      for (auto o : {Orientation::kProduct, Orientation::kGradient}) {
        ConfCochain acc;
        for (const auto& f : model.boundary(c, o)) {
          for (const auto& g : model.boundary(f.cell, o)) acc.add(g.cell, f.sign * g.sign);
        }
        EXPECT_TRUE(acc.empty());
      }
    }
  }
}

TEST(Boundary, IncidenceAgreesWithCofaces) {
  auto inst = prepare("y", 3);
  AbramsModel model(inst.tree, 3);
  for (const auto& c : model.enumerate(1)) {
    for (const auto& up : model.cofaces(c)) {
      EXPECT_EQ(model.incidence(c, up.cell), up.sign);
    }
  }
}

TEST(Cup, CoordinateRules) {
  auto y = load_fixture("y").tree;
  AbramsModel model(y, 1);
  ConfCube edge(std::vector<Ingredient>{E(3)});
  ConfCube tip(std::vector<Ingredient>{V(3)});
  ConfCube base(std::vector<Ingredient>{V(1)});
  ConfCube other(std::vector<Ingredient>{V(2)});
  auto a = model.cup(edge, tip, Orientation::kProduct);
  ASSERT_TRUE(a);
  EXPECT_EQ(a->second, edge);
  EXPECT_EQ(a->first, 1);
  auto b = model.cup(base, base, Orientation::kProduct);
  ASSERT_TRUE(b);
  EXPECT_EQ(b->second, base);
  EXPECT_FALSE(model.cup(base, other, Orientation::kProduct));
}

TEST(Cup, PullbackSupport) {
  auto inst = prepare("y", 3);
  AbramsModel model(inst.tree, 3);
  for (int d = 0; d <= 1; ++d) {
    for (const auto& c : model.enumerate(d)) {
      OrbitCochain f;
      f.add(c, 1);
      EXPECT_EQ(model.pi_star(f).size(), 6u);
    }
  }
  auto y = load_fixture("y").tree;
  AbramsModel two(y, 2);
  OrbitCube pair(std::vector<Ingredient>{V(0), V(2)});
  OrbitCochain f;
  f.add(pair, 1);
  auto pulled = two.pi_star(f);
  EXPECT_EQ(pulled.size(), 2u);
  EXPECT_EQ(pulled[ConfCube(std::vector<Ingredient>{V(0), V(2)})], 1);
  EXPECT_EQ(pulled[ConfCube(std::vector<Ingredient>{V(2), V(0)})], 1);
}

TEST(Cup, OneStrandPullbackIsIdentity) {
  auto y = load_fixture("y").tree;
  AbramsModel model(y, 1);
  for (const auto& c : model.enumerate(1)) {
    OrbitCochain f;
    f.add(c, 1);
    auto pulled = model.pi_star(f);
    ASSERT_EQ(pulled.size(), 1u);
    EXPECT_EQ(std::abs(pulled.begin()->second), 1);
  }
}

TEST(Cup, OrbitCupPullsBackToOrderedCup) {
  auto inst = prepare("linear2", 3);
  AbramsModel model(inst.tree, 3);
  std::mt19937 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    auto a = random_cochain(model, 1, rng, 6);
    auto b = random_cochain(model, 1, rng, 6);
    auto lhs = model.pi_star(model.cup(a, b));
    auto rhs = model.cup(model.pi_star(a), model.pi_star(b), Orientation::kGradient);
    EXPECT_EQ(lhs, rhs);
  }
}

TEST(Cup, Leibniz) {
  for (auto [name, n] : std::vector<std::pair<const char*, int>>{{"y", 3}, {"linear2", 3}}) {
    auto inst = prepare(name, n);
    AbramsModel model(inst.tree, n);
    std::mt19937 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
      for (int p = 0; p <= 1; ++p) {
        auto a = random_cochain(model, p, rng, 5);
        auto b = random_cochain(model, 1 - p + (trial % 2), rng, 5);
        auto lhs = model.coboundary(model.cup(a, b));
        auto rhs = plus(model.cup(model.coboundary(a), b),
                        model.cup(a, model.coboundary(b)).scaled(p % 2 == 0 ? 1 : -1));
        EXPECT_EQ(lhs, rhs) << name << " trial " << trial;
      }
    }
  }
}

TEST(Cup, UnconvertedCupBreaksLeibniz) {
  auto inst = prepare("y", 3);
  AbramsModel model(inst.tree, 3);
  bool broken = false;
  for (const auto& a : model.enumerate(0)) {
    for (const auto& b : model.enumerate(1)) {
      OrbitCochain fa, fb;
      fa.add(a, 1);
      fb.add(b, 1);
      auto lhs = model.coboundary(model.cup_without_conversion(fa, fb));
      auto rhs = plus(model.cup_without_conversion(model.coboundary(fa), fb),
                      model.cup_without_conversion(fa, model.coboundary(fb)));
      if (!(lhs == rhs)) broken = true;
    }
    if (broken) break;
  }
  EXPECT_TRUE(broken);
}
