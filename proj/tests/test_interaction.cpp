#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "fixtures.hpp"
#include "treebraid/interaction.hpp"

using namespace treebraid;
using treebraid::testing::Instance;
using treebraid::testing::prepare;

namespace {

int sum(const std::vector<int>& v) { return std::accumulate(v.begin(), v.end(), 0); }

// x1..x4 of T0 in the T-order of the input
std::vector<Vertex> t0_essentials(const Instance& inst) {
  return {inst.at("1"), inst.at("3"), inst.at("4"), inst.at("7")};
}

std::vector<InteractionVertex> flag_triple(const Instance& inst) {
  auto x = t0_essentials(inst);
  return {{0, x[0], {1}, {2}}, {2, x[2], {1}, {0}}, {2, x[3], {1}, {0}}};
}

std::vector<InteractionVertex> strong_quadruple(const Instance& inst) {
  auto x = t0_essentials(inst);
  return {{0, x[0], {1}, {7}}, {2, x[1], {4}, {2}}, {6, x[2], {1}, {1}}, {7, x[3], {1}, {0}}};
}

// Every family of generators on distinct vertices, ascending in x.
template <class F>
void for_each_family(const std::vector<InteractionVertex>& vs, std::size_t max_size, F f) {
  std::vector<InteractionVertex> cur;
  auto rec = [&](auto&& self, std::size_t from) -> void {
    if (!cur.empty()) f(cur);
    if (cur.size() == max_size) return;
    for (std::size_t i = from; i < vs.size(); ++i) {
      if (!cur.empty() && vs[i].x <= cur.back().x) continue;
      cur.push_back(vs[i]);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
}

const std::vector<std::pair<const char*, int>> kInstances = {
    {"y", 3}, {"linear2", 3}, {"t0", 3}, {"linear2", 4}, {"caterpillar_binary", 4}, {"caterpillar_deg4", 4}};

}  // namespace

TEST(Vertices, MinimalY) {
  auto inst = prepare("y", 2);
  auto vs = enumerate_vnt(inst.tree, 2);
  ASSERT_EQ(vs.size(), 1u);
  EXPECT_EQ(vs[0], (InteractionVertex{0, 1, {1}, {0}}));
}

TEST(Vertices, PathHasNone) {
  auto inst = prepare(parse_tree("root 0\n0: 1\n1: 2\n"), 3);
  EXPECT_TRUE(enumerate_vnt(inst.tree, 3).empty());
}

TEST(Vertices, SplitDistinguishesMembers) {
  auto inst = prepare(parse_tree("root r\nr: c\nc: a b d e f\n"), 4);
  const Vertex c = inst.at("c");
  InteractionVertex u{1, c, {0, 1, 0}, {1, 0}}, v{1, c, {0, 1}, {0, 1, 0}};
  auto vs = enumerate_vnt(inst.tree, 4);
  EXPECT_NE(u, v);
  EXPECT_TRUE(std::find(vs.begin(), vs.end(), u) != vs.end());
  EXPECT_TRUE(std::find(vs.begin(), vs.end(), v) != vs.end());
  EXPECT_THROW(validate(inst.tree, 4, InteractionVertex{1, c, {0, 0}, {1, 0, 1}}), DomainError);
}

TEST(Vertices, CountsMatchCriticalOneCells) {
  for (auto [name, n] : kInstances) {
    auto inst = prepare(name, n);
    auto vs = enumerate_vnt(inst.tree, n);
    EXPECT_TRUE(std::is_sorted(vs.begin(), vs.end(),
                               [](const auto& a, const auto& b) { return a.x < b.x; }));
    EXPECT_EQ(vs.size(), enumerate_critical(inst.tree, n, 1).size()) << name;
    for (const auto& v : vs) EXPECT_EQ(as_vertex(as_cell(v)), v);
  }
}

TEST(LocalInformation, SingleFactor) {
  auto inst = prepare("caterpillar_deg4", 4);
  const Vertex x = inst.tree.essential_vertices()[0];
  std::vector<InteractionVertex> f{{1, x, {2}, {0, 0}}};
  auto d = pruned_decomposition(inst.tree, {x}, {1});
  EXPECT_EQ(local_information(d, f, 0, d.index(1, 1)), 2);
  EXPECT_EQ(local_information(d, f, 0, d.index(0, 1)), 1);
  EXPECT_EQ(local_information(d, f, 0, d.index(1, 3)), 0);
}

TEST(LocalInformation, NonBoundingVertexContributesNothing) {
  auto inst = prepare("t0", 4);
  auto fam = flag_triple(inst);
  std::vector<Vertex> xs;
  std::vector<int> rs;
  for (const auto& g : fam) {
    xs.push_back(g.x);
    rs.push_back(g.r());
  }
  auto d = pruned_decomposition(inst.tree, xs, rs);
  for (std::size_t c = 0; c < d.components.size(); ++c) {
    auto b = d.bounding(c);
    for (std::size_t j = 0; j < fam.size(); ++j) {
      if (std::find(b.begin(), b.end(), static_cast<int>(j + 1)) == b.end()) {
        EXPECT_EQ(local_information(d, fam, j, c), 0);
      }
    }
  }
  // x1 bounds the root component; its information there is k_1
  EXPECT_EQ(local_information(d, fam, 0, d.index(0, 1)), fam[0].k);
}

TEST(Faces, FlagFailureOnT0) {
  auto inst = prepare("t0", 4);
  auto fam = flag_triple(inst);
  EXPECT_FALSE(is_face(inst.tree, 4, fam));
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) {
      EXPECT_TRUE(is_face(inst.tree, 4, {fam[i], fam[j]}));
      EXPECT_EQ(classify_interaction(inst.tree, 4, {fam[i], fam[j]}), Interaction::kStrong);
    }
  }
  EXPECT_EQ(classify_interaction(inst.tree, 4, fam), Interaction::kNone);
  EXPECT_FALSE(local_inequalities_hold(inst.tree, 4, fam));
  EXPECT_FALSE(is_flag(inst.tree, 4));
}

TEST(Faces, StrongQuadrupleOnT0) {
  auto inst = prepare("t0", 9);
  auto fam = strong_quadruple(inst);
  for (const auto& g : fam) validate(inst.tree, 9, g);
  EXPECT_TRUE(is_face(inst.tree, 9, fam));
  EXPECT_EQ(classify_interaction(inst.tree, 9, fam), Interaction::kStrong);
  auto shuffled = fam;
  std::reverse(shuffled.begin(), shuffled.end());
  EXPECT_TRUE(is_face(inst.tree, 9, shuffled));
}

TEST(Faces, EmptyAndSingletons) {
  auto inst = prepare("t0", 4);
  EXPECT_TRUE(is_face(inst.tree, 4, {}));
  for (const auto& v : enumerate_vnt(inst.tree, 4)) {
    EXPECT_TRUE(is_face(inst.tree, 4, {v}));
    EXPECT_EQ(classify_interaction(inst.tree, 4, {v}), Interaction::kStrong);
    EXPECT_FALSE(is_face(inst.tree, 4, {v, v}));
  }
}

TEST(Params, SingleFactorIsItsOwnData) {
  auto inst = prepare("caterpillar_deg4", 4);
  for (const auto& v : enumerate_vnt(inst.tree, 4)) {
    auto p = interaction_params(inst.tree, 4, {v});
    EXPECT_EQ(p.r0, v.k);
    EXPECT_EQ(p.p[0], v.p);
    EXPECT_EQ(p.q[0], v.q);
  }
}

TEST(Params, IngredientCountIdentity) {
  for (auto [name, n] : kInstances) {
    auto inst = prepare(name, n);
    for_each_family(enumerate_vnt(inst.tree, n), 3, [&](const auto& fam) {
      auto p = interaction_params(inst.tree, n, fam);
      int total = p.r0;
      for (std::size_t i = 0; i < fam.size(); ++i) total += sum(p.p[i]) + sum(p.q[i]);
      EXPECT_EQ(total, n - static_cast<int>(fam.size())) << name;
    });
  }
}

TEST(Params, RejectsUnsortedFamilies) {
  auto inst = prepare("t0", 4);
  auto fam = flag_triple(inst);
  std::swap(fam[0], fam[1]);
  EXPECT_THROW(interaction_params(inst.tree, 4, fam), DomainError);
}

TEST(Trichotomy, FaceExactlyWhenStrong) {
  for (auto [name, n] : kInstances) {
    auto inst = prepare(name, n);
    std::size_t strong = 0, weak = 0, none = 0;
    for_each_family(enumerate_vnt(inst.tree, n), 3, [&](const auto& fam) {
      const auto kind = classify_interaction(inst.tree, n, fam);
      EXPECT_EQ(is_face(inst.tree, n, fam), kind == Interaction::kStrong) << name;
      (kind == Interaction::kStrong ? strong : kind == Interaction::kWeak ? weak : none) += 1;
    });
    EXPECT_GT(strong, 0u) << name;
  }
}

TEST(Complex, MinimalYVector) {
  auto inst = prepare("y", 2);
  EXPECT_EQ(f_vector(inst.tree, 2), (std::vector<std::size_t>{1}));
  EXPECT_TRUE(is_flag(inst.tree, 2));
}

TEST(Complex, FacesMatchCriticalCells) {
  for (auto [name, n] : kInstances) {
    auto inst = prepare(name, n);
    auto fv = f_vector(inst.tree, n);
    const int m_max = static_cast<int>(inst.tree.essential_vertices().size());
    for (int m = 1; m <= m_max; ++m) {
      const std::size_t faces = m - 1 < static_cast<int>(fv.size()) ? fv[m - 1] : 0;
      EXPECT_EQ(faces, enumerate_critical(inst.tree, n, m).size()) << name << " m=" << m;
    }
  }
}

TEST(Complex, T0FourStrandsLowFaces) {
  auto inst = prepare("t0", 4);
  auto faces = knt_faces(inst.tree, 4, 2);
  ASSERT_GE(faces.size(), 2u);
  auto fam = flag_triple(inst);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) {
      Face edge{fam[i], fam[j]};
      EXPECT_TRUE(std::find(faces[1].begin(), faces[1].end(), edge) != faces[1].end());
    }
  }
  if (faces.size() > 2) {
    EXPECT_TRUE(std::find(faces[2].begin(), faces[2].end(), fam) == faces[2].end());
  }
}

TEST(Complex, BudgetIsEnforced) {
  auto inst = prepare("caterpillar_deg4", 4);
  EXPECT_THROW(knt_faces(inst.tree, 4, -1, Budget{3}), BudgetExceeded);
}
