#include <gtest/gtest.h>

#include <algorithm>
#include <queue>

#include "fixtures.hpp"
#include "treebraid/tree.hpp"

using namespace treebraid;
using treebraid::testing::load_fixture;

namespace {

bool is_node(const RootedPlaneTree& t, Vertex v) { return t.degree(v) != 2; }

std::vector<std::vector<Vertex>> adjacency(const RootedPlaneTree& t) {
  std::vector<std::vector<Vertex>> adj(t.size());
  for (Vertex v = 1; v < t.size(); ++v) {
    adj[v].push_back(t.parent(v));
    adj[t.parent(v)].push_back(v);
  }
  return adj;
}

// Lengths of the maximal paths whose interior vertices have degree 2.
std::vector<std::size_t> segment_lengths(const RootedPlaneTree& t) {
  const auto adj = adjacency(t);
  std::vector<std::size_t> out;
  for (Vertex v = 0; v < t.size(); ++v) {
    if (!is_node(t, v)) continue;
    for (Vertex w : adj[v]) {
      Vertex prev = v, cur = w;
      std::size_t len = 1;
      while (!is_node(t, cur)) {
        Vertex next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
        prev = cur;
        cur = next;
        ++len;
      }
      if (v < cur) out.push_back(len);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t min_node_distance(const RootedPlaneTree& t) {
  const auto adj = adjacency(t);
  std::size_t best = SIZE_MAX;
  for (Vertex s = 0; s < t.size(); ++s) {
    if (!is_node(t, s)) continue;
    std::vector<std::size_t> dist(t.size(), SIZE_MAX);
    std::queue<Vertex> q;
    dist[s] = 0;
    q.push(s);
    while (!q.empty()) {
      Vertex v = q.front();
      q.pop();
      for (Vertex w : adj[v]) {
        if (dist[w] != SIZE_MAX) continue;
        dist[w] = dist[v] + 1;
        q.push(w);
      }
    }
    for (Vertex v = 0; v < t.size(); ++v) {
      if (v != s && is_node(t, v)) best = std::min(best, dist[v]);
    }
  }
  return best;
}

}  // namespace

TEST(TreeParse, PathKeepsIdentityLabels) {
  auto lt = parse_tree("root 0\n0: 1\n1: 2\n");
  EXPECT_EQ(lt.labels, (std::vector<std::string>{"0", "1", "2"}));
  EXPECT_TRUE(lt.tree.essential_vertices().empty());
}

TEST(TreeParse, StarFollowsLeftmostWalk) {
  auto lt = parse_tree("# star\nroot a\n\na: b\nb: c d\n");
  EXPECT_EQ(lt.labels, (std::vector<std::string>{"a", "b", "c", "d"}));
  EXPECT_EQ(lt.tree.essential_vertices(), (std::vector<Vertex>{1}));
  EXPECT_EQ(lt.tree.degree(1), 3);
}

TEST(TreeParse, RelabelsIntoPreorder) {
  auto lt = parse_tree("root r\nr: m\nm: z a\nz: y w\n");
  // r, m, z, y, w, a
  EXPECT_EQ(lt.labels, (std::vector<std::string>{"r", "m", "z", "y", "w", "a"}));
  EXPECT_EQ(lt.tree.subtree_end(2), 5u);
  EXPECT_TRUE(lt.tree.in_subtree(2, 4));
  EXPECT_FALSE(lt.tree.in_subtree(2, 5));
}

TEST(TreeParse, RejectsMalformedInput) {
  EXPECT_THROW(parse_tree("root 0\n0: 1\n1: 0\n"), DomainError);           // cycle
  EXPECT_THROW(parse_tree("root 0\n0: 1\n2: 3\n"), DomainError);           // disconnected
  EXPECT_THROW(parse_tree("root 0\n0: 1 2\n"), DomainError);               // root degree 2
  EXPECT_THROW(parse_tree("root 0\n0: 1\n1: 2\n3: 2\n"), DomainError);     // two parents
  EXPECT_THROW(parse_tree("0: 1\n"), DomainError);                         // no root line
}

TEST(TreeParse, TextRoundTrip) {
  auto t0 = load_fixture("t0").tree;
  EXPECT_EQ(parse_tree(to_text(t0)).tree, t0);
}

TEST(TreeDirections, AdjacencyRules) {
  auto t0 = load_fixture("t0").tree;
  for (Vertex x = 1; x < t0.size(); ++x) {
    if (!t0.is_essential(t0.parent(x)) && t0.parent(x) != 0) {
      EXPECT_EQ(direction_vertex(t0, x, 0), x - 1);
    }
    if (t0.degree(x) >= 2) EXPECT_EQ(direction_vertex(t0, x, 1), x + 1);
    for (int d = 0; d < t0.degree(x); ++d) {
      EXPECT_EQ(direction_of(t0, x, direction_vertex(t0, x, d)), d);
    }
  }
  EXPECT_EQ(direction_vertex(t0, 0, 1), 1u);
  EXPECT_THROW(direction_vertex(t0, 0, 0), DomainError);
}

TEST(TreeDirections, T0EssentialOrder) {
  auto lt = load_fixture("t0");
  std::vector<std::string> names;
  for (Vertex x : lt.tree.essential_vertices()) names.push_back(lt.labels[x]);
  EXPECT_EQ(names, (std::vector<std::string>{"1", "3", "4", "7"}));
}

TEST(Subdivision, MinimalYUnchangedForTwoStrands) {
  auto y = load_fixture("y").tree;
  EXPECT_TRUE(is_n_sufficient(y, 2));
  EXPECT_EQ(subdivide_for(y, 2).tree, y);
}

TEST(Subdivision, MinimalYForThreeStrands) {
  auto s = subdivide_for(load_fixture("y").tree, 3);
  EXPECT_EQ(s.tree.size(), 7u);
  EXPECT_EQ(segment_lengths(s.tree), (std::vector<std::size_t>{2, 2, 2}));
}

TEST(Subdivision, SegmentsStretchedExactlyToRequirement) {
  for (const char* name : {"y", "t0", "linear2", "caterpillar_deg4"}) {
    auto t = load_fixture(name).tree;
    const auto before = segment_lengths(t);
    for (int n = 1; n <= 6; ++n) {
      auto s = subdivide_for(t, n);
      EXPECT_TRUE(is_n_sufficient(s.tree, n));
      EXPECT_GE(min_node_distance(s.tree) + 1, static_cast<std::size_t>(n)) << name << " n=" << n;
      std::vector<std::size_t> expect;
      for (auto len : before) expect.push_back(std::max<std::size_t>(len, n - 1));
      std::sort(expect.begin(), expect.end());
      EXPECT_EQ(segment_lengths(s.tree), expect) << name << " n=" << n;
      for (Vertex v = 0; v < t.size(); ++v) {
        EXPECT_EQ(s.tree.degree(s.image[v]), t.degree(v));
      }
    }
  }
}

TEST(Subdivision, PathsFollowSufficiency) {
  auto path = parse_tree("root 0\n0: 1\n1: 2\n").tree;
  EXPECT_EQ(subdivide_for(path, 3).tree, path);
  auto s = subdivide_for(path, 5);
  EXPECT_TRUE(is_n_sufficient(s.tree, 5));
  EXPECT_EQ(s.tree.size(), 5u);
}

TEST(Embedding, BinaryTreesAndT0) {
  auto t0 = load_fixture("t0").tree;
  EXPECT_TRUE(is_binary_core(t0));
  EXPECT_TRUE(satisfies_binary_core_embedding(t0));
  auto lin = load_fixture("linear2").tree;
  EXPECT_TRUE(satisfies_binary_core_embedding(lin));
  EXPECT_EQ(reembed_binary_core(lin).tree, lin);
}

TEST(Embedding, ThreeEssentialBranchesRefused) {
  auto star = parse_tree(
                  "root r\nr: c\nc: a b d e\na: a1 a2\nb: b1 b2\nd: d1 d2\n")
                  .tree;
  EXPECT_FALSE(is_binary_core(star));
  EXPECT_FALSE(satisfies_binary_core_embedding(star));
  EXPECT_THROW(reembed_binary_core(star), DomainError);
}

TEST(Embedding, DegreeFourMovesEssentialsRight) {
  auto lt = parse_tree("root r\nr: c\nc: a b e\na: a1 a2\nb: b1 b2\n");
  EXPECT_TRUE(is_binary_core(lt.tree));
  EXPECT_FALSE(satisfies_binary_core_embedding(lt.tree));
  auto re = reembed_binary_core(lt.tree);
  EXPECT_TRUE(satisfies_binary_core_embedding(re.tree));
  const Vertex c = re.image[1];
  std::vector<int> dirs;
  for (Vertex x : re.tree.essential_vertices()) {
    if (x != c) dirs.push_back(direction_of(re.tree, c, x));
  }
  EXPECT_EQ(dirs, (std::vector<int>{2, 3}));
}

TEST(Pruning, SingleVertexOfY) {
  auto y = load_fixture("y").tree;
  auto d = pruned_decomposition(y, {1}, {1});
  ASSERT_EQ(d.components.size(), 3u);
  EXPECT_EQ(d.component(0, 1).vertices, (std::vector<Vertex>{0}));
  EXPECT_EQ(d.component(1, 1).vertices, (std::vector<Vertex>{2}));
  EXPECT_EQ(d.component(1, 2).vertices, (std::vector<Vertex>{3}));
  // x1 is the only pruned leaf of the root component
  EXPECT_EQ(d.component(0, 1).leaves, (std::vector<int>{1}));
  EXPECT_TRUE(d.component(1, 1).leaves.empty());
  EXPECT_TRUE(d.component(1, 2).leaves.empty());
}

TEST(Pruning, EmptyEssentialSet) {
  auto t0 = load_fixture("t0").tree;
  auto d = pruned_decomposition(t0, {});
  ASSERT_EQ(d.components.size(), 1u);
  EXPECT_EQ(d.components[0].vertices.size(), t0.size());
  EXPECT_TRUE(d.components[0].leaves.empty());
}

TEST(Pruning, T0AllFour) {
  auto t0 = load_fixture("t0").tree;
  const auto& xs = t0.essential_vertices();
  auto d = pruned_decomposition(t0, xs);
  EXPECT_EQ(d.component(0, 1).leaves, (std::vector<int>{1}));
  // x1 = 1 sees x2 directly in direction 2; x2 = 3 sees x3 and x4
  EXPECT_TRUE(d.component(1, 1).leaves.empty());
  EXPECT_EQ(d.component(1, 2).leaves, (std::vector<int>{2}));
  EXPECT_EQ(d.component(2, 1).leaves, (std::vector<int>{3}));
  EXPECT_EQ(d.component(2, 2).leaves, (std::vector<int>{4}));
}
