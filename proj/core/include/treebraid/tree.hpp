#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "treebraid/common.hpp"

namespace treebraid {

// A rooted plane tree whose vertex ids are the T-order: the root is 0 and ids
// increase along a depth-first walk taking the leftmost branch first. Since
// the labeling is a preorder, the subtree of v is the id range [v, end(v)).
class RootedPlaneTree {
 public:
  RootedPlaneTree() = default;
  // children[v] lists the children of v in planar order. Throws DomainError
  // unless the lists describe a tree already labeled in T-order.
  explicit RootedPlaneTree(std::vector<std::vector<Vertex>> children);

  std::size_t size() const { return children_.size(); }
  Vertex parent(Vertex v) const;
  std::span<const Vertex> children(Vertex v) const { return children_[v]; }
  int degree(Vertex v) const {
    return static_cast<int>(children_[v].size()) + (v == 0 ? 0 : 1);
  }
  bool is_essential(Vertex v) const { return degree(v) >= 3; }
  const std::vector<Vertex>& essential_vertices() const { return essential_; }
  Vertex subtree_end(Vertex v) const { return end_[v]; }
  bool in_subtree(Vertex top, Vertex v) const { return top <= v && v < end_[top]; }
  const std::vector<std::vector<Vertex>>& child_lists() const { return children_; }

  bool operator==(const RootedPlaneTree& other) const { return children_ == other.children_; }

 private:
  std::vector<std::vector<Vertex>> children_;
  std::vector<Vertex> parent_;
  std::vector<Vertex> end_;
  std::vector<Vertex> essential_;
};

// x[dir]: dir 0 points to the root, dir >= 1 to the children in planar order.
Vertex direction_vertex(const RootedPlaneTree& tree, Vertex x, int dir);
// Inverse of direction_vertex for a neighbor y of x.
int direction_of(const RootedPlaneTree& tree, Vertex x, Vertex y);

struct LabeledTree {
  RootedPlaneTree tree;
  std::vector<std::string> labels;  // labels[id] is the input label of T-order id
};

// Relabels an arbitrarily labeled rooted plane tree into T-order.
LabeledTree build_tree(
    const std::string& root,
    const std::vector<std::pair<std::string, std::vector<std::string>>>& child_lists);

// Parses the .tree text format: "root <id>" then "<id>: <child> <child> ...".
LabeledTree parse_tree(std::string_view text);
std::string to_text(const RootedPlaneTree& tree);

bool is_n_sufficient(const RootedPlaneTree& tree, int n);

struct Subdivision {
  RootedPlaneTree tree;
  std::vector<Vertex> image;  // image[v] is the new id of old vertex v
};

// Minimal subdivision in which every path between distinct vertices of
// degree != 2 has at least n-1 edges.
Subdivision subdivide_for(const RootedPlaneTree& tree, int n);

bool is_binary_core(const RootedPlaneTree& tree);
// No essential vertex in x-directions 1..d(x)-3 for any essential x.
bool satisfies_binary_core_embedding(const RootedPlaneTree& tree);

struct Reembedding {
  RootedPlaneTree tree;
  std::vector<Vertex> image;
};
Reembedding reembed_binary_core(const RootedPlaneTree& tree);

// Components of T minus an ascending set of essential vertices x_1 < ... < x_m.
// Factor indices are 1-based; owner 0 stands for the root component C_{0,1}.
struct Component {
  int owner = 0;                // i with C = C_{i,dir}
  int dir = 1;
  std::vector<Vertex> vertices;  // vertices of the open component
  std::vector<int> leaves;       // L_{i,dir} as factor indices
};

struct PrunedTree {
  Vertex root = 0;
  std::vector<Vertex> vertices;
};

struct PrunedDecomposition {
  std::vector<Vertex> essential;  // x_1..x_m
  std::vector<int> r;             // r_1..r_m (0 when not supplied)
  std::vector<Component> components;
  std::vector<PrunedTree> pruned_trees;  // parallel to components
  // index of C_{i,dir} in components; i = 0 gives C_{0,1}
  std::size_t index(int owner, int dir) const;
  const Component& component(int owner, int dir) const { return components[index(owner, dir)]; }
  // factor indices bounding the component, the owner included when i > 0
  std::vector<int> bounding(std::size_t c) const;

  std::vector<std::size_t> offsets;  // first component index per owner
};

// r may be empty, in which case pruned trees are not split at x̄_i.
PrunedDecomposition pruned_decomposition(const RootedPlaneTree& tree,
                                         const std::vector<Vertex>& essential,
                                         const std::vector<int>& r = {});

}  // namespace treebraid
