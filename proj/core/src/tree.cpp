#include "treebraid/tree.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>

namespace treebraid {

namespace {

// Preorder relabeling of an arbitrary child-list structure rooted at `root`.
std::pair<RootedPlaneTree, std::vector<Vertex>> relabel(
    const std::vector<std::vector<Vertex>>& children, Vertex root) {
  const std::size_t count = children.size();
  std::vector<Vertex> image(count, static_cast<Vertex>(-1));
  std::vector<Vertex> order;
  order.reserve(count);
  std::vector<Vertex> stack{root};
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    if (image[v] != static_cast<Vertex>(-1)) throw DomainError("input is not a tree: cycle detected");
    image[v] = static_cast<Vertex>(order.size());
    order.push_back(v);
    for (auto it = children[v].rbegin(); it != children[v].rend(); ++it) stack.push_back(*it);
  }
  if (order.size() != count) throw DomainError("input is not a tree: disconnected");
  std::vector<std::vector<Vertex>> out(count);
  for (Vertex v : order) {
    auto& list = out[image[v]];
    for (Vertex c : children[v]) list.push_back(image[c]);
  }
  return {RootedPlaneTree(std::move(out)), std::move(image)};
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> words;
  std::istringstream in{std::string(s)};
  std::string w;
  while (in >> w) words.push_back(w);
  return words;
}

}  // namespace

RootedPlaneTree::RootedPlaneTree(std::vector<std::vector<Vertex>> children)
    : children_(std::move(children)) {
  const std::size_t count = children_.size();
  if (count == 0) throw DomainError("tree has no vertices");
  if (children_[0].size() != 1) throw DomainError("root must have degree 1");
  parent_.assign(count, 0);
  end_.assign(count, 0);
  std::vector<char> seen(count, 0);
  Vertex next = 0;
  // iterative preorder; the pair holds (vertex, index of next child to visit)
  std::vector<std::pair<Vertex, std::size_t>> stack;
  auto enter = [&](Vertex v) {
    if (v >= count || seen[v]) throw DomainError("child lists do not describe a tree");
    if (v != next) throw DomainError("vertex ids are not in T-order");
    seen[v] = 1;
    ++next;
    stack.emplace_back(v, 0);
  };
  enter(0);
  while (!stack.empty()) {
    const Vertex v = stack.back().first;
    std::size_t& i = stack.back().second;
    if (i < children_[v].size()) {
      const Vertex c = children_[v][i++];
      enter(c);
      parent_[c] = v;
    } else {
      end_[v] = next;
      stack.pop_back();
    }
  }
  if (next != count) throw DomainError("tree is disconnected");
  for (Vertex v = 0; v < count; ++v) {
    if (degree(v) >= 3) essential_.push_back(v);
  }
}

Vertex RootedPlaneTree::parent(Vertex v) const {
  if (v == 0 || v >= size()) throw DomainError("vertex has no parent");
  return parent_[v];
}

Vertex direction_vertex(const RootedPlaneTree& tree, Vertex x, int dir) {
  if (x >= tree.size()) throw DomainError("vertex out of range");
  if (dir == 0) return tree.parent(x);
  auto ch = tree.children(x);
  if (dir < 0 || static_cast<std::size_t>(dir) > ch.size()) {
    throw DomainError("direction out of range");
  }
  return ch[dir - 1];
}

int direction_of(const RootedPlaneTree& tree, Vertex x, Vertex y) {
  if (x != 0 && tree.parent(x) == y) return 0;
  auto ch = tree.children(x);
  auto it = std::find(ch.begin(), ch.end(), y);
  if (it == ch.end()) throw DomainError("vertices are not adjacent");
  return static_cast<int>(it - ch.begin()) + 1;
}

LabeledTree build_tree(
    const std::string& root,
    const std::vector<std::pair<std::string, std::vector<std::string>>>& child_lists) {
  std::unordered_map<std::string, Vertex> index;
  std::vector<std::string> names;
  auto id = [&](const std::string& s) {
    auto [it, fresh] = index.emplace(s, static_cast<Vertex>(names.size()));
    if (fresh) names.push_back(s);
    return it->second;
  };
  id(root);
  std::vector<std::vector<Vertex>> children;
  std::vector<int> parents_seen;
  for (const auto& [v, cs] : child_lists) {
    Vertex u = id(v);
    for (const auto& c : cs) id(c);
    children.resize(names.size());
    if (!children[u].empty()) throw DomainError("vertex " + v + " listed twice");
    for (const auto& c : cs) children[u].push_back(index.at(c));
  }
  children.resize(names.size());
  parents_seen.assign(names.size(), 0);
  for (const auto& list : children) {
    for (Vertex c : list) {
      if (c == 0) throw DomainError("input is not a tree: cycle through the root");
      if (++parents_seen[c] > 1) throw DomainError("input is not a tree: cycle at " + names[c]);
    }
  }
  if (children[0].size() != 1) throw DomainError("root must have degree 1");
  auto [tree, image] = relabel(children, 0);
  std::vector<std::string> labels(names.size());
  for (std::size_t v = 0; v < names.size(); ++v) labels[image[v]] = names[v];
  return {std::move(tree), std::move(labels)};
}

LabeledTree parse_tree(std::string_view text) {
  std::string root;
  std::vector<std::pair<std::string, std::vector<std::string>>> lists;
  std::size_t line_no = 0;
  while (!text.empty()) {
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string_view::npos) {
      auto words = split_words(line);
      if (words.size() != 2 || words[0] != "root" || !root.empty()) {
        throw DomainError("line " + std::to_string(line_no) + ": expected 'root <id>'");
      }
      root = words[1];
      continue;
    }
    auto head = split_words(line.substr(0, colon));
    if (head.size() != 1) throw DomainError("line " + std::to_string(line_no) + ": bad vertex");
    lists.emplace_back(head[0], split_words(line.substr(colon + 1)));
  }
  if (root.empty()) throw DomainError("missing 'root <id>' line");
  return build_tree(root, lists);
}

std::string to_text(const RootedPlaneTree& tree) {
  std::ostringstream out;
  out << "root 0\n";
  for (Vertex v = 0; v < tree.size(); ++v) {
    auto ch = tree.children(v);
    if (ch.empty()) continue;
    out << v << ':';
    for (Vertex c : ch) out << ' ' << c;
    out << '\n';
  }
  return out.str();
}

namespace {

// Number of edges from u through child c down to the next vertex of degree != 2.
int chain_length(const RootedPlaneTree& tree, Vertex c) {
  int len = 1;
  while (tree.degree(c) == 2) {
    c = tree.children(c)[0];
    ++len;
  }
  return len;
}

}  // namespace

bool is_n_sufficient(const RootedPlaneTree& tree, int n) {
  for (Vertex u = 0; u < tree.size(); ++u) {
    if (tree.degree(u) == 2) continue;
    for (Vertex c : tree.children(u)) {
      if (chain_length(tree, c) < n - 1) return false;
    }
  }
  return true;
}

Subdivision subdivide_for(const RootedPlaneTree& tree, int n) {
  if (n < 1) throw DomainError("n must be positive");
  std::vector<std::vector<Vertex>> children = tree.child_lists();
  for (Vertex u = 0; u < tree.size(); ++u) {
    if (tree.degree(u) == 2) continue;
    std::vector<Vertex> list = children[u];
    for (auto& c : list) {
      int missing = n - 1 - chain_length(tree, c);
      // A chain of degree-2 vertices inserted directly below u; where they go
      // along the path does not change the plane tree.
      Vertex below = c;
      for (int j = 0; j < missing; ++j) {
        children.push_back({below});
        below = static_cast<Vertex>(children.size() - 1);
      }
      c = below;
    }
    children[u] = std::move(list);
  }
  auto [out, image] = relabel(children, 0);
  image.resize(tree.size());
  return {std::move(out), std::move(image)};
}

namespace {

std::vector<char> carries_essential(const RootedPlaneTree& tree) {
  std::vector<char> has(tree.size(), 0);
  for (Vertex v = static_cast<Vertex>(tree.size()); v-- > 0;) {
    if (tree.is_essential(v)) has[v] = 1;
    for (Vertex c : tree.children(v)) has[v] |= has[c];
  }
  return has;
}

}  // namespace

bool is_binary_core(const RootedPlaneTree& tree) {
  auto has = carries_essential(tree);
  for (Vertex x : tree.essential_vertices()) {
    int count = 0;
    for (Vertex c : tree.children(x)) count += has[c];
    if (count > 2) return false;
  }
  return true;
}

bool satisfies_binary_core_embedding(const RootedPlaneTree& tree) {
  auto has = carries_essential(tree);
  for (Vertex x : tree.essential_vertices()) {
    auto ch = tree.children(x);
    for (std::size_t j = 0; j + 2 < ch.size(); ++j) {
      if (has[ch[j]]) return false;
    }
  }
  return true;
}

Reembedding reembed_binary_core(const RootedPlaneTree& tree) {
  if (!is_binary_core(tree)) throw DomainError("tree does not have a binary core");
  auto has = carries_essential(tree);
  std::vector<std::vector<Vertex>> children = tree.child_lists();
  for (auto& list : children) {
    std::stable_partition(list.begin(), list.end(), [&](Vertex c) { return !has[c]; });
  }
  auto [out, image] = relabel(children, 0);
  return {std::move(out), std::move(image)};
}

std::size_t PrunedDecomposition::index(int owner, int dir) const {
  if (owner == 0) {
    if (dir != 1) throw DomainError("root component has direction 1 only");
    return 0;
  }
  if (owner < 0 || static_cast<std::size_t>(owner) >= offsets.size()) {
    throw DomainError("component owner out of range");
  }
  std::size_t first = offsets[owner];
  std::size_t last = owner + 1 < static_cast<int>(offsets.size()) ? offsets[owner + 1]
                                                                   : components.size();
  if (dir < 1 || first + dir - 1 >= last) throw DomainError("component direction out of range");
  return first + dir - 1;
}

std::vector<int> PrunedDecomposition::bounding(std::size_t c) const {
  std::vector<int> out;
  if (components[c].owner != 0) out.push_back(components[c].owner);
  out.insert(out.end(), components[c].leaves.begin(), components[c].leaves.end());
  return out;
}

PrunedDecomposition pruned_decomposition(const RootedPlaneTree& tree,
                                         const std::vector<Vertex>& essential,
                                         const std::vector<int>& r) {
  const std::size_t m = essential.size();
  if (!r.empty() && r.size() != m) throw DomainError("r-list length mismatch");
  std::vector<int> factor(tree.size(), 0);  // 1-based factor index or 0
  for (std::size_t i = 0; i < m; ++i) {
    Vertex x = essential[i];
    if (x >= tree.size() || !tree.is_essential(x)) {
      throw DomainError("vertex " + std::to_string(x) + " is not essential");
    }
    if (i > 0 && essential[i - 1] >= x) throw DomainError("essential vertices must ascend");
    if (!r.empty() && (r[i] < 1 || r[i] > tree.degree(x) - 2)) {
      throw DomainError("r out of range at vertex " + std::to_string(x));
    }
    factor[x] = static_cast<int>(i + 1);
  }

  PrunedDecomposition d;
  d.essential = essential;
  d.r = r.empty() ? std::vector<int>(m, 0) : r;
  d.offsets.assign(m + 1, 0);
  d.components.push_back({0, 1, {}, {}});
  for (std::size_t i = 0; i < m; ++i) {
    d.offsets[i + 1] = d.components.size();
    for (int dir = 1; dir < tree.degree(essential[i]); ++dir) {
      d.components.push_back({static_cast<int>(i + 1), dir, {}, {}});
    }
  }

  // home[v]: component containing v, or bounded from below by v when v is some x_j
  std::vector<std::size_t> home(tree.size(), 0);
  for (Vertex v = 1; v < tree.size(); ++v) {
    Vertex p = tree.parent(v);
    home[v] = factor[p] ? d.index(factor[p], direction_of(tree, p, v)) : home[p];
  }
  for (Vertex v = 0; v < tree.size(); ++v) {
    auto& comp = d.components[home[v]];
    if (factor[v]) {
      comp.leaves.push_back(factor[v]);
    } else {
      comp.vertices.push_back(v);
    }
  }

  for (const auto& comp : d.components) {
    PrunedTree t;
    if (comp.owner == 0) {
      t.root = 0;
      t.vertices = comp.vertices;
    } else {
      Vertex x = essential[comp.owner - 1];
      if (d.r[comp.owner - 1] + 1 == comp.dir) {
        t.root = direction_vertex(tree, x, comp.dir);
        t.vertices = comp.vertices;
      } else {
        t.root = x;
        t.vertices.push_back(x);
        t.vertices.insert(t.vertices.end(), comp.vertices.begin(), comp.vertices.end());
      }
    }
    d.pruned_trees.push_back(std::move(t));
  }
  return d;
}

}  // namespace treebraid
