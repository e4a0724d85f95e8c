#include "treebraid/cube.hpp"

#include <numeric>

namespace treebraid {

IngredientTuple::IngredientTuple(const std::vector<Ingredient>& items) {
  if (items.size() > static_cast<std::size_t>(kMaxStrands)) {
    throw DomainError("at most " + std::to_string(kMaxStrands) + " strands are supported");
  }
  size_ = static_cast<std::uint8_t>(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) code_[i] = items[i].code();
}

int IngredientTuple::dim() const {
  int d = 0;
  for (int i = 0; i < size_; ++i) d += code_[i] & 1;
  return d;
}

std::vector<Ingredient> IngredientTuple::items() const {
  std::vector<Ingredient> out;
  out.reserve(size_);
  for (int i = 0; i < size_; ++i) out.push_back((*this)[i]);
  return out;
}

std::size_t IngredientTuple::hash() const {
  std::uint64_t h = 1469598103934665603ull ^ size_;
  for (int i = 0; i < size_; ++i) {
    h ^= code_[i];
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h ^ (h >> 29));
}

OrbitCube::OrbitCube(std::vector<Ingredient> items) {
  std::sort(items.begin(), items.end());
  *static_cast<IngredientTuple*>(this) = IngredientTuple(items);
}

OrbitCube::OrbitCube(const ConfCube& c) : OrbitCube(c.items()) {}

ConfCube OrbitCube::as_conf() const { return ConfCube(items()); }

OrbitCube OrbitCube::replaced(int i, Ingredient a) const {
  auto list = items();
  list[i] = a;
  return OrbitCube(std::move(list));
}

bool closures_meet(const RootedPlaneTree& tree, Ingredient a, Ingredient b) {
  Vertex a0 = a.v, a1 = a.edge ? tree.parent(a.v) : a.v;
  Vertex b0 = b.v, b1 = b.edge ? tree.parent(b.v) : b.v;
  return a0 == b0 || a0 == b1 || a1 == b0 || a1 == b1;
}

namespace {

bool occupied(const RootedPlaneTree& tree, const IngredientTuple& c, Vertex u) {
  for (int i = 0; i < c.size(); ++i) {
    Ingredient a = c[i];
    if (a.v == u || (a.edge && tree.parent(a.v) == u)) return true;
  }
  return false;
}

}  // namespace

AbramsModel::AbramsModel(const RootedPlaneTree& tree, int n) : tree_(&tree), n_(n) {
  if (n < 1 || n > kMaxStrands) {
    throw DomainError("n must lie in 1.." + std::to_string(kMaxStrands));
  }
  if (tree.size() >= (1u << 15)) throw DomainError("tree too large for the cube encoding");
  if (!is_n_sufficient(tree, n)) {
    throw DomainError("tree is not " + std::to_string(n) +
                      "-sufficiently subdivided; subdivide it first");
  }
}

bool AbramsModel::is_cell(const IngredientTuple& c) const {
  if (c.size() != n_) return false;
  for (int i = 0; i < c.size(); ++i) {
    Ingredient a = c[i];
    if (a.v >= tree_->size() || (a.edge && a.v == 0)) return false;
    for (int j = 0; j < i; ++j) {
      if (closures_meet(*tree_, a, c[j])) return false;
    }
  }
  return true;
}

std::vector<OrbitCube> AbramsModel::enumerate(int dim, const Budget& budget) const {
  std::vector<OrbitCube> out;
  if (dim < 0 || dim > n_) return out;
  const Vertex count = static_cast<Vertex>(tree_->size());
  std::vector<char> taken(count, 0);
  std::vector<Ingredient> chosen;
  // Ingredients are chosen in increasing ordinal, so only the parent of the
  // current vertex can already be occupied.
  auto rec = [&](auto&& self, Vertex v, int edges) -> void {
    const int have = static_cast<int>(chosen.size());
    if (have == n_) {
      if (edges == dim) {
        out.emplace_back(chosen);
        budget.charge(out.size(), "cell enumeration");
      }
      return;
    }
    if (v >= count || static_cast<int>(count - v) < n_ - have) return;
    // vertex v
    if (have - edges < n_ - dim) {
      taken[v] = 1;
      chosen.push_back({v, false});
      self(self, v + 1, edges);
      chosen.pop_back();
      taken[v] = 0;
    }
    // edge e_v
    if (v > 0 && edges < dim && !taken[tree_->parent(v)]) {
      taken[v] = 1;
      taken[tree_->parent(v)] = 1;
      chosen.push_back({v, true});
      self(self, v + 1, edges + 1);
      chosen.pop_back();
      taken[tree_->parent(v)] = 0;
      taken[v] = 0;
    }
    self(self, v + 1, edges);
  };
  rec(rec, 0, 0);
  return out;
}

std::vector<ConfCube> AbramsModel::enumerate_ordered(int dim, const Budget& budget) const {
  std::vector<ConfCube> out;
  for (const auto& c : enumerate(dim, budget)) {
    std::vector<int> perm(n_);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::vector<Ingredient> items;
      for (int i : perm) items.push_back(c[i]);
      out.emplace_back(items);
      budget.charge(out.size(), "ordered cell enumeration");
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return out;
}

int AbramsModel::top_dimension() const {
  const Vertex count = static_cast<Vertex>(tree_->size());
  if (static_cast<int>(count) < n_) return -1;
  // greedy leaf-up matching is maximum on trees
  std::vector<char> matched(count, 0);
  int matching = 0;
  for (Vertex v = count; v-- > 1;) {
    Vertex p = tree_->parent(v);
    if (!matched[v] && !matched[p]) {
      matched[v] = matched[p] = 1;
      ++matching;
    }
  }
  int top = std::min(n_, matching);
  while (top > 0 && n_ + top > static_cast<int>(count)) --top;
  return top;
}

int AbramsModel::gradient_rank_sign(const IngredientTuple& c, Vertex edge_child) const {
  const Vertex low = tree_->parent(edge_child);
  int before = 0;
  for (int i = 0; i < c.size(); ++i) {
    Ingredient a = c[i];
    if (a.edge && tree_->parent(a.v) < low) ++before;
  }
  return before % 2 == 0 ? 1 : -1;
}

namespace {

int product_rank_sign(const IngredientTuple& c, int pos) {
  int before = 0;
  for (int i = 0; i < pos; ++i) before += c[i].edge ? 1 : 0;
  return before % 2 == 0 ? 1 : -1;
}

}  // namespace

std::vector<Incidence<OrbitCube>> AbramsModel::boundary(const OrbitCube& c) const {
  std::vector<Incidence<OrbitCube>> out;
  for (int i = 0; i < c.size(); ++i) {
    Ingredient a = c[i];
    if (!a.edge) continue;
    int s = gradient_rank_sign(c, a.v);
    out.push_back({c.replaced(i, {a.v, false}), s});
    out.push_back({c.replaced(i, {tree_->parent(a.v), false}), -s});
  }
  return out;
}

std::vector<Incidence<ConfCube>> AbramsModel::boundary(const ConfCube& c, Orientation o) const {
  std::vector<Incidence<ConfCube>> out;
  for (int i = 0; i < c.size(); ++i) {
    Ingredient a = c[i];
    if (!a.edge) continue;
    int s = o == Orientation::kGradient ? gradient_rank_sign(c, a.v) : product_rank_sign(c, i);
    ConfCube up = c, down = c;
    up.set(i, {a.v, false});
    down.set(i, {tree_->parent(a.v), false});
    out.push_back({up, s});
    out.push_back({down, -s});
  }
  return out;
}

std::vector<Incidence<OrbitCube>> AbramsModel::cofaces(const OrbitCube& c) const {
  std::vector<Incidence<OrbitCube>> out;
  for (int i = 0; i < c.size(); ++i) {
    Ingredient a = c[i];
    if (a.edge) continue;
    const Vertex v = a.v;
    if (v != 0 && !occupied(*tree_, c, tree_->parent(v))) {
      OrbitCube b = c.replaced(i, {v, true});
      out.push_back({b, gradient_rank_sign(b, v)});
    }
    for (Vertex w : tree_->children(v)) {
      if (occupied(*tree_, c, w)) continue;
      OrbitCube b = c.replaced(i, {w, true});
      out.push_back({b, -gradient_rank_sign(b, w)});
    }
  }
  return out;
}

int AbramsModel::incidence(const OrbitCube& face, const OrbitCube& cube) const {
  for (const auto& [f, s] : boundary(cube)) {
    if (f == face) return s;
  }
  return 0;
}

int AbramsModel::orientation_sign(const ConfCube& c) const {
  std::vector<Vertex> lows;
  for (int i = 0; i < c.size(); ++i) {
    if (c[i].edge) lows.push_back(tree_->parent(c[i].v));
  }
  int inversions = 0;
  for (std::size_t i = 0; i < lows.size(); ++i) {
    for (std::size_t j = i + 1; j < lows.size(); ++j) inversions += lows[i] > lows[j];
  }
  return inversions % 2 == 0 ? 1 : -1;
}

OrbitCochain AbramsModel::coboundary(const OrbitCochain& f) const {
  OrbitCochain out;
  for (const auto& [a, v] : f) {
    for (const auto& [b, s] : cofaces(a)) out.add(b, s * v);
  }
  return out;
}

ConfCochain AbramsModel::coboundary(const ConfCochain& f, Orientation o) const {
  ConfCochain out;
  for (const auto& [a, v] : f) {
    for (int i = 0; i < a.size(); ++i) {
      Ingredient x = a[i];
      if (x.edge) continue;
      auto attach = [&](Vertex child, bool upper) {
        ConfCube b = a;
        b.set(i, {child, true});
        int s = o == Orientation::kGradient ? gradient_rank_sign(b, child) : product_rank_sign(b, i);
        out.add(b, (upper ? s : -s) * v);
      };
      if (x.v != 0 && !occupied(*tree_, a, tree_->parent(x.v))) attach(x.v, true);
      for (Vertex w : tree_->children(x.v)) {
        if (!occupied(*tree_, a, w)) attach(w, false);
      }
    }
  }
  return out;
}

std::optional<std::pair<int, ConfCube>> AbramsModel::cup(const ConfCube& c, const ConfCube& d,
                                                         Orientation o) const {
  if (c.size() != n_ || d.size() != n_) throw DomainError("cube size mismatch");
  ConfCube e = c;
  int eps = 0, d_edges_before = 0;
  for (int i = 0; i < n_; ++i) {
    Ingredient a = c[i], b = d[i];
    if (!a.edge && !b.edge) {
      if (a.v != b.v) return std::nullopt;
    } else if (!a.edge && b.edge) {
      if (tree_->parent(b.v) != a.v) return std::nullopt;
      e.set(i, b);
    } else if (a.edge && !b.edge) {
      if (b.v != a.v) return std::nullopt;
    } else {
      return std::nullopt;
    }
    if (a.edge) eps += d_edges_before;
    if (b.edge) ++d_edges_before;
  }
  if (!is_cell(e)) return std::nullopt;
  int sign = eps % 2 == 0 ? 1 : -1;
  if (o == Orientation::kGradient) {
    sign *= orientation_sign(c) * orientation_sign(d) * orientation_sign(e);
  }
  return std::make_pair(sign, e);
}

ConfCochain AbramsModel::cup(const ConfCochain& a, const ConfCochain& b, Orientation o) const {
  ConfCochain out;
  for (const auto& [c, u] : a) {
    for (const auto& [d, v] : b) {
      if (auto r = cup(c, d, o)) out.add(r->second, checked_mul(r->first, checked_mul(u, v)));
    }
  }
  return out;
}

OrbitCochain AbramsModel::cup_impl(const OrbitCochain& a, const OrbitCochain& b,
                                   bool convert) const {
  // By equivariance it suffices to fix the canonical representative of each
  // left factor; the coordinate matching with the right factor is then forced
  // because a vertex meets at most one ingredient of a cube in the right way.
  OrbitCochain out;
  const Orientation o = convert ? Orientation::kGradient : Orientation::kProduct;
  std::vector<Ingredient> matched(n_);
  for (const auto& [c, u] : a) {
    const ConfCube cc = c.as_conf();
    for (const auto& [d, v] : b) {
      std::uint32_t used = 0;
      bool ok = true;
      for (int i = 0; i < n_ && ok; ++i) {
        Ingredient x = c[i];
        ok = false;
        for (int j = 0; j < n_; ++j) {
          if (used >> j & 1) continue;
          Ingredient y = d[j];
          bool fits = x.edge ? (!y.edge && y.v == x.v)
                             : (y.edge ? tree_->parent(y.v) == x.v : y.v == x.v);
          if (fits) {
            matched[i] = y;
            used |= 1u << j;
            ok = true;
            break;
          }
        }
      }
      if (!ok) continue;
      if (auto r = cup(cc, ConfCube(matched), o)) {
        out.add(OrbitCube(r->second), checked_mul(r->first, checked_mul(u, v)));
      }
    }
  }
  return out;
}

OrbitCochain AbramsModel::cup(const OrbitCochain& a, const OrbitCochain& b) const {
  return cup_impl(a, b, true);
}

OrbitCochain AbramsModel::cup_without_conversion(const OrbitCochain& a,
                                                 const OrbitCochain& b) const {
  return cup_impl(a, b, false);
}

ConfCochain AbramsModel::pi_star(const OrbitCochain& f) const {
  ConfCochain out;
  std::vector<int> perm(n_);
  for (const auto& [c, v] : f) {
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::vector<Ingredient> items;
      for (int i : perm) items.push_back(c[i]);
      out.add(ConfCube(items), v);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return out;
}

}  // namespace treebraid
