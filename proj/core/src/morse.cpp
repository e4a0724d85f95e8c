#include "treebraid/morse.hpp"

#include <numeric>
#include <sstream>
#include <unordered_set>

namespace treebraid {

namespace {

bool occupied_by(const RootedPlaneTree& tree, const IngredientTuple& c, Vertex u) {
  for (int i = 0; i < c.size(); ++i) {
    Ingredient a = c[i];
    if (a.v == u || (a.edge && tree.parent(a.v) == u)) return true;
  }
  return false;
}

}  // namespace

IngredientState ingredient_status(const RootedPlaneTree& tree, const IngredientTuple& cube,
                                  int pos) {
  const Ingredient a = cube[pos];
  if (!a.edge) {
    if (a.v == 0 || occupied_by(tree, cube, tree.parent(a.v))) return IngredientState::kBlocked;
    return IngredientState::kUnblocked;
  }
  const Vertex x = tree.parent(a.v);
  for (int i = 0; i < cube.size(); ++i) {
    const Ingredient z = cube[i];
    if (!z.edge && z.v > x && z.v < a.v && tree.parent(z.v) == x) {
      return IngredientState::kOrderDisrespectful;
    }
  }
  return IngredientState::kOrderRespecting;
}

CellStatus fs_status(const RootedPlaneTree& tree, const OrbitCube& cube) {
  for (int i = 0; i < cube.size(); ++i) {
    switch (ingredient_status(tree, cube, i)) {
      case IngredientState::kUnblocked:
        return {CellKind::kRedundant, cube.replaced(i, {cube[i].v, true})};
      case IngredientState::kOrderRespecting:
        return {CellKind::kCollapsible, cube.replaced(i, {cube[i].v, false})};
      default:
        break;
    }
  }
  return {CellKind::kCritical, {}};
}

std::string to_string(const CriticalCell& c) {
  std::ostringstream out;
  auto tuple = [&](const std::vector<int>& t) {
    out << '(';
    for (std::size_t i = 0; i < t.size(); ++i) out << (i ? "," : "") << t[i];
    out << ')';
  };
  out << '{' << c.k;
  for (const auto& b : c.blocks) {
    out << " | " << b.x << ',';
    tuple(b.p);
    out << ',';
    tuple(b.q);
  }
  out << '}';
  return out.str();
}

void validate(const RootedPlaneTree& tree, int n, const CriticalCell& c) {
  auto fail = [&](const std::string& why) { throw DomainError(to_string(c) + ": " + why); };
  if (c.k < 0) fail("negative root stack");
  int total = c.k + c.dim();
  for (std::size_t i = 0; i < c.blocks.size(); ++i) {
    const Block& b = c.blocks[i];
    if (b.x >= tree.size() || !tree.is_essential(b.x)) fail("vertex is not essential");
    if (i > 0 && c.blocks[i - 1].x >= b.x) fail("blocks must ascend in x");
    if (b.r() < 1 || b.s() < 1 || b.r() + b.s() != tree.degree(b.x) - 1) {
      fail("split r+s must equal d(x)-1 with r,s >= 1");
    }
    bool positive = false;
    for (int t : b.p) {
      if (t < 0) fail("negative stack");
      positive |= t > 0;
      total += t;
    }
    for (int t : b.q) {
      if (t < 0) fail("negative stack");
      total += t;
    }
    if (!positive) fail("p must have a positive entry");
  }
  if (total != n) fail("ingredient count differs from n");
}

std::vector<CriticalCell> enumerate_critical(const RootedPlaneTree& tree, int n, int m) {
  std::vector<CriticalCell> out;
  const auto& ess = tree.essential_vertices();
  if (m < 0 || m > static_cast<int>(ess.size()) || n - m < 0) return out;
  std::vector<std::size_t> pick;
  CriticalCell cell;

  // distribute `left` ingredients over k and the stacks of blocks[bi..]
  auto fill = [&](auto&& self, std::size_t bi, std::size_t slot, int left, bool p_positive) -> void {
    if (bi == cell.blocks.size()) {
      cell.k = left;
      out.push_back(cell);
      return;
    }
    Block& b = cell.blocks[bi];
    const std::size_t r = b.p.size(), slots = r + b.q.size();
    if (slot == slots) {
      self(self, bi + 1, 0, left, false);
      return;
    }
    for (int t = 0; t <= left; ++t) {
      if (slot + 1 == r && !p_positive && t == 0) continue;
      (slot < r ? b.p[slot] : b.q[slot - r]) = t;
      self(self, bi, slot + 1, left - t, p_positive || (slot < r && t > 0));
    }
  };
  auto choose_r = [&](auto&& self, std::size_t bi) -> void {
    if (bi == pick.size()) {
      fill(fill, 0, 0, n - m, false);
      return;
    }
    const int d = tree.degree(ess[pick[bi]]) - 1;
    for (int r = 1; r < d; ++r) {
      cell.blocks[bi] = Block{ess[pick[bi]], std::vector<int>(r), std::vector<int>(d - r)};
      self(self, bi + 1);
    }
  };
  auto choose_x = [&](auto&& self, std::size_t from) -> void {
    if (static_cast<int>(pick.size()) == m) {
      cell.blocks.assign(m, Block{});
      choose_r(choose_r, 0);
      return;
    }
    for (std::size_t i = from; i < ess.size(); ++i) {
      pick.push_back(i);
      self(self, i + 1);
      pick.pop_back();
    }
  };
  choose_x(choose_x, 0);
  return out;
}

namespace {

// Appends the stack y, y+1, ..., y+t-1; each member must be the first child of
// the previous one.
void push_stack(const RootedPlaneTree& tree, Vertex y, int t, std::vector<Ingredient>& items) {
  for (int j = 0; j < t; ++j) {
    Vertex v = y + static_cast<Vertex>(j);
    if (v >= tree.size() || (j > 0 && tree.parent(v) != v - 1)) {
      throw DomainError("stack does not fit; the tree is not sufficiently subdivided");
    }
    items.push_back({v, false});
  }
}

int stack_length(const RootedPlaneTree& tree, const std::vector<char>& present, Vertex y) {
  int t = 0;
  for (Vertex v = y; v < tree.size() && present[v] && (v == y || tree.parent(v) == v - 1); ++v) ++t;
  return t;
}

}  // namespace

OrbitCube to_orbit_cube(const RootedPlaneTree& tree, int n, const CriticalCell& c) {
  validate(tree, n, c);
  std::vector<Ingredient> items;
  push_stack(tree, 0, c.k, items);
  for (const auto& b : c.blocks) {
    const Vertex xbar = direction_vertex(tree, b.x, b.r() + 1);
    items.push_back({xbar, true});
    const int d = b.r() + b.s();
    for (int l = 1; l <= d; ++l) {
      const int t = l <= b.r() ? b.p[l - 1] : b.q[l - 1 - b.r()];
      if (t == 0) continue;
      Vertex y = direction_vertex(tree, b.x, l);
      if (l == b.r() + 1) {
        if (tree.children(y).empty()) {
          throw DomainError("stack does not fit; the tree is not sufficiently subdivided");
        }
        y = tree.children(y)[0];
      }
      push_stack(tree, y, t, items);
    }
  }
  OrbitCube cube(items);
  for (int i = 0; i < cube.size(); ++i) {
    for (int j = 0; j < i; ++j) {
      if (closures_meet(tree, cube[i], cube[j])) {
        throw DomainError("ingredients collide; the tree is not sufficiently subdivided");
      }
    }
  }
  return cube;
}

std::optional<CriticalCell> critical_form(const RootedPlaneTree& tree, const OrbitCube& cube) {
  std::vector<char> present(tree.size(), 0);
  CriticalCell c;
  for (int i = 0; i < cube.size(); ++i) {
    Ingredient a = cube[i];
    if (!a.edge) {
      present[a.v] = 1;
      continue;
    }
    const Vertex x = tree.parent(a.v);
    if (!tree.is_essential(x)) return std::nullopt;
    const int r = direction_of(tree, x, a.v) - 1;
    const int d = tree.degree(x) - 1;
    if (r < 1 || r >= d) return std::nullopt;
    c.blocks.push_back(Block{x, std::vector<int>(r), std::vector<int>(d - r)});
  }
  std::sort(c.blocks.begin(), c.blocks.end());
  c.k = stack_length(tree, present, 0);
  for (auto& b : c.blocks) {
    for (int l = 1; l <= b.r() + b.s(); ++l) {
      Vertex y = direction_vertex(tree, b.x, l);
      if (l == b.r() + 1) {
        if (tree.children(y).empty()) continue;
        y = tree.children(y)[0];
      }
      (l <= b.r() ? b.p[l - 1] : b.q[l - 1 - b.r()]) = stack_length(tree, present, y);
    }
  }
  try {
    if (to_orbit_cube(tree, cube.size(), c) != cube) return std::nullopt;
  } catch (const DomainError&) {
    return std::nullopt;
  }
  return c;
}

void MorseCochain::add(const CriticalCell& c, Coeff v) {
  if (v == 0) return;
  auto [it, fresh] = terms_.try_emplace(c, v);
  if (!fresh) {
    it->second = checked_add(it->second, v);
    if (it->second == 0) terms_.erase(it);
  }
}

MorseCochain& MorseCochain::operator+=(const MorseCochain& o) {
  for (const auto& [c, v] : o.terms_) add(c, v);
  return *this;
}

MorseCochain MorseCochain::scaled(Coeff s) const {
  MorseCochain out;
  for (const auto& [c, v] : terms_) out.add(c, checked_mul(v, s));
  return out;
}

Coeff MorseCochain::operator[](const CriticalCell& c) const {
  auto it = terms_.find(c);
  return it == terms_.end() ? 0 : it->second;
}

MorseCochain MorseCochain::reduced_mod(Coeff p) const {
  if (p == 0) return *this;
  if (p < 0) throw DomainError("modulus must be non-negative");
  MorseCochain out;
  for (const auto& [c, v] : terms_) out.add(c, ((v % p) + p) % p);
  return out;
}

std::string to_string(const MorseCochain& m) {
  if (m.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [c, v] : m.terms()) {
    out << (first ? "" : " + ") << v << '*' << to_string(c);
    first = false;
  }
  return out.str();
}

GradientField::GradientField(const AbramsModel& model, Budget budget)
    : model_(&model), budget_(budget) {}

const CellStatus& GradientField::status(const OrbitCube& c) {
  auto it = memo_.find(c);
  if (it != memo_.end()) return it->second;
  budget_.charge(memo_.size() + 1, "gradient path traversal");
  return memo_.emplace(c, fs_status(model_->tree(), c)).first->second;
}

namespace {

// Post-order evaluation of a DAG recurrence over the cells of `cone`.
// deps(c, emit) reports (dependency, weight) pairs; value = base(c) + sum weight * value(dep).
template <class Deps, class Base>
std::unordered_map<OrbitCube, Coeff, CubeHash> evaluate_dag(
    const std::unordered_set<OrbitCube, CubeHash>& cone, Deps deps, Base base) {
  std::unordered_map<OrbitCube, Coeff, CubeHash> value;
  std::unordered_map<OrbitCube, std::vector<std::pair<OrbitCube, int>>, CubeHash> edges;
  for (const auto& start : cone) {
    if (value.count(start)) continue;
    std::vector<OrbitCube> stack{start};
    while (!stack.empty()) {
      const OrbitCube c = stack.back();
      if (value.count(c)) {
        stack.pop_back();
        continue;
      }
      auto [it, fresh] = edges.try_emplace(c);
      if (fresh) deps(c, it->second);
      bool ready = true;
      for (const auto& [d, w] : it->second) {
        if (!value.count(d)) {
          stack.push_back(d);
          ready = false;
        }
      }
      if (!ready) continue;
      Coeff v = base(c);
      for (const auto& [d, w] : it->second) v = checked_add(v, checked_mul(w, value.at(d)));
      value.emplace(c, v);
      edges.erase(c);
      stack.pop_back();
    }
  }
  return value;
}

}  // namespace

OrbitCochain phi_bar(GradientField& field, const MorseCochain& m) {
  const AbramsModel& model = field.model();
  const RootedPlaneTree& tree = model.tree();
  std::unordered_map<OrbitCube, Coeff, CubeHash> source;
  std::unordered_set<OrbitCube, CubeHash> cone;
  std::vector<OrbitCube> queue;
  for (const auto& [c, v] : m.terms()) {
    OrbitCube cube = to_orbit_cube(tree, model.n(), c);
    source[cube] = v;
    if (cone.insert(cube).second) queue.push_back(cube);
  }
  // cells with an upper path into the sources
  while (!queue.empty()) {
    OrbitCube a2 = queue.back();
    queue.pop_back();
    for (const auto& [b, s] : model.cofaces(a2)) {
      const CellStatus& st = field.status(b);
      if (st.kind != CellKind::kCollapsible || st.partner == a2) continue;
      if (cone.insert(st.partner).second) {
        field.budget().charge(cone.size(), "upper path cone");
        queue.push_back(st.partner);
      }
    }
  }
  auto deps = [&](const OrbitCube& a, std::vector<std::pair<OrbitCube, int>>& out) {
    const CellStatus st = field.status(a);
    if (st.kind != CellKind::kRedundant) return;
    const auto faces = model.boundary(st.partner);
    int own = 0;
    for (const auto& [f, s] : faces) {
      if (f == a) own = s;
    }
    for (const auto& [f, s] : faces) {
      if (f != a && cone.count(f)) out.emplace_back(f, -own * s);
    }
  };
  auto base = [&](const OrbitCube& a) {
    auto it = source.find(a);
    return it == source.end() ? Coeff{0} : it->second;
  };
  OrbitCochain out;
  for (const auto& [c, v] : evaluate_dag(cone, deps, base)) out.add(c, v);
  return out;
}

MorseCochain phi_under(GradientField& field, const OrbitCochain& z) {
  const AbramsModel& model = field.model();
  const RootedPlaneTree& tree = model.tree();
  std::unordered_set<OrbitCube, CubeHash> cone;
  std::vector<OrbitCube> queue;
  for (const auto& [c, v] : z) {
    if (cone.insert(c).second) queue.push_back(c);
  }
  // cells with a lower path into the support
  while (!queue.empty()) {
    OrbitCube c2 = queue.back();
    queue.pop_back();
    const CellStatus st = field.status(c2);
    if (st.kind != CellKind::kCollapsible) continue;
    for (const auto& [c, s] : model.cofaces(st.partner)) {
      if (c == c2 || field.status(c).kind == CellKind::kRedundant) continue;
      if (cone.insert(c).second) {
        field.budget().charge(cone.size(), "lower path cone");
        queue.push_back(c);
      }
    }
  }
  auto deps = [&](const OrbitCube& c, std::vector<std::pair<OrbitCube, int>>& out) {
    if (field.status(c).kind == CellKind::kRedundant) return;
    for (const auto& [d, s] : model.boundary(c)) {
      const CellStatus& st = field.status(d);
      if (st.kind != CellKind::kRedundant || st.partner == c || !cone.count(st.partner)) continue;
      out.emplace_back(st.partner, -s * model.incidence(d, st.partner));
    }
  };
  auto base = [&](const OrbitCube& c) { return z[c]; };
  MorseCochain out;
  for (const auto& [c, v] : evaluate_dag(cone, deps, base)) {
    if (v == 0 || field.status(c).kind != CellKind::kCritical) continue;
    auto form = critical_form(tree, c);
    if (!form) throw std::logic_error("critical cube without normal form");
    out.add(*form, v);
  }
  return out;
}

MorseCochain morse_coboundary(GradientField& field, const CriticalCell& c) {
  const AbramsModel& model = field.model();
  std::unordered_map<OrbitCube, Coeff, CubeHash> acc;
  for (const auto& [a, v] : phi_bar(field, MorseCochain(c))) {
    for (const auto& [b, s] : model.cofaces(a)) {
      if (field.status(b).kind == CellKind::kCritical) acc[b] = checked_add(acc[b], s * v);
    }
  }
  MorseCochain out;
  for (const auto& [b, v] : acc) {
    if (v != 0) out.add(*critical_form(model.tree(), b), v);
  }
  return out;
}

OrbitCochain block_cocycle(const AbramsModel& model, const std::vector<Vertex>& edge_children,
                           const std::vector<std::pair<std::vector<Vertex>, int>>& pools,
                           const Budget& budget) {
  OrbitCochain out;
  double estimate = 1;
  for (const auto& [pool, t] : pools) {
    if (t < 0 || t > static_cast<int>(pool.size())) return out;
    for (int j = 0; j < t; ++j) estimate = estimate * double(pool.size() - j) / double(j + 1);
  }
  budget.charge(static_cast<std::size_t>(std::min(estimate, 1e18)), "block cocycle");
  std::vector<Ingredient> items;
  for (Vertex e : edge_children) items.push_back({e, true});
  auto rec = [&](auto&& self, std::size_t pi, std::size_t from, int left) -> void {
    if (pi == pools.size()) {
      OrbitCube cube(items);
      if (!model.is_cell(cube)) throw std::logic_error("block cocycle left the model");
      out.add(cube, 1);
      return;
    }
    const auto& [pool, t] = pools[pi];
    if (left == 0) {
      self(self, pi + 1, 0, pi + 1 < pools.size() ? pools[pi + 1].second : 0);
      return;
    }
    for (std::size_t i = from; i + left <= pool.size(); ++i) {
      items.push_back({pool[i], false});
      self(self, pi, i + 1, left - 1);
      items.pop_back();
    }
  };
  rec(rec, 0, 0, pools.empty() ? 0 : pools[0].second);
  return out;
}

OrbitCochain cocycle_rep_1dim(const AbramsModel& model, const CriticalCell& generator,
                              const Budget& budget) {
  const RootedPlaneTree& tree = model.tree();
  validate(tree, model.n(), generator);
  if (generator.dim() != 1) throw DomainError("cocycle_rep_1dim needs a 1-dimensional cell");
  const Block& b = generator.blocks[0];
  const Vertex xbar = direction_vertex(tree, b.x, b.r() + 1);
  std::vector<std::pair<std::vector<Vertex>, int>> pools;
  std::vector<Vertex> outside;
  for (Vertex v = 0; v < tree.size(); ++v) {
    if (!tree.in_subtree(b.x, v)) outside.push_back(v);
  }
  pools.emplace_back(std::move(outside), generator.k);
  for (int l = 1; l <= b.r() + b.s(); ++l) {
    const Vertex top = direction_vertex(tree, b.x, l);
    std::vector<Vertex> pool;
    for (Vertex v = top; v < tree.subtree_end(top); ++v) {
      if (v != xbar) pool.push_back(v);
    }
    pools.emplace_back(std::move(pool), l <= b.r() ? b.p[l - 1] : b.q[l - 1 - b.r()]);
  }
  return block_cocycle(model, {xbar}, pools, budget);
}

}  // namespace treebraid
