#include "treebraid/interaction.hpp"

#include <algorithm>
#include <sstream>

namespace treebraid {

namespace {

std::string tuple_string(const std::vector<int>& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
  return s + ")";
}

bool by_x(const InteractionVertex& a, const InteractionVertex& b) {
  if (a.x != b.x) return a.x < b.x;
  return a < b;
}

PrunedDecomposition decompose(const RootedPlaneTree& tree,
                              const std::vector<InteractionVertex>& factors) {
  std::vector<Vertex> xs;
  std::vector<int> rs;
  for (const auto& f : factors) {
    xs.push_back(f.x);
    rs.push_back(f.r());
  }
  return pruned_decomposition(tree, xs, rs);
}

bool distinct_x(const std::vector<InteractionVertex>& sorted) {
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i - 1].x == sorted[i].x) return false;
  }
  return true;
}

// (holds, strict) over all components
std::pair<bool, bool> check_inequalities(const RootedPlaneTree& tree, int n,
                                         const std::vector<InteractionVertex>& f) {
  const PrunedDecomposition d = decompose(tree, f);
  bool holds = true, strict = true;
  std::vector<char> strict_at(f.size(), 0);
  for (std::size_t c = 0; c < d.components.size(); ++c) {
    const Component& comp = d.components[c];
    const auto bound = d.bounding(c);
    long sum = 0;
    for (std::size_t j = 0; j < f.size(); ++j) sum += local_information(d, f, j, c);
    const long need = static_cast<long>(n) * (static_cast<long>(bound.size()) - 1);
    if (sum < need) holds = false;
    if (comp.owner > 0 && comp.dir <= f[comp.owner - 1].r() && sum > need) {
      strict_at[comp.owner - 1] = 1;
    }
  }
  for (char s : strict_at) strict = strict && s;
  return {holds, strict};
}

}  // namespace

std::string to_string(const InteractionVertex& v) {
  return "<" + std::to_string(v.k) + "," + std::to_string(v.x) + "," + tuple_string(v.p) + "," +
         tuple_string(v.q) + ">";
}

CriticalCell as_cell(const InteractionVertex& v) { return {v.k, {Block{v.x, v.p, v.q}}}; }

InteractionVertex as_vertex(const CriticalCell& c) {
  if (c.dim() != 1) throw DomainError("not a 1-dimensional cell: " + to_string(c));
  return {c.k, c.blocks[0].x, c.blocks[0].p, c.blocks[0].q};
}

void validate(const RootedPlaneTree& tree, int n, const InteractionVertex& v) {
  if (n < 1) throw DomainError("n must be positive");
  CriticalCell c = as_cell(v);
  // a generator carries n-1 vertex ingredients besides its edge
  validate(tree, n, c);
}

std::vector<InteractionVertex> enumerate_vnt(const RootedPlaneTree& tree, int n) {
  std::vector<InteractionVertex> out;
  for (const auto& c : enumerate_critical(tree, n, 1)) out.push_back(as_vertex(c));
  std::sort(out.begin(), out.end(), by_x);
  return out;
}

int local_information(const PrunedDecomposition& d, const std::vector<InteractionVertex>& factors,
                      std::size_t j, std::size_t c) {
  const Component& comp = d.components[c];
  const InteractionVertex& v = factors[j];
  const int own = static_cast<int>(j) + 1;
  if (comp.owner == own) return comp.dir <= v.r() ? v.p[comp.dir - 1] : v.q[comp.dir - 1 - v.r()];
  if (std::find(comp.leaves.begin(), comp.leaves.end(), own) != comp.leaves.end()) return v.k;
  return 0;
}

bool local_inequalities_hold(const RootedPlaneTree& tree, int n,
                             std::vector<InteractionVertex> factors) {
  std::sort(factors.begin(), factors.end(), by_x);
  if (!distinct_x(factors)) return false;
  return check_inequalities(tree, n, factors).first;
}

bool is_face(const RootedPlaneTree& tree, int n, std::vector<InteractionVertex> factors) {
  std::sort(factors.begin(), factors.end(), by_x);
  if (!distinct_x(factors)) return false;
  auto [holds, strict] = check_inequalities(tree, n, factors);
  return holds && strict;
}

InteractionParams interaction_params(const RootedPlaneTree& tree, int n,
                                     const std::vector<InteractionVertex>& factors) {
  for (std::size_t i = 1; i < factors.size(); ++i) {
    if (factors[i - 1].x == factors[i].x) {
      throw DomainError("repeated essential vertex " + std::to_string(factors[i].x));
    }
    if (factors[i - 1].x > factors[i].x) throw DomainError("factors must ascend in x");
  }
  for (const auto& f : factors) validate(tree, n, f);
  const PrunedDecomposition d = decompose(tree, factors);
  InteractionParams out;
  for (const auto& f : factors) {
    out.p.push_back(f.p);
    out.q.push_back(f.q);
  }
  out.r0 = n;
  for (const Component& comp : d.components) {
    int shift = 0;
    for (int j : comp.leaves) shift += factors[j - 1].k - n;
    if (comp.owner == 0) {
      out.r0 += shift;
      continue;
    }
    const int i = comp.owner - 1;
    const int r = factors[i].r();
    (comp.dir <= r ? out.p[i][comp.dir - 1] : out.q[i][comp.dir - 1 - r]) += shift;
  }
  return out;
}

std::string to_string(Interaction i) {
  switch (i) {
    case Interaction::kStrong:
      return "strong";
    case Interaction::kWeak:
      return "weak";
    default:
      return "none";
  }
}

Interaction classify(const InteractionParams& params) {
  if (params.r0 < 0) return Interaction::kNone;
  bool strong = true;
  for (std::size_t i = 0; i < params.p.size(); ++i) {
    bool positive = false;
    for (int t : params.p[i]) {
      if (t < 0) return Interaction::kNone;
      positive |= t > 0;
    }
    for (int t : params.q[i]) {
      if (t < 0) return Interaction::kNone;
    }
    strong = strong && positive;
  }
  return strong ? Interaction::kStrong : Interaction::kWeak;
}

Interaction classify_interaction(const RootedPlaneTree& tree, int n,
                                 const std::vector<InteractionVertex>& factors) {
  return classify(interaction_params(tree, n, factors));
}

namespace {

// Depth-first extension of ascending-x families accepted by `keep`.
template <class Keep, class Visit>
void extend_families(const std::vector<InteractionVertex>& vnt, std::size_t max_size, Keep keep,
                     Visit visit, const Budget& budget) {
  std::size_t visited = 0;
  Face face;
  auto rec = [&](auto&& self, std::size_t from) -> void {
    for (std::size_t i = from; i < vnt.size(); ++i) {
      if (!face.empty() && vnt[i].x <= face.back().x) continue;
      face.push_back(vnt[i]);
      budget.charge(++visited, "interaction complex");
      if (keep(face)) {
        visit(face);
        if (face.size() < max_size) self(self, i + 1);
      }
      face.pop_back();
    }
  };
  rec(rec, 0);
}

}  // namespace

std::vector<std::vector<Face>> knt_faces(const RootedPlaneTree& tree, int n, int up_to_dim,
                                         const Budget& budget) {
  const auto vnt = enumerate_vnt(tree, n);
  const std::size_t max_size =
      up_to_dim < 0 ? tree.essential_vertices().size() : static_cast<std::size_t>(up_to_dim) + 1;
  std::vector<std::vector<Face>> out;
  extend_families(
      vnt, max_size, [&](const Face& f) { return is_face(tree, n, f); },
      [&](const Face& f) {
        if (out.size() < f.size()) out.resize(f.size());
        out[f.size() - 1].push_back(f);
      },
      budget);
  return out;
}

std::vector<std::size_t> f_vector(const RootedPlaneTree& tree, int n, const Budget& budget) {
  std::vector<std::size_t> out;
  for (const auto& faces : knt_faces(tree, n, -1, budget)) out.push_back(faces.size());
  return out;
}

bool is_flag(const RootedPlaneTree& tree, int n, const Budget& budget) {
  const auto vnt = enumerate_vnt(tree, n);
  bool flag = true;
  auto clique = [&](const Face& f) {
    const auto& last = f.back();
    for (std::size_t i = 0; i + 1 < f.size(); ++i) {
      if (!is_face(tree, n, {f[i], last})) return false;
    }
    return true;
  };
  extend_families(
      vnt, tree.essential_vertices().size(), clique,
      [&](const Face& f) { flag = flag && is_face(tree, n, f); }, budget);
  return flag;
}

}  // namespace treebraid
