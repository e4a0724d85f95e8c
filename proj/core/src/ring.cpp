#include "treebraid/ring.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace treebraid {

namespace {

// Calls f(a) for every tuple a >= 0 of the given length with |a| <= max_sum.
template <class F>
void for_each_tuple(int length, int max_sum, F f) {
  std::vector<int> a(length, 0);
  auto rec = [&](auto&& self, int i, int left) -> void {
    if (i == length) {
      f(a);
      return;
    }
    for (int t = 0; t <= left; ++t) {
      a[i] = t;
      self(self, i + 1, left - t);
    }
    a[i] = 0;
  };
  if (max_sum >= 0) rec(rec, 0, max_sum);
}

int total(const std::vector<int>& t) {
  int s = 0;
  for (int v : t) s += v;
  return s;
}

std::vector<Vertex> essential_of(const CriticalCell& c) {
  std::vector<Vertex> xs;
  for (const auto& b : c.blocks) xs.push_back(b.x);
  return xs;
}

void require_below(const InteractionVertex& gen, const CriticalCell& cell) {
  if (!cell.blocks.empty() && gen.x >= cell.blocks.front().x) {
    throw DomainError("generator vertex must lie below every vertex of the cell");
  }
}

std::vector<InteractionVertex> with_front(const InteractionVertex& g,
                                          std::vector<InteractionVertex> rest) {
  rest.insert(rest.begin(), g);
  return rest;
}

CriticalCell cell_from_params(const std::vector<InteractionVertex>& factors,
                              const InteractionParams& params) {
  CriticalCell c;
  c.k = params.r0;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    c.blocks.push_back(Block{factors[i].x, params.p[i], params.q[i]});
  }
  return c;
}

// Ascending product of raw generators with distinct vertices.
RingElement fold_ascending(const RootedPlaneTree& tree, int n,
                           const std::vector<InteractionVertex>& sorted) {
  if (sorted.empty()) return unit(n);
  RingElement acc(as_cell(sorted.back()));
  for (std::size_t i = sorted.size() - 1; i-- > 0;) {
    RingElement next;
    for (const auto& [cell, coeff] : acc.terms()) {
      next += multiply_onto(tree, n, sorted[i], cell).scaled(coeff);
    }
    acc = std::move(next);
    if (acc.empty()) break;
  }
  return acc;
}

RingElement evaluate_raw(const RootedPlaneTree& tree, int n,
                         std::vector<InteractionVertex> factors) {
  for (const auto& f : factors) validate(tree, n, f);
  // insertion sort, tracking the parity of the permutation
  int sign = 1;
  for (std::size_t i = 1; i < factors.size(); ++i) {
    for (std::size_t j = i; j > 0 && factors[j - 1].x >= factors[j].x; --j) {
      if (factors[j - 1].x == factors[j].x) return {};
      std::swap(factors[j - 1], factors[j]);
      sign = -sign;
    }
  }
  return fold_ascending(tree, n, factors).scaled(sign);
}

}  // namespace

bool rebasing_applies(const InteractionVertex& v) {
  if (v.s() != 1 || v.p.empty()) return false;
  for (int i = 0; i + 1 < v.r(); ++i) {
    if (v.p[i] != 0) return false;
  }
  return true;
}

RingElement expand(const ChangedGenerator& g) {
  const InteractionVertex& v = g.v;
  if (!g.rebased || !rebasing_applies(v)) return RingElement(as_cell(v));
  RingElement out;
  for_each_tuple(v.r(), v.k, [&](const std::vector<int>& a) {
    std::vector<int> p = a;
    p.back() += v.p.back();
    out.add(CriticalCell{v.k - total(a), {Block{v.x, p, v.q}}}, 1);
  });
  return out;
}

RingElement unit(int n) { return RingElement(CriticalCell{n, {}}); }

std::vector<InteractionVertex> factorize_basis(const RootedPlaneTree& tree, int n,
                                               const CriticalCell& cell) {
  validate(tree, n, cell);
  const std::size_t m = cell.blocks.size();
  std::vector<int> rs;
  for (const auto& b : cell.blocks) rs.push_back(b.r());
  const PrunedDecomposition d = pruned_decomposition(tree, essential_of(cell), rs);

  // where each x_j sits as a pruned leaf
  std::vector<std::size_t> leaf_of(m + 1, 0);
  for (std::size_t c = 0; c < d.components.size(); ++c) {
    for (int j : d.components[c].leaves) leaf_of[j] = c;
  }
  int r0 = cell.k;
  std::vector<Block> params = cell.blocks;
  std::vector<InteractionVertex> out(m);
  for (std::size_t i = m; i-- > 0;) {
    const Block& b = params[i];
    const int k = n - 1 - total(b.p) - total(b.q);
    if (k < 0) throw std::logic_error("negative root stack while factorizing " + to_string(cell));
    out[i] = InteractionVertex{k, b.x, b.p, b.q};
    const Component& home = d.components[leaf_of[i + 1]];
    if (home.owner == 0) {
      r0 += n - k;
    } else {
      Block& t = params[home.owner - 1];
      (home.dir <= t.r() ? t.p[home.dir - 1] : t.q[home.dir - 1 - t.r()]) += n - k;
    }
  }
  if (r0 != n) throw std::logic_error("factorization does not close for " + to_string(cell));
  return out;
}

CriticalCell multiply_strong(const RootedPlaneTree& tree, int n,
                             const std::vector<InteractionVertex>& factors) {
  const InteractionParams params = interaction_params(tree, n, factors);
  if (classify(params) != Interaction::kStrong) {
    throw DomainError("factors do not interact strongly");
  }
  return cell_from_params(factors, params);
}

WeakSums weak_product_sums(const RootedPlaneTree& tree, int n, const InteractionVertex& gen,
                           const CriticalCell& pi1) {
  require_below(gen, pi1);
  const auto family = with_front(gen, factorize_basis(tree, n, pi1));
  const InteractionParams params = interaction_params(tree, n, family);
  if (classify(params) != Interaction::kWeak) throw DomainError("factors do not interact weakly");
  const int r0 = params.r0;
  const std::vector<int>& qx = params.q[0];
  const int rx = gen.r(), sx = gen.s();

  WeakSums out;
  auto cell = [&](int k, std::vector<int> p, std::vector<int> q) {
    CriticalCell c{k, {Block{gen.x, std::move(p), std::move(q)}}};
    c.blocks.insert(c.blocks.end(), pi1.blocks.begin(), pi1.blocks.end());
    return c;
  };
  for_each_tuple(rx, r0, [&](const std::vector<int>& a) {
    const int sa = total(a);
    if (sa >= 1) out.over_a.add(cell(r0 - sa, a, qx), -1);
  });
  for (int l = 1; l < sx; ++l) {
    // Q_x^(l,a,b) with a and b fixed below
    auto head = [&](const std::vector<int>& a, int b) {
      std::vector<int> p = a;
      p.push_back(qx[0] + b + 1);
      p.insert(p.end(), qx.begin() + 1, qx.begin() + l);
      return p;
    };
    const std::vector<int> plus(qx.begin() + l, qx.end());
    std::vector<int> minus = plus;
    minus[0] -= 1;
    for_each_tuple(rx + 1, r0 - 1, [&](const std::vector<int>& ab) {
      const std::vector<int> a(ab.begin(), ab.end() - 1);
      const int b = ab.back();
      out.over_plus.add(cell(r0 - total(ab) - 1, head(a, b), plus), 1);
    });
    if (qx[l] == 0) continue;
    for_each_tuple(rx + 1, r0, [&](const std::vector<int>& ab) {
      const std::vector<int> a(ab.begin(), ab.end() - 1);
      const int b = ab.back();
      out.over_minus.add(cell(r0 - total(ab), head(a, b), minus), -1);
    });
  }
  return out;
}

RingElement multiply_weak(const RootedPlaneTree& tree, int n, const InteractionVertex& gen,
                          const CriticalCell& pi1) {
  WeakSums sums = weak_product_sums(tree, n, gen, pi1);
  sums.over_a += sums.over_plus;
  sums.over_a += sums.over_minus;
  return sums.over_a;
}

RingElement multiply_onto(const RootedPlaneTree& tree, int n, const InteractionVertex& gen,
                          const CriticalCell& cell) {
  require_below(gen, cell);
  const auto family = with_front(gen, factorize_basis(tree, n, cell));
  const InteractionParams params = interaction_params(tree, n, family);
  switch (classify(params)) {
    case Interaction::kStrong:
      return RingElement(cell_from_params(family, params));
    case Interaction::kWeak:
      return multiply_weak(tree, n, gen, cell);
    default:
      return {};
  }
}

RingElement evaluate_product(const RootedPlaneTree& tree, int n,
                             const std::vector<ChangedGenerator>& generators) {
  std::vector<std::vector<std::pair<CriticalCell, Coeff>>> expanded;
  for (const auto& g : generators) {
    validate(tree, n, g.v);
    const RingElement e = expand(g);
    expanded.emplace_back(e.terms().begin(), e.terms().end());
  }
  RingElement out;
  std::vector<InteractionVertex> pick;
  auto rec = [&](auto&& self, std::size_t i, Coeff coeff) -> void {
    if (i == expanded.size()) {
      out += evaluate_raw(tree, n, pick).scaled(coeff);
      return;
    }
    for (const auto& [c, v] : expanded[i]) {
      pick.push_back(as_vertex(c));
      self(self, i + 1, checked_mul(coeff, v));
      pick.pop_back();
    }
  };
  rec(rec, 0, 1);
  return out;
}

RingElement evaluate_product(const RootedPlaneTree& tree, int n,
                             const std::vector<InteractionVertex>& generators) {
  return evaluate_raw(tree, n, generators);
}

RingElement multiply(const RootedPlaneTree& tree, int n, const RingElement& a,
                     const RingElement& b) {
  RingElement out;
  for (const auto& [ca, va] : a.terms()) {
    const auto fa = factorize_basis(tree, n, ca);
    for (const auto& [cb, vb] : b.terms()) {
      auto family = fa;
      const auto fb = factorize_basis(tree, n, cb);
      family.insert(family.end(), fb.begin(), fb.end());
      out += evaluate_raw(tree, n, family).scaled(checked_mul(va, vb));
    }
  }
  return out;
}

OrbitCochain product_cocycle_blocks(const AbramsModel& model,
                                    const std::vector<InteractionVertex>& factors,
                                    const Budget& budget) {
  const RootedPlaneTree& tree = model.tree();
  const int n = model.n();
  const InteractionParams params = interaction_params(tree, n, factors);
  if (classify(params) == Interaction::kNone) return {};
  std::vector<Vertex> xs;
  std::vector<int> rs;
  std::vector<Vertex> edges;
  for (const auto& f : factors) {
    xs.push_back(f.x);
    rs.push_back(f.r());
    edges.push_back(direction_vertex(tree, f.x, f.r() + 1));
  }
  const PrunedDecomposition d = pruned_decomposition(tree, xs, rs);
  std::vector<std::pair<std::vector<Vertex>, int>> pools;
  for (const Component& comp : d.components) {
    if (comp.owner == 0) {
      pools.emplace_back(comp.vertices, params.r0);
      continue;
    }
    const int i = comp.owner - 1;
    std::vector<Vertex> pool;
    for (Vertex v : comp.vertices) {
      if (v != edges[i]) pool.push_back(v);
    }
    const int r = factors[i].r();
    pools.emplace_back(std::move(pool),
                       comp.dir <= r ? params.p[i][comp.dir - 1] : params.q[i][comp.dir - 1 - r]);
  }
  return block_cocycle(model, edges, pools, budget);
}

std::vector<std::vector<Vertex>> interaction_levels(const RootedPlaneTree& tree,
                                                    const std::vector<Vertex>& essential) {
  const PrunedDecomposition d = pruned_decomposition(tree, essential);
  std::vector<std::vector<Vertex>> levels;
  std::vector<int> current = d.component(0, 1).leaves;
  while (!current.empty()) {
    std::sort(current.begin(), current.end());
    std::vector<Vertex> level;
    std::vector<int> next;
    for (int i : current) {
      level.push_back(essential[i - 1]);
      for (std::size_t c = d.offsets[i]; c < d.components.size() && d.components[c].owner == i;
           ++c) {
        next.insert(next.end(), d.components[c].leaves.begin(), d.components[c].leaves.end());
      }
    }
    levels.push_back(std::move(level));
    current = std::move(next);
  }
  return levels;
}

std::partial_ordering basis_preorder(const RootedPlaneTree& tree, const CriticalCell& a,
                                     const CriticalCell& b) {
  if (a.blocks.size() != b.blocks.size()) return std::partial_ordering::unordered;
  for (std::size_t i = 0; i < a.blocks.size(); ++i) {
    if (a.blocks[i].x != b.blocks[i].x || a.blocks[i].r() != b.blocks[i].r() ||
        a.blocks[i].s() != b.blocks[i].s()) {
      return std::partial_ordering::unordered;
    }
  }
  const auto xs = essential_of(a);
  std::vector<std::size_t> order;
  for (const auto& level : interaction_levels(tree, xs)) {
    for (Vertex x : level) {
      order.push_back(std::lower_bound(xs.begin(), xs.end(), x) - xs.begin());
    }
  }
  auto key = [&](const CriticalCell& c) {
    std::vector<int> k{c.k};
    for (std::size_t i : order) {
      k.insert(k.end(), c.blocks[i].p.begin(), c.blocks[i].p.end());
      k.insert(k.end(), c.blocks[i].q.begin(), c.blocks[i].q.end());
    }
    return k;
  };
  return key(a) <=> key(b);
}

CertificateReport exterior_face_ring_certificate(const RootedPlaneTree& tree, int n,
                                                 const Budget& budget) {
  if (!is_binary_core(tree)) throw DomainError("tree does not have binary core");
  if (!satisfies_binary_core_embedding(tree)) {
    throw DomainError("embedding has an essential vertex below direction d(x)-2; re-embed first");
  }
  CertificateReport rep;
  const auto& ess = tree.essential_vertices();
  std::map<Vertex, std::vector<InteractionVertex>> by_x;
  for (const auto& v : enumerate_vnt(tree, n)) by_x[v.x].push_back(v);

  auto fail = [&](const std::string& why) {
    if (rep.passed) rep.counterexample = why;
    rep.passed = false;
  };
  auto family_string = [](const std::vector<InteractionVertex>& f) {
    std::string s;
    for (const auto& v : f) s += to_string(v);
    return s;
  };

  std::size_t evaluated = 0;
  for (std::size_t m = 1; m <= ess.size(); ++m) {
    std::set<CriticalCell> leads;
    std::size_t strong = 0;
    std::vector<std::size_t> pick;
    std::vector<InteractionVertex> family;
    auto visit = [&]() {
      budget.charge(++evaluated, "binary-core certificate");
      std::vector<ChangedGenerator> gens;
      for (const auto& v : family) gens.push_back({v, true});
      RingElement product = evaluate_product(tree, n, gens);
      if (classify_interaction(tree, n, family) != Interaction::kStrong) {
        ++rep.nonstrong_checked;
        if (!product.empty()) {
          fail("non-strong product " + family_string(family) + " = " + to_string(product));
        }
        return;
      }
      ++strong;
      CriticalCell lead = multiply_strong(tree, n, family);
      if (!leads.insert(lead).second) fail("lead cell repeated: " + to_string(lead));
      if (product[lead] != 1) {
        fail("lead coefficient of " + family_string(family) + " is " +
             std::to_string(product[lead]));
      }
      for (const auto& [c, v] : product.terms()) {
        if (c != lead && basis_preorder(tree, c, lead) != std::partial_ordering::less) {
          fail("term " + to_string(c) + " of " + family_string(family) +
               " is not below the lead " + to_string(lead));
        }
      }
      rep.rows.push_back({family, std::move(lead), std::move(product)});
    };
    auto choose = [&](auto&& self, std::size_t from) -> void {
      if (pick.size() == m) {
        auto rec = [&](auto&& inner, std::size_t i) -> void {
          if (i == m) {
            visit();
            return;
          }
          for (const auto& v : by_x[ess[pick[i]]]) {
            family.push_back(v);
            inner(inner, i + 1);
            family.pop_back();
          }
        };
        rec(rec, 0);
        return;
      }
      for (std::size_t i = from; i < ess.size(); ++i) {
        pick.push_back(i);
        self(self, i + 1);
        pick.pop_back();
      }
    };
    choose(choose, 0);
    const auto basis = enumerate_critical(tree, n, static_cast<int>(m));
    rep.strong_counts.push_back(strong);
    rep.basis_counts.push_back(basis.size());
    if (std::set<CriticalCell>(basis.begin(), basis.end()) != leads) {
      fail("strong products in dimension " + std::to_string(m) + " do not match the basis (" +
           std::to_string(strong) + " products, " + std::to_string(basis.size()) + " cells)");
    }
  }
  return rep;
}

Presentation raag_presentation(const RootedPlaneTree& tree, int n) {
  for (Vertex x : tree.essential_vertices()) {
    if (tree.degree(x) != 3) {
      throw DomainError("tree is not linear binary: vertex " + std::to_string(x) + " has degree " +
                        std::to_string(tree.degree(x)));
    }
    const Vertex first = tree.children(x)[0];
    for (Vertex v = first; v < tree.subtree_end(first); ++v) {
      if (tree.is_essential(v)) {
        throw DomainError("tree is not linear binary: vertex " + std::to_string(x) +
                          " has an essential vertex in direction 1");
      }
    }
  }
  Presentation out;
  out.generators = enumerate_vnt(tree, n);
  const auto& g = out.generators;
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      if (g[i].x < g[j].x && g[i].q[0] + g[j].k >= n) out.commuting.emplace_back(i, j);
    }
  }
  return out;
}

}  // namespace treebraid
