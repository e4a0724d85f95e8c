#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <functional>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "treebraid/common.hpp"
#include "treebraid/tree.hpp"

namespace treebraid {

inline constexpr int kMaxStrands = 16;

// A vertex v, or the edge e_v = (parent(v), v). Either way the ordinal is v.
struct Ingredient {
  Vertex v = 0;
  bool edge = false;

  std::uint16_t code() const { return static_cast<std::uint16_t>(v << 1 | (edge ? 1 : 0)); }
  static Ingredient from_code(std::uint16_t c) { return {static_cast<Vertex>(c >> 1), (c & 1) != 0}; }
  auto operator<=>(const Ingredient&) const = default;
};

// Fixed-capacity ingredient tuple shared by ordered and orbit cubes.
class IngredientTuple {
 public:
  IngredientTuple() = default;
  explicit IngredientTuple(const std::vector<Ingredient>& items);

  int size() const { return size_; }
  Ingredient operator[](int i) const { return Ingredient::from_code(code_[i]); }
  void set(int i, Ingredient a) { code_[i] = a.code(); }
  int dim() const;
  std::vector<Ingredient> items() const;
  std::size_t hash() const;

  bool operator==(const IngredientTuple& o) const = default;
  auto operator<=>(const IngredientTuple& o) const = default;

 protected:
  std::uint8_t size_ = 0;
  std::array<std::uint16_t, kMaxStrands> code_{};
};

// A cell of D_nT: ingredients in coordinate order.
class ConfCube : public IngredientTuple {
 public:
  using IngredientTuple::IngredientTuple;
};

// A cell of UD_nT: ingredients sorted by ordinal.
class OrbitCube : public IngredientTuple {
 public:
  OrbitCube() = default;
  explicit OrbitCube(std::vector<Ingredient> items);  // sorts
  explicit OrbitCube(const ConfCube& c);
  ConfCube as_conf() const;
  // same orbit cube with position i replaced, re-sorted
  OrbitCube replaced(int i, Ingredient a) const;
};

struct CubeHash {
  std::size_t operator()(const IngredientTuple& c) const { return c.hash(); }
};

enum class Orientation { kProduct, kGradient };

// Finitely supported integer cochain; zero entries are never stored.
template <class Cell>
class CochainVec {
 public:
  using Map = std::unordered_map<Cell, Coeff, CubeHash>;

  void add(const Cell& c, Coeff v) {
    if (v == 0) return;
    auto [it, fresh] = map_.try_emplace(c, v);
    if (!fresh) {
      it->second = checked_add(it->second, v);
      if (it->second == 0) map_.erase(it);
    }
  }
  Coeff operator[](const Cell& c) const {
    auto it = map_.find(c);
    return it == map_.end() ? 0 : it->second;
  }
  std::size_t size() const { return map_.size(); }
  bool empty() const { return map_.empty(); }
  auto begin() const { return map_.begin(); }
  auto end() const { return map_.end(); }
  std::vector<std::pair<Cell, Coeff>> sorted() const {
    std::vector<std::pair<Cell, Coeff>> out(map_.begin(), map_.end());
    std::sort(out.begin(), out.end());
    return out;
  }
  CochainVec scaled(Coeff s) const {
    CochainVec out;
    for (const auto& [c, v] : map_) out.add(c, checked_mul(v, s));
    return out;
  }
  bool operator==(const CochainVec& o) const { return map_ == o.map_; }

 private:
  Map map_;
};

using OrbitCochain = CochainVec<OrbitCube>;
using ConfCochain = CochainVec<ConfCube>;

// Signed face or coface.
template <class Cell>
struct Incidence {
  Cell cell;
  int sign;
};

// Cube-level operations of D_nT and UD_nT over a fixed tree.
class AbramsModel {
 public:
  AbramsModel(const RootedPlaneTree& tree, int n);

  const RootedPlaneTree& tree() const { return *tree_; }
  int n() const { return n_; }

  bool is_cell(const IngredientTuple& c) const;
  std::vector<OrbitCube> enumerate(int dim, const Budget& budget = {}) const;
  std::vector<ConfCube> enumerate_ordered(int dim, const Budget& budget = {}) const;
  int top_dimension() const;

  // Gradient order ranks edges by their lower endpoint.
  std::vector<Incidence<OrbitCube>> boundary(const OrbitCube& c) const;
  std::vector<Incidence<ConfCube>> boundary(const ConfCube& c, Orientation o) const;
  std::vector<Incidence<OrbitCube>> cofaces(const OrbitCube& c) const;
  // coefficient of `face` in the (gradient) boundary of `cube`
  int incidence(const OrbitCube& face, const OrbitCube& cube) const;

  // +1 or -1: gradient-oriented cube = sign * product-oriented cube.
  int orientation_sign(const ConfCube& c) const;

  OrbitCochain coboundary(const OrbitCochain& f) const;
  ConfCochain coboundary(const ConfCochain& f, Orientation o) const;

  // Cup product of duals of ordered cubes; both inputs and the output use
  // orientation o. Returns nullopt when the product vanishes.
  std::optional<std::pair<int, ConfCube>> cup(const ConfCube& c, const ConfCube& d,
                                              Orientation o) const;
  ConfCochain cup(const ConfCochain& a, const ConfCochain& b, Orientation o) const;
  // The unique w with pi*(w) = pi*(a) cup pi*(b) under gradient orientation.
  OrbitCochain cup(const OrbitCochain& a, const OrbitCochain& b) const;

  ConfCochain pi_star(const OrbitCochain& f) const;

  // Test fixture: a cup product on orbit cochains that skips the orientation
  // conversion, so it is wrong under gradient orientation.
  OrbitCochain cup_without_conversion(const OrbitCochain& a, const OrbitCochain& b) const;

 private:
  OrbitCochain cup_impl(const OrbitCochain& a, const OrbitCochain& b, bool convert) const;
  int gradient_rank_sign(const IngredientTuple& c, Vertex edge_child) const;

  const RootedPlaneTree* tree_;
  int n_;
};

// Closure of an ingredient: {v} or {parent(v), v}.
bool closures_meet(const RootedPlaneTree& tree, Ingredient a, Ingredient b);

}  // namespace treebraid
