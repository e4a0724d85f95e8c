#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "treebraid/cube.hpp"

namespace treebraid {

enum class IngredientState { kBlocked, kUnblocked, kOrderRespecting, kOrderDisrespectful };

IngredientState ingredient_status(const RootedPlaneTree& tree, const IngredientTuple& cube, int pos);

enum class CellKind { kCritical, kRedundant, kCollapsible };

struct CellStatus {
  CellKind kind = CellKind::kCritical;
  OrbitCube partner;  // meaningful unless critical
};

// Farley–Sabalka classification. A redundant cell is paired with the cell one
// dimension up, a collapsible one with the cell one dimension down.
CellStatus fs_status(const RootedPlaneTree& tree, const OrbitCube& cube);

struct Block {
  Vertex x = 0;
  std::vector<int> p;  // stacks in x-directions 1..r
  std::vector<int> q;  // stacks in x-directions r+1..d(x)-1

  int r() const { return static_cast<int>(p.size()); }
  int s() const { return static_cast<int>(q.size()); }
  auto operator<=>(const Block&) const = default;
};

// Normal form {k | x_1,p_1,q_1 | ... | x_m,p_m,q_m} of a critical cell.
struct CriticalCell {
  int k = 0;
  std::vector<Block> blocks;

  int dim() const { return static_cast<int>(blocks.size()); }
  auto operator<=>(const CriticalCell&) const = default;
};

std::string to_string(const CriticalCell& c);
// Throws DomainError describing the first violated constraint.
void validate(const RootedPlaneTree& tree, int n, const CriticalCell& c);

std::vector<CriticalCell> enumerate_critical(const RootedPlaneTree& tree, int n, int m);
OrbitCube to_orbit_cube(const RootedPlaneTree& tree, int n, const CriticalCell& c);
// Normal form of a critical cube; nullopt when the cube is not critical.
std::optional<CriticalCell> critical_form(const RootedPlaneTree& tree, const OrbitCube& cube);

// Integer combination of critical cells; also the element type of the ring.
class MorseCochain {
 public:
  MorseCochain() = default;
  explicit MorseCochain(const CriticalCell& c, Coeff v = 1) { add(c, v); }

  void add(const CriticalCell& c, Coeff v);
  MorseCochain& operator+=(const MorseCochain& o);
  MorseCochain scaled(Coeff s) const;
  Coeff operator[](const CriticalCell& c) const;
  const std::map<CriticalCell, Coeff>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  // coefficients reduced into [0, p), zeros dropped; p = 0 is the identity
  MorseCochain reduced_mod(Coeff p) const;
  bool operator==(const MorseCochain&) const = default;

 private:
  std::map<CriticalCell, Coeff> terms_;
};

std::string to_string(const MorseCochain& m);

// Memoized gradient field over one Abrams model.
class GradientField {
 public:
  explicit GradientField(const AbramsModel& model, Budget budget = {});

  const AbramsModel& model() const { return *model_; }
  const Budget& budget() const { return budget_; }
  const CellStatus& status(const OrbitCube& c);

 private:
  const AbramsModel* model_;
  Budget budget_;
  std::unordered_map<OrbitCube, CellStatus, CubeHash> memo_;
};

// Sum over upper gradient paths ending at the given critical cells.
OrbitCochain phi_bar(GradientField& field, const MorseCochain& m);
// Sum over lower gradient paths starting at critical cells.
MorseCochain phi_under(GradientField& field, const OrbitCochain& z);
MorseCochain morse_coboundary(GradientField& field, const CriticalCell& c);

// Sum of cubes with the given edges and, for every pool, every choice of the
// requested number of vertices from it; all coefficients +1.
OrbitCochain block_cocycle(const AbramsModel& model, const std::vector<Vertex>& edge_children,
                           const std::vector<std::pair<std::vector<Vertex>, int>>& pools,
                           const Budget& budget = {});

// Closed-form representative of the class dual to a critical 1-cell.
OrbitCochain cocycle_rep_1dim(const AbramsModel& model, const CriticalCell& generator,
                              const Budget& budget = {});

}  // namespace treebraid
