#pragma once

#include <unordered_map>
#include <vector>

#include "treebraid/ring.hpp"

namespace treebraid {

// Products computed on cochains of UD_nT. Lifts of basis cells are cached.
class CubicalOracle {
 public:
  explicit CubicalOracle(GradientField& field) : field_(&field) {}

  GradientField& field() { return *field_; }
  const OrbitCochain& lift(const CriticalCell& c);
  OrbitCochain lift(const RingElement& e);

  // Lift every factor, cup in order, read back on critical cells.
  RingElement product(const std::vector<RingElement>& factors);
  RingElement product(const std::vector<ChangedGenerator>& generators);
  // Reads the block cocycle of factors ascending in x back on critical cells.
  RingElement blocks(const std::vector<InteractionVertex>& factors);

 private:
  GradientField* field_;
  std::unordered_map<OrbitCube, OrbitCochain, CubeHash> lifts_;
};

}  // namespace treebraid
