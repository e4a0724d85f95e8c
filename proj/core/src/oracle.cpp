#include "treebraid/oracle.hpp"

namespace treebraid {

const OrbitCochain& CubicalOracle::lift(const CriticalCell& c) {
  const AbramsModel& model = field_->model();
  OrbitCube key = to_orbit_cube(model.tree(), model.n(), c);
  auto it = lifts_.find(key);
  if (it == lifts_.end()) it = lifts_.emplace(key, phi_bar(*field_, MorseCochain(c))).first;
  return it->second;
}

OrbitCochain CubicalOracle::lift(const RingElement& e) {
  OrbitCochain out;
  for (const auto& [c, v] : e.terms()) {
    for (const auto& [cube, w] : lift(c)) out.add(cube, checked_mul(v, w));
  }
  return out;
}

RingElement CubicalOracle::product(const std::vector<RingElement>& factors) {
  const AbramsModel& model = field_->model();
  if (factors.empty()) return unit(model.n());
  OrbitCochain acc = lift(factors.front());
  for (std::size_t i = 1; i < factors.size() && !acc.empty(); ++i) {
    acc = model.cup(acc, lift(factors[i]));
  }
  return phi_under(*field_, acc);
}

RingElement CubicalOracle::product(const std::vector<ChangedGenerator>& generators) {
  std::vector<RingElement> factors;
  for (const auto& g : generators) {
    validate(field_->model().tree(), field_->model().n(), g.v);
    factors.push_back(expand(g));
  }
  return product(factors);
}

RingElement CubicalOracle::blocks(const std::vector<InteractionVertex>& factors) {
  if (factors.empty()) return unit(field_->model().n());
  return phi_under(*field_, product_cocycle_blocks(field_->model(), factors, field_->budget()));
}

}  // namespace treebraid
