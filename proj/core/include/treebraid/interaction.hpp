#pragma once

#include <compare>
#include <string>
#include <vector>

#include "treebraid/morse.hpp"
#include "treebraid/tree.hpp"

namespace treebraid {

// <k,x,p,q>: a vertex of K_nT and a degree-1 generator.
struct InteractionVertex {
  int k = 0;
  Vertex x = 0;
  std::vector<int> p;
  std::vector<int> q;

  int r() const { return static_cast<int>(p.size()); }
  int s() const { return static_cast<int>(q.size()); }
  auto operator<=>(const InteractionVertex&) const = default;
};

std::string to_string(const InteractionVertex& v);
void validate(const RootedPlaneTree& tree, int n, const InteractionVertex& v);
CriticalCell as_cell(const InteractionVertex& v);
InteractionVertex as_vertex(const CriticalCell& c);  // c must be 1-dimensional

// Sorted by x, then by the remaining fields.
std::vector<InteractionVertex> enumerate_vnt(const RootedPlaneTree& tree, int n);

// C-local information of factors[j] for the component with index c of the
// decomposition built from the factors' essential vertices.
int local_information(const PrunedDecomposition& d, const std::vector<InteractionVertex>& factors,
                      std::size_t j, std::size_t c);

// Every local inequality holds (strictness not required).
bool local_inequalities_hold(const RootedPlaneTree& tree, int n,
                             std::vector<InteractionVertex> factors);
// Face test of K_nT evaluated from local information. Order of the input does
// not matter; repeated essential vertices never form a face.
bool is_face(const RootedPlaneTree& tree, int n, std::vector<InteractionVertex> factors);

struct InteractionParams {
  int r0 = 0;
  std::vector<std::vector<int>> p;
  std::vector<std::vector<int>> q;
};

// Factors must ascend strictly in x.
InteractionParams interaction_params(const RootedPlaneTree& tree, int n,
                                     const std::vector<InteractionVertex>& factors);

enum class Interaction { kStrong, kWeak, kNone };
std::string to_string(Interaction i);

// Strong requires a positive P-entry for every factor.
Interaction classify(const InteractionParams& params);
Interaction classify_interaction(const RootedPlaneTree& tree, int n,
                                 const std::vector<InteractionVertex>& factors);

using Face = std::vector<InteractionVertex>;  // ascending x

// faces[d] lists the d-dimensional faces, d = 0..up_to_dim (or all when negative).
std::vector<std::vector<Face>> knt_faces(const RootedPlaneTree& tree, int n, int up_to_dim = -1,
                                         const Budget& budget = {});
std::vector<std::size_t> f_vector(const RootedPlaneTree& tree, int n, const Budget& budget = {});
bool is_flag(const RootedPlaneTree& tree, int n, const Budget& budget = {});

}  // namespace treebraid
