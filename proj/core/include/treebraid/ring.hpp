#pragma once

#include <compare>
#include <string>
#include <utility>
#include <vector>

#include "treebraid/interaction.hpp"

namespace treebraid {

using RingElement = MorseCochain;

// A degree-1 generator, optionally read in the changed basis. The change only
// takes effect when p_1 = ... = p_{r-1} = 0 and s = 1.
struct ChangedGenerator {
  InteractionVertex v;
  bool rebased = false;
};

bool rebasing_applies(const InteractionVertex& v);
// The generator as a combination of 1-dimensional basis cells.
RingElement expand(const ChangedGenerator& g);

RingElement unit(int n);

// The unique family of generators whose strong product is the cell.
std::vector<InteractionVertex> factorize_basis(const RootedPlaneTree& tree, int n,
                                               const CriticalCell& cell);

// Requires a strongly interacting family ascending in x.
CriticalCell multiply_strong(const RootedPlaneTree& tree, int n,
                             const std::vector<InteractionVertex>& factors);

// The three sums of the weak product formula, signs included: the sum over a
// alone, then the sums over (l,a,b) with Q_x^(l,+) and with Q_x^(l,-).
struct WeakSums {
  RingElement over_a;
  RingElement over_plus;
  RingElement over_minus;
};
WeakSums weak_product_sums(const RootedPlaneTree& tree, int n, const InteractionVertex& gen,
                           const CriticalCell& pi1);

// gen * pi1 for a weakly interacting family; gen.x must be below every vertex of pi1.
RingElement multiply_weak(const RootedPlaneTree& tree, int n, const InteractionVertex& gen,
                          const CriticalCell& pi1);

// gen * cell for any gen below every vertex of the cell, dispatched on the
// interaction type of the combined family.
RingElement multiply_onto(const RootedPlaneTree& tree, int n, const InteractionVertex& gen,
                          const CriticalCell& cell);

// Product of generators in the given order.
RingElement evaluate_product(const RootedPlaneTree& tree, int n,
                             const std::vector<ChangedGenerator>& generators);
RingElement evaluate_product(const RootedPlaneTree& tree, int n,
                             const std::vector<InteractionVertex>& generators);

// Product of arbitrary elements: basis cells are factorized into generators
// and the concatenated family is evaluated.
RingElement multiply(const RootedPlaneTree& tree, int n, const RingElement& a,
                     const RingElement& b);

// Gradient-oriented block cocycle representing the product of factors
// ascending in x; zero when the factors do not interact.
OrbitCochain product_cocycle_blocks(const AbramsModel& model,
                                    const std::vector<InteractionVertex>& factors,
                                    const Budget& budget = {});

// Levels of pruned leaves; level l+1 collects the leaves of all positive
// directions at vertices of level l. Trailing empty levels are dropped.
std::vector<std::vector<Vertex>> interaction_levels(const RootedPlaneTree& tree,
                                                    const std::vector<Vertex>& essential);

// Level-wise lexicographic comparison of the stack sizes. Cells on different
// essential vertices or splits are unordered.
std::partial_ordering basis_preorder(const RootedPlaneTree& tree, const CriticalCell& a,
                                     const CriticalCell& b);

struct CertificateRow {
  std::vector<InteractionVertex> factors;
  CriticalCell lead;
  RingElement product;
};

struct CertificateReport {
  bool passed = true;
  std::vector<CertificateRow> rows;    // strong products and their expansions
  std::size_t nonstrong_checked = 0;   // non-strong products evaluated to zero
  std::vector<std::size_t> strong_counts;  // per dimension m >= 1
  std::vector<std::size_t> basis_counts;   // critical m-cells
  std::string counterexample;
};

// Requires a binary-core tree embedded so that no x-direction below d(x)-2
// carries an essential vertex.
CertificateReport exterior_face_ring_certificate(const RootedPlaneTree& tree, int n,
                                                 const Budget& budget = {});

struct Presentation {
  std::vector<InteractionVertex> generators;
  std::vector<std::pair<std::size_t, std::size_t>> commuting;  // indices, first < second
};

// Requires a linear binary tree: every essential vertex of degree 3 with no
// essential vertex in direction 1.
Presentation raag_presentation(const RootedPlaneTree& tree, int n);

}  // namespace treebraid
