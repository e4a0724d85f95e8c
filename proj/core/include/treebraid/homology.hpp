#pragma once

#include <string>
#include <utility>
#include <vector>

#include "treebraid/common.hpp"
#include "treebraid/tree.hpp"

namespace treebraid {

struct SparseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::vector<std::pair<std::size_t, Coeff>>> columns;  // (row, value)
};

struct SmithSummary {
  std::size_t rank = 0;
  std::vector<std::string> torsion;  // invariant factors > 1, ascending, decimal
};

// Exact over the integers: unit-pivot sparse elimination, then a dense Smith
// normal form of whatever is left, in arbitrary precision.
SmithSummary smith_normal_form(const SparseMatrix& m);

enum class Model { kUnordered, kOrdered };

struct CohomologyReport {
  std::vector<std::size_t> cells;                 // per dimension
  std::vector<std::size_t> betti;                 // rank H^m
  std::vector<std::vector<std::string>> torsion;  // torsion of H^m
  bool torsion_free() const;
};

CohomologyReport integral_cohomology(const RootedPlaneTree& tree, int n,
                                     Model model = Model::kUnordered,
                                     const Budget& budget = {});

}  // namespace treebraid
