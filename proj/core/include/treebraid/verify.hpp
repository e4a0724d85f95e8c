#pragma once

#include <string>
#include <vector>

#include "treebraid/common.hpp"
#include "treebraid/tree.hpp"

namespace treebraid {

struct VerifyOptions {
  bool cubical = true;  // compare products with the cubical oracle
  bool blocks = true;   // compare products with the block cocycles
  int max_factors = 3;
  std::size_t leibniz_pairs = 20000;  // all pairs when fewer, else a fixed sample
  Budget budget;
  double soft_seconds = 60;  // checks running longer are flagged in their detail
  // Negative control: multiply orbit cochains without the orientation signs.
  bool corrupt_cup_signs = false;
};

enum class CheckStatus { kPass, kFail, kSkipped, kBudgetExceeded };
std::string to_string(CheckStatus s);

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::kPass;
  std::string detail;  // summary on success, counterexample on failure
  double seconds = 0;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool passed() const;
  bool budget_exceeded() const;
  int exit_code() const;  // 0 pass, 2 budget exceeded, 3 failure
};

// Runs, in order: boundary_squared, leibniz, morse_coboundary, critical_count,
// torsion_free, factorization, trichotomy, product_oracle,
// binary_core_certificate. The tree must be n-sufficient. Stops after a check
// runs out of budget.
VerifyReport verify(const RootedPlaneTree& tree, int n, const VerifyOptions& options = {});

}  // namespace treebraid
