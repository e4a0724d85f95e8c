#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace treebraid {

using Vertex = std::uint32_t;
using Coeff = std::int64_t;

// Invalid input for the requested computation (bad tree, bad generator, ...).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, std::size_t estimate)
      : std::runtime_error(what), estimate_(estimate) {}
  std::size_t estimate() const { return estimate_; }

 private:
  std::size_t estimate_;
};

// Upper bound on the number of cells a single computation may touch.
struct Budget {
  static constexpr std::size_t kDefaultCells = 1'000'000;
  std::size_t cells = kDefaultCells;

  void charge(std::size_t used, const char* what) const {
    if (used > cells) {
      throw BudgetExceeded(std::string(what) + ": cell budget of " +
                               std::to_string(cells) + " exceeded",
                           used);
    }
  }
};

// Coefficients are exact; overflow is reported instead of wrapping.
inline Coeff checked_add(Coeff a, Coeff b) {
  Coeff r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("coefficient overflow");
  return r;
}

inline Coeff checked_mul(Coeff a, Coeff b) {
  Coeff r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("coefficient overflow");
  return r;
}

}  // namespace treebraid
