#include "treebraid/homology.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <set>
#include <unordered_map>

#include "treebraid/cube.hpp"

namespace treebraid {

namespace {

using BigInt = boost::multiprecision::cpp_int;

Coeff mul_sub(Coeff a, Coeff f, Coeff b) { return checked_add(a, -checked_mul(f, b)); }
BigInt mul_sub(const BigInt& a, const BigInt& f, const BigInt& b) { return a - f * b; }
bool is_unit(Coeff a) { return a == 1 || a == -1; }
bool is_unit(const BigInt& a) { return a == 1 || a == -1; }

std::vector<BigInt> dense_invariant_factors(std::vector<std::vector<BigInt>> a) {
  std::vector<BigInt> out;
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    // smallest nonzero magnitude in the trailing block
    auto find_pivot = [&](std::size_t& pr, std::size_t& pc) {
      bool found = false;
      BigInt best;
      for (std::size_t i = t; i < rows; ++i) {
        for (std::size_t j = t; j < cols; ++j) {
          if (a[i][j] == 0) continue;
          BigInt m = abs(a[i][j]);
          if (!found || m < best) {
            best = m;
            pr = i;
            pc = j;
            found = true;
          }
        }
      }
      return found;
    };
    std::size_t pr = 0, pc = 0;
    if (!find_pivot(pr, pc)) break;
    for (;;) {
      std::swap(a[t], a[pr]);
      for (auto& row : a) std::swap(row[t], row[pc]);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        BigInt q = a[i][t] / a[t][t];
        for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        BigInt q = a[t][j] / a[t][t];
        for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) clean = false;
      }
      if (clean) {
        // divisibility of the trailing block
        bool divides = true;
        for (std::size_t i = t + 1; i < rows && divides; ++i) {
          for (std::size_t j = t + 1; j < cols; ++j) {
            if (a[i][j] % a[t][t] != 0) {
              for (std::size_t k = t; k < cols; ++k) a[t][k] += a[i][k];
              divides = false;
              break;
            }
          }
        }
        if (divides) break;
      }
      // restart with the smallest entry in row/column t
      pr = t;
      pc = t;
      BigInt best = abs(a[t][t]);
      for (std::size_t i = t; i < rows; ++i) {
        if (a[i][t] != 0 && abs(a[i][t]) < best) {
          best = abs(a[i][t]);
          pr = i;
          pc = t;
        }
      }
      for (std::size_t j = t; j < cols; ++j) {
        if (a[t][j] != 0 && abs(a[t][j]) < best) {
          best = abs(a[t][j]);
          pr = t;
          pc = j;
        }
      }
    }
    out.push_back(abs(a[t][t]));
  }
  return out;
}

template <class T>
SmithSummary eliminate(const SparseMatrix& m) {
  std::vector<std::map<std::size_t, T>> row(m.rows);
  std::vector<std::set<std::size_t>> col_rows(m.cols);
  for (std::size_t c = 0; c < m.cols; ++c) {
    for (const auto& [r, v] : m.columns[c]) {
      if (v == 0) continue;
      row[r][c] += T(v);
      col_rows[c].insert(r);
    }
  }
  SmithSummary out;
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t c = 0; c < m.cols; ++c) {
      if (col_rows[c].empty()) continue;
      std::size_t best = m.rows;
      for (std::size_t r : col_rows[c]) {
        if (is_unit(row[r].at(c)) && (best == m.rows || row[r].size() < row[best].size())) best = r;
      }
      if (best == m.rows) continue;
      const T u = row[best].at(c);
      const auto pivot_row = row[best];
      std::vector<std::size_t> others(col_rows[c].begin(), col_rows[c].end());
      for (std::size_t r : others) {
        if (r == best) continue;
        const T f = row[r].at(c) * u;
        for (const auto& [j, v] : pivot_row) {
          T nv = mul_sub(row[r].count(j) ? row[r][j] : T(0), f, v);
          if (nv == 0) {
            row[r].erase(j);
            col_rows[j].erase(r);
          } else {
            row[r][j] = nv;
            col_rows[j].insert(r);
          }
        }
      }
      for (const auto& [j, v] : pivot_row) col_rows[j].erase(best);
      row[best].clear();
      ++out.rank;
      progress = true;
    }
  }
  // dense remainder
  std::vector<std::size_t> live_rows, live_cols;
  for (std::size_t r = 0; r < m.rows; ++r) {
    if (!row[r].empty()) live_rows.push_back(r);
  }
  for (std::size_t c = 0; c < m.cols; ++c) {
    if (!col_rows[c].empty()) live_cols.push_back(c);
  }
  if (live_rows.empty()) return out;
  std::unordered_map<std::size_t, std::size_t> col_index;
  for (std::size_t j = 0; j < live_cols.size(); ++j) col_index[live_cols[j]] = j;
  std::vector<std::vector<BigInt>> dense(live_rows.size(), std::vector<BigInt>(live_cols.size()));
  for (std::size_t i = 0; i < live_rows.size(); ++i) {
    for (const auto& [j, v] : row[live_rows[i]]) dense[i][col_index.at(j)] = BigInt(v);
  }
  for (const auto& f : dense_invariant_factors(std::move(dense))) {
    ++out.rank;
    if (f != 1) out.torsion.push_back(f.str());
  }
  std::sort(out.torsion.begin(), out.torsion.end(), [](const std::string& a, const std::string& b) {
    return BigInt(a) < BigInt(b);
  });
  return out;
}

template <class Cube>
std::vector<std::vector<Cube>> all_cells(const AbramsModel& model, Model kind,
                                         const Budget& budget) {
  std::vector<std::vector<Cube>> cells;
  std::size_t total = 0;
  for (int d = 0; d <= model.top_dimension(); ++d) {
    if constexpr (std::is_same_v<Cube, OrbitCube>) {
      cells.push_back(model.enumerate(d, budget));
    } else {
      (void)kind;
      cells.push_back(model.enumerate_ordered(d, budget));
    }
    total += cells.back().size();
    budget.charge(total, "cohomology oracle");
  }
  return cells;
}

template <class Cube>
CohomologyReport cohomology_of(const AbramsModel& model, Model kind, const Budget& budget) {
  auto cells = all_cells<Cube>(model, kind, budget);
  const std::size_t top = cells.size();
  CohomologyReport rep;
  std::vector<SmithSummary> snf(top + 1);  // snf[m] for the boundary C_m -> C_{m-1}
  for (std::size_t m = 1; m < top; ++m) {
    std::unordered_map<Cube, std::size_t, CubeHash> index;
    for (std::size_t i = 0; i < cells[m - 1].size(); ++i) index.emplace(cells[m - 1][i], i);
    SparseMatrix mat;
    mat.rows = cells[m - 1].size();
    mat.cols = cells[m].size();
    mat.columns.resize(mat.cols);
    for (std::size_t j = 0; j < mat.cols; ++j) {
      if constexpr (std::is_same_v<Cube, OrbitCube>) {
        for (const auto& [f, s] : model.boundary(cells[m][j])) mat.columns[j].emplace_back(index.at(f), s);
      } else {
        for (const auto& [f, s] : model.boundary(cells[m][j], Orientation::kGradient)) {
          mat.columns[j].emplace_back(index.at(f), s);
        }
      }
    }
    snf[m] = smith_normal_form(mat);
  }
  for (std::size_t m = 0; m < top; ++m) {
    rep.cells.push_back(cells[m].size());
    rep.betti.push_back(cells[m].size() - snf[m].rank - snf[m + 1].rank);
    rep.torsion.push_back(snf[m].torsion);
  }
  return rep;
}

}  // namespace

SmithSummary smith_normal_form(const SparseMatrix& m) {
  try {
    return eliminate<Coeff>(m);
  } catch (const std::overflow_error&) {
    return eliminate<BigInt>(m);
  }
}

bool CohomologyReport::torsion_free() const {
  return std::all_of(torsion.begin(), torsion.end(), [](const auto& t) { return t.empty(); });
}

CohomologyReport integral_cohomology(const RootedPlaneTree& tree, int n, Model model,
                                     const Budget& budget) {
  AbramsModel am(tree, n);
  if (model == Model::kUnordered) return cohomology_of<OrbitCube>(am, model, budget);
  return cohomology_of<ConfCube>(am, model, budget);
}

}  // namespace treebraid
