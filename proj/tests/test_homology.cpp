#include <gtest/gtest.h>

#include "brute.hpp"
#include "fixtures.hpp"
#include "treebraid/homology.hpp"

using namespace treebraid;
using treebraid::testing::prepare;

namespace {

std::vector<std::size_t> trimmed(std::vector<std::size_t> v) {
  while (v.size() > 1 && v.back() == 0) v.pop_back();
  return v;
}

SparseMatrix dense(const std::vector<std::vector<Coeff>>& rows) {
  SparseMatrix m;
  m.rows = rows.size();
  m.cols = rows.empty() ? 0 : rows[0].size();
  m.columns.resize(m.cols);
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) {
      if (rows[i][j] != 0) m.columns[j].push_back({i, rows[i][j]});
    }
  }
  return m;
}

}  // namespace

TEST(Smith, SmallMatrices) {
  auto s = smith_normal_form(dense({{2, 0}, {0, 3}}));
  EXPECT_EQ(s.rank, 2u);
  EXPECT_EQ(s.torsion, (std::vector<std::string>{"6"}));
  s = smith_normal_form(dense({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}));
  EXPECT_EQ(s.rank, 3u);
  EXPECT_EQ(s.torsion, (std::vector<std::string>{"2", "6", "12"}));
  s = smith_normal_form(dense({{1, 2}, {2, 4}}));
  EXPECT_EQ(s.rank, 1u);
  EXPECT_TRUE(s.torsion.empty());
}

TEST(Smith, LargeEntriesStayExact) {
  const Coeff big = Coeff{1} << 40;
  auto s = smith_normal_form(dense({{big, big + 1}, {big + 1, big}}));
  EXPECT_EQ(s.rank, 2u);
  // determinant -(2 big + 1), gcd of entries 1
  EXPECT_EQ(s.torsion, (std::vector<std::string>{std::to_string(2 * big + 1)}));
}

TEST(Cohomology, MinimalY) {
  auto rep = integral_cohomology(prepare("y", 2).tree, 2);
  EXPECT_EQ(rep.betti, (std::vector<std::size_t>{1, 1}));
  EXPECT_TRUE(rep.torsion_free());
}

TEST(Cohomology, PathIsConnectedAndAcyclic) {
  auto lt = parse_tree("root 0\n0: 1\n1: 2\n2: 3\n");
  for (int n = 1; n <= 3; ++n) {
    auto rep = integral_cohomology(treebraid::testing::prepare(lt, n).tree, n);
    EXPECT_EQ(trimmed(rep.betti), (std::vector<std::size_t>{1})) << n;
    EXPECT_TRUE(rep.torsion_free());
  }
}

TEST(Cohomology, AgreesWithBruteForceOverSeveralPrimes) {
  for (auto [name, n] : std::vector<std::pair<const char*, int>>{
           {"y", 2}, {"y", 3}, {"linear2", 3}, {"t0", 3}, {"caterpillar_binary", 3}, {"caterpillar_deg4", 3}}) {
    auto inst = prepare(name, n);
    auto rep = integral_cohomology(inst.tree, n);
    EXPECT_TRUE(rep.torsion_free()) << name;
    for (std::int64_t p : {2, 3, 10007}) {
      EXPECT_EQ(trimmed(rep.betti), trimmed(treebraid::testing::brute_betti_mod_p(inst.tree, n, p)))
          << name << " n=" << n << " p=" << p;
    }
    long long chi = 0;
    for (std::size_t d = 0; d < rep.betti.size(); ++d) {
      chi += (d % 2 == 0 ? 1 : -1) * static_cast<long long>(rep.betti[d]);
    }
    EXPECT_EQ(chi, treebraid::testing::brute_euler_characteristic(inst.tree, n)) << name;
  }
}

TEST(Cohomology, OrderedModelEulerCharacteristic) {
  auto inst = prepare("y", 3);
  auto ordered = integral_cohomology(inst.tree, 3, Model::kOrdered);
  long long chi = 0;
  for (std::size_t d = 0; d < ordered.betti.size(); ++d) {
    chi += (d % 2 == 0 ? 1 : -1) * static_cast<long long>(ordered.betti[d]);
  }
  EXPECT_EQ(chi, 6 * treebraid::testing::brute_euler_characteristic(inst.tree, 3));
  EXPECT_TRUE(ordered.torsion_free());
}
