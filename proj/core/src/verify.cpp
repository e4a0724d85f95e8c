#include "treebraid/verify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "treebraid/homology.hpp"
#include "treebraid/oracle.hpp"

namespace treebraid {

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::kPass:
      return "pass";
    case CheckStatus::kFail:
      return "fail";
    case CheckStatus::kSkipped:
      return "skipped";
    default:
      return "budget_exceeded";
  }
}

bool VerifyReport::passed() const {
  return std::none_of(checks.begin(), checks.end(), [](const CheckResult& c) {
    return c.status == CheckStatus::kFail || c.status == CheckStatus::kBudgetExceeded;
  });
}

bool VerifyReport::budget_exceeded() const {
  return std::any_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.status == CheckStatus::kBudgetExceeded; });
}

int VerifyReport::exit_code() const {
  for (const auto& c : checks) {
    if (c.status == CheckStatus::kFail) return 3;
  }
  return budget_exceeded() ? 2 : 0;
}

namespace {

std::string cube_string(const IngredientTuple& c) {
  std::ostringstream out;
  out << '{';
  for (int i = 0; i < c.size(); ++i) {
    Ingredient a = c[i];
    out << (i ? "," : "") << (a.edge ? "e" : "") << a.v;
  }
  out << '}';
  return out.str();
}

std::string family_string(const std::vector<InteractionVertex>& f) {
  std::string s;
  for (const auto& v : f) s += to_string(v);
  return s;
}

struct Context {
  const RootedPlaneTree& tree;
  int n;
  const VerifyOptions& options;
  AbramsModel model;
  GradientField field;
  std::vector<std::vector<OrbitCube>> cells;

  Context(const RootedPlaneTree& t, int n_, const VerifyOptions& o)
      : tree(t), n(n_), options(o), model(t, n_), field(model, o.budget) {}

  const std::vector<std::vector<OrbitCube>>& all_cells() {
    if (cells.empty()) {
      std::size_t total = 0;
      for (int d = 0; d <= model.top_dimension(); ++d) {
        cells.push_back(model.enumerate(d, options.budget));
        total += cells.back().size();
        options.budget.charge(total, "cell enumeration");
      }
    }
    return cells;
  }
};

// Returns a counterexample, or an empty string with `summary` filled in.
using Check = std::function<std::string(Context&, std::string& summary)>;

std::string check_boundary_squared(Context& ctx, std::string& summary) {
  std::size_t checked = 0;
  const auto& cells = ctx.all_cells();
  for (std::size_t d = 2; d < cells.size(); ++d) {
    for (const auto& c : cells[d]) {
      OrbitCochain dd;
      for (const auto& [f, s] : ctx.model.boundary(c)) {
        for (const auto& [g, t] : ctx.model.boundary(f)) dd.add(g, s * t);
      }
      if (!dd.empty()) return "boundary of boundary of " + cube_string(c) + " is nonzero";
      ++checked;
      for (Orientation o : {Orientation::kProduct, Orientation::kGradient}) {
        ConfCochain odd;
        for (const auto& [f, s] : ctx.model.boundary(c.as_conf(), o)) {
          for (const auto& [g, t] : ctx.model.boundary(f, o)) odd.add(g, s * t);
        }
        if (!odd.empty()) return "ordered boundary of boundary of " + cube_string(c) + " is nonzero";
      }
    }
  }
  summary = std::to_string(checked) + " cells of dimension >= 2";
  return {};
}

std::string check_leibniz(Context& ctx, std::string& summary) {
  const auto& cells = ctx.all_cells();
  const AbramsModel& model = ctx.model;
  auto cup = [&](const OrbitCochain& a, const OrbitCochain& b) {
    return ctx.options.corrupt_cup_signs ? model.cup_without_conversion(a, b) : model.cup(a, b);
  };
  std::vector<std::pair<const OrbitCube*, const OrbitCube*>> pairs;
  std::size_t total = 0;
  const std::size_t top = cells.size() - 1;
  for (std::size_t a = 0; a < cells.size(); ++a) {
    for (std::size_t b = 0; a + b + 1 <= top; ++b) total += cells[a].size() * cells[b].size();
  }
  const bool sample = total > ctx.options.leibniz_pairs;
  std::mt19937_64 rng(0x5eed);
  for (std::size_t a = 0; a < cells.size(); ++a) {
    for (std::size_t b = 0; a + b + 1 <= top; ++b) {
      for (const auto& c : cells[a]) {
        for (const auto& d : cells[b]) {
          if (sample && rng() % total >= ctx.options.leibniz_pairs) continue;
          pairs.emplace_back(&c, &d);
        }
      }
    }
  }
  std::size_t nonzero = 0;
  for (const auto& [c, d] : pairs) {
    OrbitCochain fc, fd;
    fc.add(*c, 1);
    fd.add(*d, 1);
    const OrbitCochain lhs = model.coboundary(cup(fc, fd));
    OrbitCochain rhs = cup(model.coboundary(fc), fd);
    const Coeff sign = c->dim() % 2 ? -1 : 1;
    for (const auto& [e, v] : cup(fc, model.coboundary(fd))) rhs.add(e, sign * v);
    if (!(lhs == rhs)) {
      return "pair " + cube_string(*c) + " x " + cube_string(*d) + " breaks the Leibniz rule";
    }
    nonzero += !lhs.empty();
  }
  summary = std::to_string(pairs.size()) + (sample ? " sampled" : "") + " pairs, " +
            std::to_string(nonzero) + " with nonzero coboundary";
  return {};
}

std::string check_morse(Context& ctx, std::string& summary) {
  std::size_t checked = 0;
  for (int m = 0; m <= static_cast<int>(ctx.tree.essential_vertices().size()); ++m) {
    for (const auto& c : enumerate_critical(ctx.tree, ctx.n, m)) {
      auto d = morse_coboundary(ctx.field, c);
      if (!d.empty()) return "coboundary of " + to_string(c) + " is " + to_string(d);
      ++checked;
    }
  }
  summary = std::to_string(checked) + " critical cells";
  return {};
}

std::string check_counts(Context& ctx, std::string& summary, bool torsion) {
  const CohomologyReport rep = integral_cohomology(ctx.tree, ctx.n, Model::kUnordered, ctx.options.budget);
  if (torsion) {
    for (std::size_t m = 0; m < rep.torsion.size(); ++m) {
      if (!rep.torsion[m].empty()) return "H^" + std::to_string(m) + " has torsion " + rep.torsion[m][0];
    }
    summary = "no torsion in " + std::to_string(rep.torsion.size()) + " degrees";
    return {};
  }
  std::string list;
  const int top = std::max<int>(rep.betti.size(), ctx.tree.essential_vertices().size() + 1);
  for (int m = 0; m < top; ++m) {
    const std::size_t crit = enumerate_critical(ctx.tree, ctx.n, m).size();
    const std::size_t betti = m < static_cast<int>(rep.betti.size()) ? rep.betti[m] : 0;
    if (crit != betti) {
      return "dimension " + std::to_string(m) + ": " + std::to_string(crit) +
             " critical cells but rank " + std::to_string(betti);
    }
    list += (m ? "," : "") + std::to_string(betti);
  }
  summary = "betti [" + list + "]";
  return {};
}

std::string check_factorization(Context& ctx, std::string& summary) {
  std::size_t checked = 0;
  for (int m = 1; m <= static_cast<int>(ctx.tree.essential_vertices().size()); ++m) {
    for (const auto& c : enumerate_critical(ctx.tree, ctx.n, m)) {
      const auto factors = factorize_basis(ctx.tree, ctx.n, c);
      if (multiply_strong(ctx.tree, ctx.n, factors) != c) {
        return "factors " + family_string(factors) + " do not rebuild " + to_string(c);
      }
      const RingElement p = evaluate_product(ctx.tree, ctx.n, factors);
      if (!(p == RingElement(c))) {
        return "product of " + family_string(factors) + " is " + to_string(p) + ", not " + to_string(c);
      }
      ++checked;
    }
  }
  summary = std::to_string(checked) + " basis cells";
  return {};
}

// Calls f on every family of at most max_size generators with ascending x.
template <class F>
void for_each_family(const std::vector<InteractionVertex>& vnt, std::size_t max_size, F f) {
  std::vector<InteractionVertex> family;
  auto rec = [&](auto&& self, std::size_t from) -> void {
    for (std::size_t i = from; i < vnt.size(); ++i) {
      if (!family.empty() && vnt[i].x <= family.back().x) continue;
      family.push_back(vnt[i]);
      f(family);
      if (family.size() < max_size) self(self, i + 1);
      family.pop_back();
    }
  };
  rec(rec, 0);
}

std::string check_trichotomy(Context& ctx, std::string& summary) {
  const auto vnt = enumerate_vnt(ctx.tree, ctx.n);
  std::map<Interaction, std::size_t> seen;
  std::string failure;
  std::size_t visited = 0;
  const std::size_t max_size =
      std::max<std::size_t>(static_cast<std::size_t>(ctx.options.max_factors), 1);
  for_each_family(vnt, max_size, [&](const std::vector<InteractionVertex>& f) {
    if (!failure.empty()) return;
    ctx.options.budget.charge(++visited, "trichotomy families");
    const Interaction cls = classify_interaction(ctx.tree, ctx.n, f);
    const bool face = is_face(ctx.tree, ctx.n, f);
    const bool holds = local_inequalities_hold(ctx.tree, ctx.n, f);
    ++seen[cls];
    if ((cls == Interaction::kStrong) != face) {
      failure = family_string(f) + " classified " + to_string(cls) + " but face test says " +
                (face ? "face" : "non-face");
    } else if ((cls == Interaction::kWeak) != (holds && !face)) {
      failure = family_string(f) + " classified " + to_string(cls) + " against the inequalities";
    } else if (face) {
      for (std::size_t i = 0; i < f.size(); ++i) {
        auto sub = f;
        sub.erase(sub.begin() + i);
        if (!is_face(ctx.tree, ctx.n, sub)) failure = "face " + family_string(f) + " has a non-face facet";
      }
    }
  });
  if (!failure.empty()) return failure;
  summary = std::to_string(visited) + " families: " + std::to_string(seen[Interaction::kStrong]) +
            " strong, " + std::to_string(seen[Interaction::kWeak]) + " weak, " +
            std::to_string(seen[Interaction::kNone]) + " none";
  return {};
}

std::string check_products(Context& ctx, std::string& summary) {
  if (!ctx.options.cubical && !ctx.options.blocks) return {};
  const auto vnt = enumerate_vnt(ctx.tree, ctx.n);
  CubicalOracle oracle(ctx.field);
  std::map<Interaction, std::size_t> seen;
  std::size_t checked = 0;
  std::vector<InteractionVertex> tuple;
  std::string failure;
  auto visit = [&]() {
    ctx.options.budget.charge(++checked, "product oracle");
    const RingElement formula = evaluate_product(ctx.tree, ctx.n, tuple);
    if (ctx.options.cubical) {
      std::vector<RingElement> factors;
      for (const auto& v : tuple) factors.emplace_back(as_cell(v));
      const RingElement cubical = oracle.product(factors);
      if (!(cubical == formula)) {
        failure = family_string(tuple) + ": formula " + to_string(formula) + ", cubical " + to_string(cubical);
        return;
      }
    }
    auto sorted = tuple;
    int sign = 1;
    for (std::size_t i = 1; i < sorted.size(); ++i) {
      for (std::size_t j = i; j > 0 && sorted[j - 1].x > sorted[j].x; --j) {
        std::swap(sorted[j - 1], sorted[j]);
        sign = -sign;
      }
    }
    for (std::size_t i = 1; i < sorted.size(); ++i) {
      if (sorted[i - 1].x == sorted[i].x) return;
    }
    if (sorted.size() >= 2) ++seen[classify_interaction(ctx.tree, ctx.n, sorted)];
    if (ctx.options.blocks) {
      const RingElement blocks = oracle.blocks(sorted).scaled(sign);
      if (!(blocks == formula)) {
        failure = family_string(tuple) + ": formula " + to_string(formula) + ", blocks " + to_string(blocks);
      }
    }
  };
  auto rec = [&](auto&& self, std::size_t depth) -> void {
    if (!failure.empty()) return;
    if (depth >= 2) visit();
    if (depth == static_cast<std::size_t>(ctx.options.max_factors)) return;
    for (const auto& v : vnt) {
      tuple.push_back(v);
      self(self, depth + 1);
      tuple.pop_back();
      if (!failure.empty()) return;
    }
  };
  rec(rec, 0);
  if (!failure.empty()) return failure;
  summary = std::to_string(checked) + " ordered products; families " +
            std::to_string(seen[Interaction::kStrong]) + " strong, " +
            std::to_string(seen[Interaction::kWeak]) + " weak, " +
            std::to_string(seen[Interaction::kNone]) + " none";
  return {};
}

std::string check_certificate(Context& ctx, std::string& summary) {
  const CertificateReport rep = exterior_face_ring_certificate(ctx.tree, ctx.n, ctx.options.budget);
  if (!rep.passed) return rep.counterexample;
  summary = std::to_string(rep.rows.size()) + " strong products unitriangular, " +
            std::to_string(rep.nonstrong_checked) + " non-strong products vanish";
  return {};
}

}  // namespace

VerifyReport verify(const RootedPlaneTree& tree, int n, const VerifyOptions& options) {
  if (!is_n_sufficient(tree, n)) throw DomainError("tree is not sufficiently subdivided for n");
  Context ctx(tree, n, options);
  const bool certificate = is_binary_core(tree) && satisfies_binary_core_embedding(tree);
  const bool products = options.cubical || options.blocks;
  struct Step {
    const char* name;
    bool enabled;
    const char* skip_reason;
    Check run;
  };
  const std::vector<Step> steps = {
      {"boundary_squared", true, "", check_boundary_squared},
      {"leibniz", true, "", check_leibniz},
      {"morse_coboundary", true, "", check_morse},
      {"critical_count", true, "",
       [](Context& c, std::string& s) { return check_counts(c, s, false); }},
      {"torsion_free", true, "", [](Context& c, std::string& s) { return check_counts(c, s, true); }},
      {"factorization", true, "", check_factorization},
      {"trichotomy", true, "", check_trichotomy},
      {"product_oracle", products, "no oracle selected", check_products},
      {"binary_core_certificate", certificate, "tree lacks a binary-core embedding",
       check_certificate},
  };
  VerifyReport report;
  for (const auto& step : steps) {
    CheckResult r{step.name, CheckStatus::kPass, {}};
    if (!step.enabled) {
      r.status = CheckStatus::kSkipped;
      r.detail = step.skip_reason;
      report.checks.push_back(std::move(r));
      continue;
    }
    const auto start = std::chrono::steady_clock::now();
    auto stamp = [&] {
      r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      if (r.seconds > options.soft_seconds) r.detail += " [over soft time limit]";
    };
    try {
      std::string summary;
      std::string failure = step.run(ctx, summary);
      if (failure.empty()) {
        r.detail = std::move(summary);
      } else {
        r.status = CheckStatus::kFail;
        r.detail = std::move(failure);
      }
      stamp();
    } catch (const BudgetExceeded& e) {
      r.status = CheckStatus::kBudgetExceeded;
      r.detail = e.what();
      stamp();
      report.checks.push_back(std::move(r));
      break;
    }
    report.checks.push_back(std::move(r));
  }
  return report;
}

}  // namespace treebraid
