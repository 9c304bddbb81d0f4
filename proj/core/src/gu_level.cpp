#include "formring/gu_level.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "formring/error.hpp"

namespace formring {

std::string to_string(LevelMode m) {
  switch (m) {
    case LevelMode::exact:
      return "exact";
    case LevelMode::layer:
      return "layer";
    case LevelMode::sampled:
      return "sampled";
    case LevelMode::generated:
      return "generated";
  }
  return "unknown";
}

std::uint64_t LayerSolution::order_saturated() const {
  constexpr std::uint64_t cap = std::uint64_t{1} << 63;
  std::uint64_t n = 1;
  for (const auto& c : components) {
    const std::uint64_t k = c.solutions.size();
    n = n > cap / k ? cap : n * k;
  }
  return n;
}

bool is_square_zero(const InvolutiveRing& ring, Subset ideal) {
  return product_set(ring, ideal, ideal) == Subset{ring.zero()};
}

namespace {

// Condition c < dim^2 is h(g e_a, g e_b) = h(e_a, e_b) with c = a*dim + b;
// condition dim^2 + j is f(g e_j, g e_j) ∈ Γ. Returns the defect.
Elem defect(const UnitarySpace& s, const UMatrix& g, int c) {
  const int d = s.dim();
  if (c < d * d) {
    const int a = c / d, b = c % d;
    const Elem now = s.h(s.column(g, a), s.column(g, b));
    const Elem base =
        s.h(s.basis_vector(OmegaIndex::from_position(a, s.n())), s.basis_vector(OmegaIndex::from_position(b, s.n())));
    return s.ring().sub(now, base);
  }
  const auto col = s.column(g, c - d * d);
  return s.f(col, col);
}

bool satisfied(const UnitarySpace& s, const FormIdeal& fi, const UMatrix& g, int c) {
  const Elem v = defect(s, g, c);
  return c < s.dim() * s.dim() ? v == 0 : fi.gamma.contains(v);
}

int find(std::vector<int>& parent, int x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

using Vec = std::vector<Elem>;

std::vector<Vec> additive_basis(const InvolutiveRing& ring, const std::vector<Vec>& sols) {
  std::set<Vec> span;
  if (sols.empty()) return {};
  span.insert(Vec(sols.front().size(), ring.zero()));
  std::vector<Vec> basis;
  for (const Vec& v : sols) {
    if (span.contains(v)) continue;
    basis.push_back(v);
    for (;;) {
      std::set<Vec> next = span;
      for (const Vec& w : span) {
        Vec sum(w.size());
        for (std::size_t i = 0; i < w.size(); ++i) sum[i] = ring.add(w[i], v[i]);
        next.insert(sum);
      }
      if (next.size() == span.size()) break;
      span = std::move(next);
    }
  }
  return basis;
}

}  // namespace

LayerSolution solve_layer(const UnitarySpace& s, const FormIdeal& fi) {
  const auto& R = s.ring();
  if (!is_square_zero(R, fi.ideal.members)) throw Error("layer mode needs I*I = 0");
  const int d = s.dim();
  const int ncond = d * d + d;
  const auto ivals = fi.ideal.members.elements();
  const UMatrix e = s.identity();

  auto pos_rc = [](int p, int dim) { return std::pair{p / dim, p % dim}; };

  // support of each condition, by single-entry perturbation
  std::vector<std::vector<int>> support(static_cast<std::size_t>(ncond));
  for (int p = 0; p < d * d; ++p) {
    const auto [r, c] = pos_rc(p, d);
    for (int cond = 0; cond < ncond; ++cond) {
      for (Elem xi : ivals) {
        if (xi == 0) continue;
        UMatrix g = e;
        g.at(r, c) = R.add(g.at(r, c), xi);
        if (defect(s, g, cond) != 0) {
          support[static_cast<std::size_t>(cond)].push_back(p);
          break;
        }
      }
    }
  }

  std::vector<int> parent(static_cast<std::size_t>(d * d));
  std::iota(parent.begin(), parent.end(), 0);
  for (const auto& sup : support) {
    for (std::size_t k = 1; k < sup.size(); ++k) {
      parent[static_cast<std::size_t>(find(parent, sup[k]))] = find(parent, sup[0]);
    }
  }

  LayerSolution out;
  std::vector<int> comp_of(static_cast<std::size_t>(d * d), -1);
  for (int p = 0; p < d * d; ++p) {
    const int root = find(parent, p);
    if (comp_of[static_cast<std::size_t>(root)] < 0) {
      comp_of[static_cast<std::size_t>(root)] = static_cast<int>(out.components.size());
      out.components.emplace_back();
    }
    const auto [r, c] = pos_rc(p, d);
    out.components[static_cast<std::size_t>(comp_of[static_cast<std::size_t>(root)])]
        .positions.push_back(static_cast<std::uint8_t>(r * kMaxDim + c));
  }

  for (std::size_t ci = 0; ci < out.components.size(); ++ci) {
    auto& comp = out.components[ci];
    std::vector<int> conds;
    for (int cond = 0; cond < ncond; ++cond) {
      for (int p : support[static_cast<std::size_t>(cond)]) {
        if (comp_of[static_cast<std::size_t>(find(parent, p))] == static_cast<int>(ci)) {
          conds.push_back(cond);
          break;
        }
      }
    }
    const std::size_t k = comp.positions.size();
    double combos = 1;
    for (std::size_t i = 0; i < k; ++i) combos *= static_cast<double>(ivals.size());
    if (combos > double(1 << 22)) throw Error("layer component too large to scan");
    std::vector<std::size_t> digit(k, 0);
    for (;;) {
      UMatrix g = e;
      Vec v(k);
      for (std::size_t i = 0; i < k; ++i) {
        v[i] = ivals[digit[i]];
        const int r = comp.positions[i] / kMaxDim, c = comp.positions[i] % kMaxDim;
        g.at(r, c) = R.add(g.at(r, c), v[i]);
      }
      bool ok = true;
      for (int cond : conds) ok = ok && satisfied(s, fi, g, cond);
      if (ok) comp.solutions.push_back(v);
      std::size_t i = 0;
      while (i < k && ++digit[i] == ivals.size()) digit[i++] = 0;
      if (i == k) break;
    }
    comp.basis = additive_basis(R, comp.solutions);
  }
  return out;
}

UMatrix layer_matrix(const UnitarySpace& s, const LayerSolution& sol,
                     const std::vector<std::size_t>& choice) {
  const auto& R = s.ring();
  UMatrix g = s.identity();
  for (std::size_t ci = 0; ci < sol.components.size(); ++ci) {
    const auto& comp = sol.components[ci];
    const auto& v = comp.solutions[choice[ci]];
    for (std::size_t i = 0; i < v.size(); ++i) {
      const int r = comp.positions[i] / kMaxDim, c = comp.positions[i] % kMaxDim;
      g.at(r, c) = R.add(g.at(r, c), v[i]);
    }
  }
  return g;
}

UMatrix sample_layer(const UnitarySpace& s, const LayerSolution& sol, std::mt19937_64& rng) {
  std::vector<std::size_t> choice(sol.components.size());
  for (std::size_t ci = 0; ci < choice.size(); ++ci) {
    choice[ci] = std::uniform_int_distribution<std::size_t>(0, sol.components[ci].solutions.size() - 1)(rng);
  }
  return layer_matrix(s, sol, choice);
}

std::vector<UMatrix> gu_generators(const UnitarySpace& s) {
  auto gens = s.fu_generators(absolute_form_ideal(s.form_ring()));
  for (const UMatrix& g : s.torus_and_swaps()) gens.push_back(g);
  return dedupe_generators(s, gens);
}

std::vector<UMatrix> extract_generators(const UnitarySpace& s, const std::vector<Key>& store) {
  GroupBuilder b(s, store.size() + 1);
  for (const Key& k : store) {
    if (b.size() == store.size()) break;
    if (!b.contains(k)) b.add_generator(s.decode(k));
  }
  return b.generators();
}

namespace {

SubgroupHandle from_store(const UnitarySpace& s, std::vector<Key> keys, std::size_t budget) {
  SubgroupHandle h;
  h.generators = extract_generators(s, keys);
  h.store = std::make_shared<const std::vector<Key>>(std::move(keys));
  h.status = StoreStatus::exact;
  h.budget = budget;
  return h;
}

}  // namespace

SubgroupHandle gu_level_subgroup(const UnitarySpace& s, const FormIdeal& fi, LevelMode mode,
                                 std::size_t budget, const SubgroupHandle* ambient,
                                 std::size_t samples, std::uint64_t seed) {
  switch (mode) {
    case LevelMode::layer: {
      const LayerSolution sol = solve_layer(s, fi);
      SubgroupHandle h;
      h.budget = budget;
      for (std::size_t ci = 0; ci < sol.components.size(); ++ci) {
        for (const auto& b : sol.components[ci].basis) {
          std::vector<std::size_t> choice(sol.components.size(), 0);
          const auto& sols = sol.components[ci].solutions;
          choice[ci] = static_cast<std::size_t>(std::find(sols.begin(), sols.end(), b) - sols.begin());
          h.generators.push_back(layer_matrix(s, sol, choice));
        }
      }
      h.generators = dedupe_generators(s, h.generators);
      const std::uint64_t order = sol.order_saturated();
      if (order > budget) {
        h.status = StoreStatus::generated;
        return h;
      }
      std::vector<Key> keys;
      keys.reserve(order);
      std::vector<std::size_t> choice(sol.components.size(), 0);
      for (;;) {
        keys.push_back(s.encode(layer_matrix(s, sol, choice)));
        std::size_t i = 0;
        while (i < choice.size() && ++choice[i] == sol.components[i].solutions.size()) choice[i++] = 0;
        if (i == choice.size()) break;
      }
      std::sort(keys.begin(), keys.end());
      h.store = std::make_shared<const std::vector<Key>>(std::move(keys));
      h.status = StoreStatus::exact;
      return h;
    }
    case LevelMode::exact: {
      if (ambient == nullptr || !ambient->exact()) throw Error("exact mode needs an exact ambient store");
      std::vector<Key> keys;
      for (const Key& k : *ambient->store) {
        if (s.congruence_membership(fi, s.decode(k))) keys.push_back(k);
      }
      return from_store(s, std::move(keys), budget);
    }
    case LevelMode::sampled: {
      const auto gens = s.eu_generator_set(fi);
      SubgroupHandle h;
      h.generators = gens;
      for (const UMatrix& g : random_word_sampler(s, gens, 8, samples, seed)) {
        if (s.congruence_membership(fi, g)) h.generators.push_back(g);
      }
      h.generators = dedupe_generators(s, h.generators);
      h.status = StoreStatus::sampled;
      h.budget = budget;
      return h;
    }
    case LevelMode::generated: {
      if (!(fi == absolute_form_ideal(s.form_ring()))) {
        throw Error("generated mode is only available at the absolute level");
      }
      SubgroupHandle h = closure_enumerate(s, gu_generators(s), budget);
      if (!h.exact()) h.status = StoreStatus::generated;
      return h;
    }
  }
  throw Error("unknown level mode");
}

SubgroupHandle cu_subgroup(const UnitarySpace& s, const FormIdeal& fi, const SubgroupHandle& ambient,
                           const std::vector<UMatrix>& ambient_generators) {
  if (!ambient.exact()) throw Error("CU needs an exact ambient store");
  std::vector<Key> keys;
  for (const Key& k : *ambient.store) {
    if (s.cu_membership(fi, s.decode(k), ambient_generators)) keys.push_back(k);
  }
  return from_store(s, std::move(keys), ambient.budget);
}

}  // namespace formring
