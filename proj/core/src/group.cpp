#include "formring/group.hpp"

#include <algorithm>
#include <random>

#include "formring/error.hpp"

namespace formring {

std::string to_string(StoreStatus s) {
  switch (s) {
    case StoreStatus::exact:
      return "exact";
    case StoreStatus::generated:
      return "generated";
    case StoreStatus::budget_exceeded:
      return "budget-exceeded";
    case StoreStatus::sampled:
      return "sampled";
  }
  return "unknown";
}

bool SubgroupHandle::contains(const Key& k) const {
  if (!store) return false;
  return std::binary_search(store->begin(), store->end(), k);
}

bool same_store(const SubgroupHandle& a, const SubgroupHandle& b) {
  if (!a.exact() || !b.exact()) throw Error("store comparison needs exact stores");
  return *a.store == *b.store;
}

bool store_subset(const SubgroupHandle& a, const SubgroupHandle& b) {
  if (!a.exact() || !b.exact()) throw Error("store comparison needs exact stores");
  return std::includes(b.store->begin(), b.store->end(), a.store->begin(), a.store->end());
}

GroupBuilder::GroupBuilder(const UnitarySpace& space, std::size_t budget)
    : space_(&space), budget_(budget) {
  insert(space.encode(space.identity()));
}

bool GroupBuilder::insert(const Key& k) {
  if (!set_.insert(k).second) return false;
  if (list_.size() >= budget_) throw BudgetExceeded("subgroup exceeds budget");
  list_.push_back(k);
  return true;
}

bool GroupBuilder::normalizes(const UMatrix& g) const {
  const UMatrix gi = space_->unitary_inverse(g);
  for (const UMatrix& h : gens_) {
    if (!contains(space_->mul(space_->mul(g, h), gi))) return false;
  }
  return true;
}

bool GroupBuilder::add_generator(const UMatrix& g) {
  const UnitarySpace& s = *space_;
  if (contains(g)) return false;
  const std::size_t old = list_.size();
  const PreparedMatrix pg = s.prepare(g);
  if (normalizes(g)) {
    // ⟨H, g⟩ = H ∪ Hg ∪ ... ∪ Hg^{m-1}
    std::size_t begin = 0;
    UMatrix gk = g;
    while (!contains(gk)) {
      const std::size_t end = list_.size();
      for (std::size_t i = begin; i < end; ++i) {
        insert(s.encode(s.mul(s.decode(list_[i]), pg)));
      }
      begin = end;
      gk = s.mul(gk, pg);
    }
    gens_.push_back(g);
    prepared_.push_back(pg);
    return true;
  }
  gens_.push_back(g);
  prepared_.push_back(pg);
  for (std::size_t i = 0; i < old; ++i) {
    insert(s.encode(s.mul(s.decode(list_[i]), pg)));
  }
  for (std::size_t i = old; i < list_.size(); ++i) {
    const UMatrix x = s.decode(list_[i]);
    for (const PreparedMatrix& p : prepared_) {
      insert(s.encode(s.mul(x, p)));
    }
  }
  return true;
}

std::vector<Key> GroupBuilder::sorted_keys() const {
  std::vector<Key> out = list_;
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<UMatrix> dedupe_generators(const UnitarySpace& space, const std::vector<UMatrix>& gens) {
  absl::flat_hash_set<Key> seen;
  std::vector<UMatrix> out;
  for (const UMatrix& g : gens) {
    if (space.is_identity(g)) continue;
    if (seen.insert(space.encode(g)).second) out.push_back(g);
  }
  return out;
}

namespace {

SubgroupHandle finish(GroupBuilder& b, std::size_t budget) {
  SubgroupHandle h;
  h.generators = b.generators();
  h.store = std::make_shared<const std::vector<Key>>(b.sorted_keys());
  h.status = StoreStatus::exact;
  h.budget = budget;
  return h;
}

SubgroupHandle exceeded(std::vector<UMatrix> gens, std::size_t budget) {
  SubgroupHandle h;
  h.generators = std::move(gens);
  h.status = StoreStatus::budget_exceeded;
  h.budget = budget;
  return h;
}

}  // namespace

SubgroupHandle closure_enumerate(const UnitarySpace& space, const std::vector<UMatrix>& gens,
                                 std::size_t budget) {
  GroupBuilder b(space, budget);
  try {
    for (const UMatrix& g : gens) b.add_generator(g);
  } catch (const BudgetExceeded&) {
    return exceeded(dedupe_generators(space, gens), budget);
  }
  return finish(b, budget);
}

SubgroupHandle normal_closure(const UnitarySpace& space, const std::vector<UMatrix>& target,
                              const std::vector<UMatrix>& ambient, std::size_t budget) {
  const auto conj = dedupe_generators(space, ambient);
  std::vector<UMatrix> conj_inv;
  conj_inv.reserve(conj.size());
  for (const UMatrix& c : conj) conj_inv.push_back(space.unitary_inverse(c));
  GroupBuilder b(space, budget);
  try {
    for (const UMatrix& t : target) b.add_generator(t);
    for (std::size_t next = 0; next < b.generators().size(); ++next) {
      const UMatrix x = b.generators()[next];
      for (std::size_t c = 0; c < conj.size(); ++c) {
        if (b.contains(conj[c])) continue;
        b.add_generator(space.mul(space.mul(conj[c], x), conj_inv[c]));
      }
    }
  } catch (const BudgetExceeded&) {
    SubgroupHandle h = exceeded({}, budget);
    h.normal_targets = dedupe_generators(space, target);
    return h;
  }
  SubgroupHandle h = finish(b, budget);
  h.normal_targets = dedupe_generators(space, target);
  return h;
}

std::vector<UMatrix> generator_commutators(const UnitarySpace& space, const SubgroupHandle& h,
                                           const SubgroupHandle& k) {
  std::vector<UMatrix> out;
  out.reserve(h.generators.size() * k.generators.size());
  for (const UMatrix& x : h.generators) {
    for (const UMatrix& y : k.generators) out.push_back(space.commutator(x, y));
  }
  return dedupe_generators(space, out);
}

SubgroupHandle mixed_commutator(const UnitarySpace& space, const SubgroupHandle& h,
                                const SubgroupHandle& k, std::size_t budget) {
  if (h.status == StoreStatus::budget_exceeded || h.status == StoreStatus::sampled ||
      k.status == StoreStatus::budget_exceeded || k.status == StoreStatus::sampled) {
    throw Error("mixed commutator needs generating sets of both subgroups");
  }
  std::vector<UMatrix> ambient = h.generators;
  ambient.insert(ambient.end(), k.generators.begin(), k.generators.end());
  return normal_closure(space, generator_commutators(space, h, k), ambient, budget);
}

std::vector<UMatrix> random_word_sampler(const UnitarySpace& space, const std::vector<UMatrix>& gens,
                                         int length, std::size_t count, std::uint64_t seed) {
  std::vector<UMatrix> alphabet = gens;
  for (const UMatrix& g : gens) alphabet.push_back(space.unitary_inverse(g));
  std::mt19937_64 rng(seed);
  std::vector<UMatrix> out;
  out.reserve(count);
  for (std::size_t n = 0; n < count; ++n) {
    UMatrix w = space.identity();
    if (!alphabet.empty()) {
      std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
      for (int i = 0; i < length; ++i) w = space.mul(w, alphabet[pick(rng)]);
    }
    out.push_back(w);
  }
  return out;
}

SubgroupHandle generated_handle(const UnitarySpace& space, const std::vector<UMatrix>& gens) {
  SubgroupHandle h;
  h.generators = dedupe_generators(space, gens);
  h.status = StoreStatus::generated;
  return h;
}

}  // namespace formring
