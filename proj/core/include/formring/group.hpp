#pragma once

#include <absl/container/flat_hash_set.h>

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "formring/unitary.hpp"

namespace formring {

inline constexpr std::size_t kDefaultBudget = std::size_t{1} << 22;

enum class StoreStatus {
  exact,            ///< store holds every element
  generated,        ///< generators known, group too large or not enumerated
  budget_exceeded,  ///< enumeration stopped at the budget, store discarded
  sampled,          ///< only random members are known
};

std::string to_string(StoreStatus s);

/// A subgroup of GU given by generators and, when exact, its sorted element
/// keys. Immutable once built.
struct SubgroupHandle {
  std::vector<UMatrix> generators;
  /// For normal closures: the set whose normal closure this is.
  std::vector<UMatrix> normal_targets;
  std::shared_ptr<const std::vector<Key>> store;
  StoreStatus status = StoreStatus::generated;
  std::size_t budget = kDefaultBudget;

  bool exact() const { return status == StoreStatus::exact; }
  std::size_t size() const { return store ? store->size() : 0; }
  bool contains(const Key& k) const;
  bool contains(const UnitarySpace& space, const UMatrix& g) const {
    return contains(space.encode(g));
  }
};

/// Stores of two exact handles are identical.
bool same_store(const SubgroupHandle& a, const SubgroupHandle& b);
/// Every element of a's store lies in b's store (both exact).
bool store_subset(const SubgroupHandle& a, const SubgroupHandle& b);

/// A finite subgroup built by adding generators one at a time. Elements are
/// kept in insertion order next to a hash set.
///
/// A new generator that normalises the current group is added coset by
/// coset; otherwise the old elements are multiplied by it and the new ones
/// are expanded by every generator. In a finite group this reaches every
/// product of generators and their inverses.
class GroupBuilder {
 public:
  GroupBuilder(const UnitarySpace& space, std::size_t budget);

  const UnitarySpace& space() const { return *space_; }
  std::size_t size() const { return list_.size(); }
  bool contains(const Key& k) const { return set_.contains(k); }
  bool contains(const UMatrix& g) const { return set_.contains(space_->encode(g)); }

  /// Returns false when g is already a member. Throws BudgetExceeded.
  bool add_generator(const UMatrix& g);

  const std::vector<UMatrix>& generators() const { return gens_; }
  const std::vector<Key>& elements() const { return list_; }
  std::vector<Key> sorted_keys() const;

 private:
  bool insert(const Key& k);
  bool normalizes(const UMatrix& g) const;

  const UnitarySpace* space_;
  std::size_t budget_;
  absl::flat_hash_set<Key> set_;
  std::vector<Key> list_;
  std::vector<UMatrix> gens_;
  std::vector<PreparedMatrix> prepared_;
};

/// Identity and duplicates removed, order kept.
std::vector<UMatrix> dedupe_generators(const UnitarySpace& space, const std::vector<UMatrix>& gens);

/// ⟨gens⟩ as an exact store, or a budget-exceeded handle.
SubgroupHandle closure_enumerate(const UnitarySpace& space, const std::vector<UMatrix>& gens,
                                 std::size_t budget = kDefaultBudget);

/// Smallest subgroup containing target and normalised by every ambient
/// generator.
SubgroupHandle normal_closure(const UnitarySpace& space, const std::vector<UMatrix>& target,
                              const std::vector<UMatrix>& ambient,
                              std::size_t budget = kDefaultBudget);

/// The generator commutators [x, y], x ∈ gens(h), y ∈ gens(k).
std::vector<UMatrix> generator_commutators(const UnitarySpace& space, const SubgroupHandle& h,
                                           const SubgroupHandle& k);

/// [H, K]: normal closure in ⟨H, K⟩ of the generator commutators.
SubgroupHandle mixed_commutator(const UnitarySpace& space, const SubgroupHandle& h,
                                const SubgroupHandle& k, std::size_t budget = kDefaultBudget);

/// `count` words of the given length over gens and their inverses.
std::vector<UMatrix> random_word_sampler(const UnitarySpace& space, const std::vector<UMatrix>& gens,
                                         int length, std::size_t count, std::uint64_t seed);

/// A handle holding generators only.
SubgroupHandle generated_handle(const UnitarySpace& space, const std::vector<UMatrix>& gens);

}  // namespace formring
