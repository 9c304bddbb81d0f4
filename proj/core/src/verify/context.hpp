#pragma once

#include <absl/container/flat_hash_set.h>

#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "formring/error.hpp"
#include "formring/gu_level.hpp"
#include "formring/scenario.hpp"

namespace formring::detail {

/// Raised when a subgroup cannot be computed for a reason other than size.
class Skip : public Error {
 public:
  using Error::Error;
};

enum class Tri { yes, no, unknown };

struct Group {
  std::string expr;
  SubgroupHandle h;
  /// The group is exactly GU(2n, I, Γ); membership is the congruence test.
  std::optional<FormIdeal> level_exact;
  /// The group lies in GU(2n, I, Γ).
  std::optional<FormIdeal> level_bound;
  /// Known members, used for word certificates.
  std::vector<UMatrix> known;
  /// Normal closure data when no generating set is kept.
  std::vector<UMatrix> targets, ambient;
  std::shared_ptr<const Group> left, right;
  std::optional<LayerSolution> layer;
  std::vector<std::string> flags;
  bool predicate_only = false;

  bool exact() const { return h.exact(); }
  bool trivial() const { return h.exact() && h.size() == 1; }
  bool has_generators() const {
    return !predicate_only && (h.status == StoreStatus::exact || h.status == StoreStatus::generated);
  }
};

using GroupPtr = std::shared_ptr<const Group>;

struct Verdict {
  Tri result = Tri::unknown;
  bool sampled = false;
  std::string method;
  /// On Tri::no: a member of `in` outside `out`.
  std::optional<UMatrix> witness;
  std::string in, out;
};

class Context {
 public:
  explicit Context(const ScenarioConfig& cfg);

  const ScenarioConfig& cfg() const { return *cfg_; }
  const UnitarySpace& space() const { return space_; }
  const FormRing& form_ring() const { return cfg_->form_ring; }

  /// Parses "Q", "(Q.A)", "((P.Q).A)".
  FormIdeal ideal(const std::string& text) const;
  /// A name for display: the configured name, "A", "0", or "L<k>".
  std::string ideal_name(const FormIdeal& fi) const;
  const std::vector<std::pair<std::string, FormIdeal>>& lattice() const { return lattice_; }

  /// Kinds: E, G, C, FU, Z, NFU, GU (predicate), TG(I,J), and [X,Y].
  GroupPtr group(const std::string& expr);

  /// Exact GU ambient, or null when it is not enumerable.
  GroupPtr ambient();

  Tri member(const Group& k, const UMatrix& g);
  Verdict includes(const GroupPtr& h, const GroupPtr& k);
  Verdict equal(const GroupPtr& h, const GroupPtr& k);

  /// A random member; throws Skip when the group has no sampler.
  UMatrix sample(const Group& g, std::mt19937_64& rng);

 private:
  struct Parsed;
  GroupPtr evaluate(const Parsed& p);
  GroupPtr leaf(const std::string& kind, const FormIdeal& fi, const std::string& text);
  GroupPtr commutator(const GroupPtr& a, const GroupPtr& b, const std::string& text);
  /// closure with the size registry; a too large group keeps its generators.
  Group closed(std::string expr, const std::vector<UMatrix>& gens);
  bool known_too_large(const std::vector<UMatrix>& gens) const;
  bool word_certificate(const Group& k, const UMatrix& g);
  Verdict includes_uncached(const GroupPtr& h, const GroupPtr& k);
  std::string key_of(const FormIdeal& fi) const;

  const ScenarioConfig* cfg_;
  UnitarySpace space_;
  FormIdeal absolute_;
  std::vector<std::pair<std::string, FormIdeal>> lattice_;
  std::map<std::string, GroupPtr> cache_;
  std::map<std::pair<const Group*, const Group*>, Verdict> inclusion_cache_;
  std::vector<absl::flat_hash_set<Key>> too_large_;
  struct Alphabet {
    std::vector<UMatrix> letters, inverses;
    absl::flat_hash_set<Key> keys;
  };
  std::map<const Group*, Alphabet> alphabets_;
  std::optional<GroupPtr> ambient_;
};

}  // namespace formring::detail
