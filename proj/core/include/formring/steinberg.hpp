#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "formring/unitary.hpp"

namespace formring {

enum class Relation { R1, R2, R3, R4, R5, R6 };

std::string to_string(Relation r);
inline constexpr Relation kAllRelations[] = {Relation::R1, Relation::R2, Relation::R3,
                                             Relation::R4, Relation::R5, Relation::R6};

/// Arguments of one relation instance. Unused indices are ignored:
///   R1 T_ij(xi)                   R2 T_ij(xi), T_ij(zeta)
///   R3 T_ij(xi), T_hk(zeta)       R4 T_ij(xi), T_jh(zeta)
///   R5 T_ij(xi), T_{j,-i}(zeta)   R6 T_{i,-i}(xi), T_{-i,j}(zeta)
struct RelationArgs {
  OmegaIndex i, j, h, k;
  Elem xi = 0, zeta = 0;
};

std::string to_string(Relation r, const RelationArgs& a);

/// Evaluates both sides of the relation. Throws AdmissibilityError when the
/// arguments violate the relation's index or parameter constraints.
bool steinberg_relation_check(const UnitarySpace& space, Relation r, const RelationArgs& args);

/// Exponent of λ in the long-root factor of R6: (ε(j)-ε(-i))/2 for
/// `derived`, (ε(j)-ε(i))/2 for `as_printed`.
enum class R6Exponent { derived, as_printed };
int r6_exponent(OmegaIndex i, OmegaIndex j, R6Exponent form);

/// T_ij(αξ)·T_{-j,j}(-λ^k ξ̄αξ) with k from `form`.
UMatrix r6_right_side(const UnitarySpace& space, OmegaIndex i, OmegaIndex j, Elem alpha, Elem xi,
                      R6Exponent form);

struct SweepResult {
  std::uint64_t checked = 0;
  std::uint64_t failures = 0;
  std::optional<std::pair<Relation, RelationArgs>> first_failure;
};

/// Every admissible instance of the given relations.
SweepResult steinberg_exhaustive(const UnitarySpace& space,
                                 const std::vector<Relation>& relations);

/// `count` uniformly drawn admissible instances, relations chosen uniformly.
SweepResult steinberg_random(const UnitarySpace& space, std::uint64_t count, std::uint64_t seed);

}  // namespace formring
