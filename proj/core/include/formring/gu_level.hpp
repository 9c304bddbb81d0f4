#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "formring/group.hpp"

namespace formring {

enum class LevelMode {
  exact,      ///< filter an exact ambient GU store
  layer,      ///< I·I = 0: solve the linear conditions on e + X
  sampled,    ///< random products of level generators
  generated,  ///< absolute level only: EU generators, torus and swaps
};

std::string to_string(LevelMode m);

/// Solutions e + X of GU(2n, I, Γ) when I·I = 0. The conditions split into
/// independent groups of matrix positions; each group's solutions form an
/// additive subgroup, and the whole solution set is their direct sum.
struct LayerSolution {
  struct Component {
    std::vector<std::uint8_t> positions;  ///< r * kMaxDim + c
    std::vector<std::vector<Elem>> solutions;
    std::vector<std::vector<Elem>> basis;  ///< additive generators of solutions
  };
  std::vector<Component> components;

  /// Product of the component sizes, saturated at 2^63.
  std::uint64_t order_saturated() const;
};

bool is_square_zero(const InvolutiveRing& ring, Subset ideal);

/// Throws Error unless I·I = 0.
LayerSolution solve_layer(const UnitarySpace& space, const FormIdeal& fi);

UMatrix layer_matrix(const UnitarySpace& space, const LayerSolution& sol,
                     const std::vector<std::size_t>& choice);

/// A uniformly random element of the layer group.
UMatrix sample_layer(const UnitarySpace& space, const LayerSolution& sol, std::mt19937_64& rng);

/// GU(2n, I, Γ) in the requested mode. `ambient` must be an exact store of
/// GU(2n, A, Λ) for mode=exact. mode=sampled keeps `samples` random members.
SubgroupHandle gu_level_subgroup(const UnitarySpace& space, const FormIdeal& fi, LevelMode mode,
                                 std::size_t budget = kDefaultBudget,
                                 const SubgroupHandle* ambient = nullptr,
                                 std::size_t samples = 0, std::uint64_t seed = 0);

/// Generators of GU(2n, A, Λ) used by the generated mode.
std::vector<UMatrix> gu_generators(const UnitarySpace& space);

/// Generators of an exact store, extracted greedily in store order.
std::vector<UMatrix> extract_generators(const UnitarySpace& space, const std::vector<Key>& store);

/// Filters an exact store by cu_membership against `ambient_generators`.
SubgroupHandle cu_subgroup(const UnitarySpace& space, const FormIdeal& fi,
                           const SubgroupHandle& ambient,
                           const std::vector<UMatrix>& ambient_generators);

}  // namespace formring
