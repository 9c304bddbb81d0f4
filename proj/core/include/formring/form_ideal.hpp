#pragma once

#include <string>
#include <vector>

#include "formring/ring.hpp"

namespace formring {

/// An involution-invariant two-sided ideal.
struct Ideal {
  Subset members;
  friend bool operator==(const Ideal&, const Ideal&) = default;
};

/// A form ideal (I, Γ): Γ is a relative form parameter of level I.
struct FormIdeal {
  Ideal ideal;
  Subset gamma;
  friend bool operator==(const FormIdeal&, const FormIdeal&) = default;
};

/// Smallest involution-invariant two-sided ideal containing gens.
Ideal ideal_closure(const InvolutiveRing& ring, const std::vector<Elem>& gens);

/// True iff members form an involution-invariant two-sided ideal.
bool is_ideal(const InvolutiveRing& ring, Subset members);

struct GammaBounds {
  Subset min;  ///< {ξ - λ conj(ξ) : ξ ∈ I} + ⟨ξ α conj(ξ) : ξ ∈ I, α ∈ Λ⟩
  Subset max;  ///< I ∩ Λ
};

GammaBounds gamma_bounds(const FormRing& fr, const Ideal& ideal);

ValidationReport validate_form_ideal(const FormRing& fr, const FormIdeal& fi);

/// The zero form ideal and the absolute form ideal (A, Λ).
FormIdeal zero_form_ideal(const FormRing& fr);
FormIdeal absolute_form_ideal(const FormRing& fr);

/// (I + J, Γ + Δ).
FormIdeal sum_form_ideals(const InvolutiveRing& ring, const FormIdeal& a, const FormIdeal& b);

/// Additive closure of {x·y : x ∈ a, y ∈ b}.
Subset product_set(const InvolutiveRing& ring, Subset a, Subset b);

/// Additive closure of {ξ·γ·conj(ξ) : ξ ∈ ideal, γ ∈ gamma}, written ᴶΓ.
Subset twisted_gamma(const InvolutiveRing& ring, Subset ideal, Subset gamma);

/// (I∘J, Γ∘Δ) = (IJ + JI, Γ_min(IJ+JI) + ᴶΓ + ᴵΔ). Not associative.
FormIdeal symmetrized_product(const FormRing& fr, const FormIdeal& a, const FormIdeal& b);

/// Left-normed product of one or more form ideals.
FormIdeal symmetrized_product(const FormRing& fr, const std::vector<FormIdeal>& factors);

/// True iff a ⊆ b componentwise.
bool contained_in(const FormIdeal& a, const FormIdeal& b);

/// All involution-invariant two-sided ideals, sorted by (|I|, mask).
std::vector<Ideal> enumerate_ideals(const InvolutiveRing& ring);

/// The form-ideal lattice: every (I, Γ) with Γ between the bounds, sorted by
/// (|I|, mask of I, mask of Γ).
std::vector<FormIdeal> enumerate_form_ideals(const FormRing& fr, std::size_t budget = 1u << 16);

std::string describe(const FormIdeal& fi);

}  // namespace formring
