#pragma once

#include <string>
#include <vector>

#include "formring/form_ideal.hpp"
#include "formring/ring.hpp"
#include "formring/umatrix.hpp"

namespace formring {

/// Nonzero entries of g - e, used to multiply by near-identity matrices in
/// O(nnz * 2n) instead of O((2n)^3).
struct SparseDelta {
  struct Entry {
    std::uint8_t row, col;
    Elem value;
  };
  std::vector<Entry> entries;
};

/// A matrix prepared for repeated multiplication.
struct PreparedMatrix {
  UMatrix m;
  SparseDelta delta;
  bool sparse = false;
};

struct FormsTriple {
  Elem f_value = 0;
  Elem h_value = 0;
  Elem q_value = 0;  ///< representative f(u,u) of the coset q(u) = f(u,u) + Λ
};

/// The hyperbolic space A^{2n} over a form ring, with the arithmetic of
/// 2n x 2n matrices, the forms f/h/q, and group membership tests.
class UnitarySpace {
 public:
  UnitarySpace(FormRing fr, int n);

  const FormRing& form_ring() const { return fr_; }
  const InvolutiveRing& ring() const { return *fr_.ring; }
  int n() const { return n_; }
  int dim() const { return 2 * n_; }

  UMatrix identity() const;
  UMatrix zero_matrix() const;
  bool is_identity(const UMatrix& g) const { return g == id_; }

  UMatrix mul(const UMatrix& a, const UMatrix& b) const;
  /// a·b where b is prepared.
  UMatrix mul(const UMatrix& a, const PreparedMatrix& b) const;
  /// a·b where a is prepared.
  UMatrix mul(const PreparedMatrix& a, const UMatrix& b) const;
  PreparedMatrix prepare(const UMatrix& g) const;

  /// Inverse of a matrix preserving h, via g^{-1} = H^{-1} g^* H. The result
  /// is meaningless for matrices outside GU; callers check g·g^{-1} = e.
  UMatrix unitary_inverse(const UMatrix& g) const;

  /// Two-sided inverse of an arbitrary matrix; throws SingularMatrixError.
  UMatrix inverse(const UMatrix& g) const;
  bool is_invertible(const UMatrix& g) const;

  /// x y x^{-1} y^{-1} for x, y ∈ GU.
  UMatrix commutator(const UMatrix& x, const UMatrix& y) const;
  /// s x s^{-1} for s ∈ GU.
  UMatrix conjugate(const UMatrix& s, const UMatrix& x) const;
  UMatrix power(const UMatrix& g, unsigned k) const;

  // forms on column vectors of length 2n (Ω position order)
  Elem f(const std::vector<Elem>& u, const std::vector<Elem>& v) const;
  Elem h(const std::vector<Elem>& u, const std::vector<Elem>& v) const;
  FormsTriple eval_forms(const std::vector<Elem>& u, const std::vector<Elem>& v) const;
  std::vector<Elem> basis_vector(OmegaIndex i) const;
  std::vector<Elem> column(const UMatrix& g, int pos) const;
  std::vector<Elem> apply(const UMatrix& g, const std::vector<Elem>& v) const;

  /// g ∈ GU(2n, A, Λ). Throws SingularMatrixError for singular g.
  bool gu_membership(const UMatrix& g) const;
  /// g ≡ e mod I and f(ge_j, ge_j) ∈ Γ for all j. Assumes g ∈ GU.
  bool congruence_membership(const FormIdeal& fi, const UMatrix& g) const;
  /// [g, x] ∈ GU(2n, I, Γ) for every x in the ambient generator list.
  bool cu_membership(const FormIdeal& fi, const UMatrix& g,
                     const std::vector<UMatrix>& ambient_generators) const;

  /// λ^k for k ∈ {-1, 0, 1}.
  Elem lambda_power(int k) const;
  /// λ^{-(ε(i)+1)/2}·gamma: the admissible long-root parameters at i.
  Subset long_root_parameters(OmegaIndex i, Subset gamma) const;
  /// Admissible T_ij parameters at level fi (I for short roots).
  Subset admissible(const FormIdeal& fi, OmegaIndex i, OmegaIndex j) const;

  /// T_ij(ξ); throws AdmissibilityError for i = j or an inadmissible
  /// long-root parameter.
  UMatrix transvection(OmegaIndex i, OmegaIndex j, Elem xi) const;
  UMatrix transvection(int i, int j, Elem xi) const {
    return transvection(OmegaIndex{i}, OmegaIndex{j}, xi);
  }

  /// Z_ij(ξ, ζ) = T_ji(ζ) T_ij(ξ) T_ji(-ζ) with ξ at level fi and ζ at the
  /// absolute level.
  UMatrix z_generator(const FormIdeal& fi, OmegaIndex i, OmegaIndex j, Elem xi, Elem zeta) const;

  /// All nontrivial transvections of level fi, deduplicated, in Ω order.
  std::vector<UMatrix> fu_generators(const FormIdeal& fi) const;
  /// All nontrivial Z_ij(ξ, ζ) of level fi, deduplicated.
  std::vector<UMatrix> eu_generator_set(const FormIdeal& fi) const;

  /// Diagonal elements diag(u at i, conj(u)^{-1} at -i) and hyperbolic swaps
  /// e_i -> e_{-i}·c that lie in GU. Together with the elementary generators
  /// they generate GU over fields and local rings of the instances used here.
  std::vector<UMatrix> torus_and_swaps() const;

  Key encode(const UMatrix& g) const;
  UMatrix decode(const Key& k) const;

  std::string to_string(const UMatrix& g) const;
  /// Rows of element indices in Ω order.
  std::vector<std::vector<int>> to_rows(const UMatrix& g) const;
  UMatrix from_rows(const std::vector<std::vector<int>>& rows) const;

 private:
  FormRing fr_;
  int n_;
  UMatrix id_;
  int bits_;
};

/// Division-free determinant (Bird's algorithm). Requires a commutative ring.
Elem determinant(const InvolutiveRing& ring, const UMatrix& g);

/// Products of at most `max_length` elements of gens (including the empty
/// word), deduplicated, in breadth-first order.
std::vector<UMatrix> words_up_to_length(const UnitarySpace& space, const std::vector<UMatrix>& gens,
                                        int max_length);

/// The three generator families of [EU(I,Γ), EU(J,Δ)]:
/// ᶜ[T_ji(α), ^{T_ij(a)}T_ji(β)], ᶜ[T_ji(α), T_ij(β)], ᶜT_ij(ξ), with α at
/// level (I,Γ), β at level (J,Δ), ξ at level (I,Γ)∘(J,Δ), a at the absolute
/// level, c ranging over `conjugators`. Deduplicated, identity dropped.
std::vector<UMatrix> theorem_generators(const UnitarySpace& space, const FormIdeal& fi_i,
                                        const FormIdeal& fi_j,
                                        const std::vector<UMatrix>& conjugators);

}  // namespace formring
