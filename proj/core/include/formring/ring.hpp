#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "formring/subset.hpp"

namespace formring {

/// A finite ring with involution, given by dense arithmetic tables.
///
/// Elements are indices 0..order-1. All tables are checked at construction:
/// associativity, distributivity, unitality, and the anti-automorphism laws
/// of the involution (conj(a+b)=conj(a)+conj(b), conj(ab)=conj(b)conj(a),
/// conj(conj(a))=a). Instances are immutable.
class InvolutiveRing {
 public:
  /// Z/m with the trivial involution. Element k is the residue k.
  static InvolutiveRing zmod(int m);

  /// Z/m[x]/(x^2 + c1 x + c0) with the involution fixing Z/m and sending
  /// x to a0 + a1 x. Element a + b x has index a + b*m.
  static InvolutiveRing quadratic(int m, int c0, int c1, int a0, int a1);

  enum class ProductInvolution { componentwise, swap };

  /// A x B. Element (a, b) has index a + b*|A|. The swap involution maps
  /// (a, b) to (conj(b), conj(a)) and requires identical factors.
  static InvolutiveRing product(const InvolutiveRing& a, const InvolutiveRing& b,
                                ProductInvolution inv);

  /// Raw tables; zero and one are located by search.
  static InvolutiveRing from_tables(int order, std::vector<Elem> add,
                                    std::vector<Elem> mul, std::vector<Elem> conj,
                                    std::string name = "tables");

  int order() const { return order_; }
  const std::string& name() const { return name_; }
  Elem zero() const { return zero_; }
  Elem one() const { return one_; }
  bool commutative() const { return commutative_; }

  Elem add(Elem a, Elem b) const { return add_[idx(a, b)]; }
  Elem mul(Elem a, Elem b) const { return mul_[idx(a, b)]; }
  Elem neg(Elem a) const { return neg_[a]; }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem conj(Elem a) const { return conj_[a]; }

  bool is_unit(Elem a) const { return inv_[a] != kNoInverse; }
  /// Two-sided inverse of a unit; throws RingError otherwise.
  Elem inverse(Elem a) const;
  std::vector<Elem> units() const;

  /// Central elements (full scan).
  bool is_central(Elem a) const;

  /// Bits needed to encode one element in a canonical key.
  int element_bits() const { return element_bits_; }

  Subset all() const { return Subset::full(order_); }

  /// Row pointers into the tables, for hot loops.
  const Elem* add_row(Elem a) const { return add_.data() + static_cast<std::size_t>(a) * order_; }
  const Elem* mul_row(Elem a) const { return mul_.data() + static_cast<std::size_t>(a) * order_; }

 private:
  static constexpr Elem kNoInverse = 0xff;

  InvolutiveRing(int order, std::vector<Elem> add, std::vector<Elem> mul,
                 std::vector<Elem> conj, std::string name);

  std::size_t idx(Elem a, Elem b) const {
    return static_cast<std::size_t>(a) * order_ + b;
  }
  void validate_and_derive();

  int order_ = 0;
  std::string name_;
  std::vector<Elem> add_, mul_, neg_, conj_, inv_;
  Elem zero_ = 0, one_ = 0;
  bool commutative_ = true;
  int element_bits_ = 1;
};

using RingPtr = std::shared_ptr<const InvolutiveRing>;

/// Outcome of a validation routine: empty list means valid.
struct ValidationReport {
  std::vector<std::string> violations;
  bool valid() const { return violations.empty(); }
  void add(std::string v) { violations.push_back(std::move(v)); }
};

/// λ must be central with λ·conj(λ) = 1.
ValidationReport validate_symmetry(const InvolutiveRing& ring, Elem lambda);

struct LambdaBounds {
  Subset min;  ///< {a - λ conj(a)}
  Subset max;  ///< {a : a = -λ conj(a)}
};

LambdaBounds lambda_bounds(const InvolutiveRing& ring, Elem lambda);

/// A form ring (A, Λ) together with its symmetry λ.
struct FormRing {
  RingPtr ring;
  Elem lambda = 0;
  Subset lambda_param;

  const InvolutiveRing& r() const { return *ring; }
};

/// Validates the symmetry, the bounds Λ_min ⊆ Λ ⊆ Λ_max, additive closure,
/// stability a·Λ·conj(a) ⊆ Λ and stability under the subring R₀.
ValidationReport validate_form_ring(const FormRing& fr);

/// Builds a form ring and throws RingError if it does not validate.
FormRing make_form_ring(RingPtr ring, Elem lambda, Subset lambda_param);

/// Subring generated by all a·conj(a).
Subset r0_subring(const InvolutiveRing& ring);

/// All form parameters between Λ_min and Λ_max, sorted by mask. Throws
/// BudgetExceeded when more than `budget` are found.
std::vector<Subset> enumerate_form_parameters(const InvolutiveRing& ring, Elem lambda,
                                              std::size_t budget = 1u << 16);

// Subset helpers shared by the form-ideal code.

bool is_additive_subgroup(const InvolutiveRing& ring, Subset s);
/// Smallest additive subgroup containing s.
Subset additive_closure(const InvolutiveRing& ring, Subset s);
/// Smallest additive subgroup containing s and stable under x -> a·x·conj(a).
Subset stable_additive_closure(const InvolutiveRing& ring, Subset s);
/// {c·x : x in s} for central c.
Subset scale(const InvolutiveRing& ring, Elem c, Subset s);
/// True iff a·x·conj(a) ∈ s for all a ∈ A, x ∈ s.
bool is_stable(const InvolutiveRing& ring, Subset s);

}  // namespace formring
