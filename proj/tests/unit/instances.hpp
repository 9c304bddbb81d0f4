#pragma once

#include <memory>

#include "formring/ring.hpp"
#include "formring/unitary.hpp"

namespace fixtures {

using namespace formring;

inline RingPtr share(InvolutiveRing r) { return std::make_shared<const InvolutiveRing>(std::move(r)); }

inline FormRing f2_symplectic() {
  auto r = share(InvolutiveRing::zmod(2));
  return make_form_ring(r, 1, r->all());
}

inline FormRing f2_orthogonal() {
  auto r = share(InvolutiveRing::zmod(2));
  return make_form_ring(r, 1, Subset{0});
}

inline FormRing z4_symplectic() {
  auto r = share(InvolutiveRing::zmod(4));
  return make_form_ring(r, 3, r->all());
}

// F4 = F2[x]/(x^2+x+1), Frobenius x -> x+1, Λ = Λ_max
inline FormRing f4_unitary() {
  auto r = share(InvolutiveRing::quadratic(2, 1, 1, 1, 1));
  return make_form_ring(r, 1, lambda_bounds(*r, 1).max);
}

// Z/4 lattice: O=(0,0), P=({0,2},{0}), Q=({0,2},{0,2}), A=(Z/4,Z/4)
inline FormIdeal z4_O() { return {Ideal{Subset{0}}, Subset{0}}; }
inline FormIdeal z4_P() { return {Ideal{Subset{0, 2}}, Subset{0}}; }
inline FormIdeal z4_Q() { return {Ideal{Subset{0, 2}}, Subset{0, 2}}; }
inline FormIdeal z4_A() { return {Ideal{Subset{0, 1, 2, 3}}, Subset{0, 1, 2, 3}}; }

}  // namespace fixtures
