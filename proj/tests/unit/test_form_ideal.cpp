#include <doctest.h>

#include <vector>

#include "formring/form_ideal.hpp"
#include "instances.hpp"

using namespace formring;

namespace {

Subset span(const InvolutiveRing& r, Subset s) {
  s.insert(r.zero());
  for (;;) {
    Subset next = s;
    for (Elem x : s.elements()) {
      for (Elem y : s.elements()) next.insert(r.add(x, y));
    }
    if (next == s) return s;
    s = next;
  }
}

// Form ideals straight from the definitions, by scanning all subset pairs.
std::vector<FormIdeal> lattice_by_scan(const FormRing& fr) {
  const auto& r = fr.r();
  const std::uint64_t top = std::uint64_t{1} << r.order();
  std::vector<FormIdeal> out;
  for (std::uint64_t im = 1; im < top; ++im) {
    const Subset I(im);
    if (span(r, I) != I) continue;
    bool ideal = true;
    for (Elem x : I.elements()) {
      ideal = ideal && I.contains(r.conj(x));
      for (int a = 0; a < r.order(); ++a) {
        ideal = ideal && I.contains(r.mul(Elem(a), x)) && I.contains(r.mul(x, Elem(a)));
      }
    }
    if (!ideal) continue;
    Subset gen;
    for (Elem x : I.elements()) {
      gen.insert(r.sub(x, r.mul(fr.lambda, r.conj(x))));
      for (Elem a : fr.lambda_param.elements()) gen.insert(r.mul(r.mul(x, a), r.conj(x)));
    }
    const Subset gmin = span(r, gen);
    const Subset gmax = I & fr.lambda_param;
    for (std::uint64_t gm = 1; gm < top; ++gm) {
      const Subset G(gm);
      if (!gmin.subset_of(G) || !G.subset_of(gmax) || span(r, G) != G) continue;
      bool stable = true;
      for (Elem x : G.elements()) {
        for (int a = 0; a < r.order(); ++a) {
          stable = stable && G.contains(r.mul(r.mul(Elem(a), x), r.conj(Elem(a))));
        }
      }
      if (stable) out.push_back({Ideal{I}, G});
    }
  }
  std::sort(out.begin(), out.end(), [](const FormIdeal& a, const FormIdeal& b) {
    if (a.ideal.members.size() != b.ideal.members.size()) {
      return a.ideal.members.size() < b.ideal.members.size();
    }
    if (a.ideal.members != b.ideal.members) return a.ideal.members < b.ideal.members;
    return a.gamma < b.gamma;
  });
  return out;
}

}  // namespace

TEST_CASE("Z/4 symplectic lattice is O, P, Q, A") {
  const auto fr = fixtures::z4_symplectic();
  const auto lat = enumerate_form_ideals(fr);
  REQUIRE(lat.size() == 4);
  CHECK(lat[0] == fixtures::z4_O());
  CHECK(lat[1] == fixtures::z4_P());
  CHECK(lat[2] == fixtures::z4_Q());
  CHECK(lat[3] == fixtures::z4_A());
}

TEST_CASE("lattice enumeration matches the subset-pair scan") {
  for (const auto& fr : {fixtures::f2_symplectic(), fixtures::f2_orthogonal(), fixtures::z4_symplectic(),
                         fixtures::f4_unitary()}) {
    CHECK(enumerate_form_ideals(fr) == lattice_by_scan(fr));
  }
  auto z8 = fixtures::share(InvolutiveRing::zmod(8));
  for (Subset lam : enumerate_form_parameters(*z8, 7)) {
    const auto fr = make_form_ring(z8, 7, lam);
    CHECK(enumerate_form_ideals(fr) == lattice_by_scan(fr));
  }
}

TEST_CASE("validation of form ideals") {
  const auto fr = fixtures::z4_symplectic();
  CHECK(validate_form_ideal(fr, fixtures::z4_Q()).valid());
  CHECK(validate_form_ideal(fr, fixtures::z4_P()).valid());
  // gamma not inside the ideal
  CHECK_FALSE(validate_form_ideal(fr, {Ideal{Subset{0, 2}}, Subset{0, 1}}).valid());
  // gamma below Gamma_min(A)
  CHECK_FALSE(validate_form_ideal(fr, {Ideal{fr.r().all()}, Subset{0, 2}}).valid());
  CHECK(gamma_bounds(fr, Ideal{fr.r().all()}).min == fr.r().all());
}

TEST_CASE("ideal closure") {
  const auto r = InvolutiveRing::zmod(8);
  CHECK(ideal_closure(r, {6}).members == Subset{0, 2, 4, 6});
  CHECK(ideal_closure(r, {4}).members == Subset{0, 4});
  CHECK(ideal_closure(r, {3}).members == r.all());
  CHECK(is_ideal(r, Subset{0, 4}));
  CHECK_FALSE(is_ideal(r, Subset{0, 3}));
}

TEST_CASE("symmetrized products on Z/4") {
  using namespace fixtures;
  const auto fr = z4_symplectic();
  CHECK(symmetrized_product(fr, z4_Q(), z4_Q()) == z4_O());
  CHECK(symmetrized_product(fr, z4_P(), z4_P()) == z4_O());
  CHECK(symmetrized_product(fr, z4_A(), z4_Q()) == z4_Q());
  CHECK(symmetrized_product(fr, z4_Q(), z4_A()) == z4_Q());
  CHECK(symmetrized_product(fr, z4_A(), z4_P()) == z4_P());
  CHECK(symmetrized_product(fr, z4_A(), z4_A()) == z4_A());
  CHECK(symmetrized_product(fr, {z4_A(), z4_Q(), z4_A()}) == z4_Q());
}

TEST_CASE("every symmetrized product is a form ideal contained in both factors' ideals") {
  auto z8 = fixtures::share(InvolutiveRing::zmod(8));
  const auto fr = make_form_ring(z8, 7, z8->all());
  const auto lat = enumerate_form_ideals(fr);
  for (const auto& a : lat) {
    for (const auto& b : lat) {
      const auto p = symmetrized_product(fr, a, b);
      CHECK(validate_form_ideal(fr, p).valid());
      CHECK(p.ideal.members.subset_of(a.ideal.members & b.ideal.members));
      CHECK(p == symmetrized_product(fr, b, a));
    }
  }
}

TEST_CASE("sum and containment") {
  using namespace fixtures;
  const auto fr = z4_symplectic();
  CHECK(sum_form_ideals(fr.r(), z4_P(), z4_Q()) == z4_Q());
  CHECK(contained_in(z4_P(), z4_Q()));
  CHECK_FALSE(contained_in(z4_Q(), z4_P()));
  CHECK(describe(z4_Q()) == "({0,2},{0,2})");
}
