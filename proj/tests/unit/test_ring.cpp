#include <doctest.h>

#include <vector>

#include "formring/error.hpp"
#include "instances.hpp"

using namespace formring;

namespace {

// Power-set scan straight from the definitions.
std::vector<Subset> form_parameters_by_scan(const InvolutiveRing& r, Elem lambda) {
  const auto b = lambda_bounds(r, lambda);
  std::vector<Subset> out;
  const std::uint64_t top = std::uint64_t{1} << r.order();
  for (std::uint64_t mask = 1; mask < top; ++mask) {
    const Subset s(mask);
    if (!b.min.subset_of(s) || !s.subset_of(b.max)) continue;
    bool ok = s.contains(r.zero());
    for (Elem x : s.elements()) {
      for (Elem y : s.elements()) ok = ok && s.contains(r.sub(x, y));
      for (int a = 0; a < r.order(); ++a) {
        const auto e = static_cast<Elem>(a);
        ok = ok && s.contains(r.mul(r.mul(e, x), r.conj(e)));
      }
    }
    if (ok) out.push_back(s);
  }
  return out;
}

}  // namespace

TEST_CASE("zmod tables agree with integer arithmetic") {
  for (int m : {2, 3, 4, 6, 8, 9}) {
    const auto r = InvolutiveRing::zmod(m);
    CHECK(r.order() == m);
    CHECK(r.zero() == 0);
    CHECK(r.one() == 1 % m);
    for (int a = 0; a < m; ++a) {
      for (int b = 0; b < m; ++b) {
        CHECK(r.add(Elem(a), Elem(b)) == (a + b) % m);
        CHECK(r.mul(Elem(a), Elem(b)) == (a * b) % m);
      }
      CHECK(r.conj(Elem(a)) == a);
    }
  }
}

TEST_CASE("F4 is a field and conj is the Frobenius") {
  const auto r = InvolutiveRing::quadratic(2, 1, 1, 1, 1);
  CHECK(r.order() == 4);
  CHECK(r.units().size() == 3);
  for (int a = 0; a < 4; ++a) {
    const auto x = static_cast<Elem>(a);
    CHECK(r.conj(x) == r.mul(x, x));
  }
  CHECK(r.commutative());
}

TEST_CASE("inverse and units") {
  const auto r = InvolutiveRing::zmod(9);
  std::vector<Elem> expect{1, 2, 4, 5, 7, 8};
  CHECK(r.units() == expect);
  CHECK(r.mul(2, r.inverse(2)) == 1);
  CHECK_THROWS_AS(r.inverse(3), RingError);
}

TEST_CASE("table validation rejects broken rings") {
  // addition mod 2 with a non-distributive product
  std::vector<Elem> add{0, 1, 1, 0};
  std::vector<Elem> mul{0, 1, 1, 1};
  std::vector<Elem> conj{0, 1};
  CHECK_THROWS_AS(InvolutiveRing::from_tables(2, add, mul, conj), RingError);
  std::vector<Elem> good_mul{0, 0, 0, 1};
  std::vector<Elem> bad_conj{1, 0};
  CHECK_THROWS_AS(InvolutiveRing::from_tables(2, add, good_mul, bad_conj), RingError);
  CHECK_NOTHROW(InvolutiveRing::from_tables(2, add, good_mul, conj));
}

TEST_CASE("product ring with swap involution") {
  const auto f2 = InvolutiveRing::zmod(2);
  const auto p = InvolutiveRing::product(f2, f2, InvolutiveRing::ProductInvolution::swap);
  CHECK(p.order() == 4);
  // (1,0) <-> (0,1)
  CHECK(p.conj(1) == 2);
  CHECK(p.conj(3) == 3);
  CHECK_THROWS_AS(InvolutiveRing::product(f2, InvolutiveRing::zmod(3),
                                          InvolutiveRing::ProductInvolution::swap),
                  RingError);
}

TEST_CASE("symmetry validation") {
  const auto r = InvolutiveRing::zmod(4);
  CHECK(validate_symmetry(r, 3).valid());
  CHECK(validate_symmetry(r, 1).valid());
  CHECK_FALSE(validate_symmetry(r, 2).valid());
}

TEST_CASE("form parameter bounds on Z/4 with lambda = -1") {
  const auto r = InvolutiveRing::zmod(4);
  const auto b = lambda_bounds(r, 3);
  CHECK(b.min == Subset{0, 2});
  CHECK(b.max == r.all());
}

TEST_CASE("form parameter enumeration matches the power-set scan") {
  const auto f2 = InvolutiveRing::zmod(2);
  const auto z4 = InvolutiveRing::zmod(4);
  const auto f4 = InvolutiveRing::quadratic(2, 1, 1, 1, 1);
  const auto z8 = InvolutiveRing::zmod(8);
  const auto sw = InvolutiveRing::product(f2, f2, InvolutiveRing::ProductInvolution::swap);
  struct Case {
    const InvolutiveRing* r;
    Elem lambda;
  };
  for (auto c : {Case{&f2, 1}, Case{&z4, 3}, Case{&z4, 1}, Case{&f4, 1}, Case{&z8, 7}, Case{&sw, 3}}) {
    CHECK(enumerate_form_parameters(*c.r, c.lambda) == form_parameters_by_scan(*c.r, c.lambda));
  }
  CHECK(enumerate_form_parameters(z4, 3).size() == 2);
  CHECK(enumerate_form_parameters(f2, 1).size() == 2);
}

TEST_CASE("form ring validation") {
  auto r = fixtures::share(InvolutiveRing::zmod(4));
  CHECK_NOTHROW(make_form_ring(r, 3, r->all()));
  CHECK_NOTHROW(make_form_ring(r, 3, Subset{0, 2}));
  // below Λ_min
  CHECK_THROWS_AS(make_form_ring(r, 3, Subset{0}), RingError);
  // not a subgroup
  CHECK_FALSE(validate_form_ring(FormRing{r, 3, Subset{0, 1, 2}}).valid());
}

TEST_CASE("R0 subring") {
  const auto z4 = InvolutiveRing::zmod(4);
  CHECK(r0_subring(z4) == z4.all());
  const auto f4 = InvolutiveRing::quadratic(2, 1, 1, 1, 1);
  // norms land in F2
  CHECK(r0_subring(f4) == Subset{0, 1});
}
