#include <doctest.h>

#include "formring/error.hpp"
#include "formring/steinberg.hpp"
#include "instances.hpp"

using namespace formring;

namespace {

const std::vector<Relation> kAll(std::begin(kAllRelations), std::end(kAllRelations));

}  // namespace

TEST_CASE("spot relations on Z/4") {
  const UnitarySpace s(fixtures::z4_symplectic(), 3);
  CHECK(steinberg_relation_check(s, Relation::R2, {{1}, {2}, {}, {}, 1, 1}));
  CHECK(s.mul(s.transvection(1, 2, 1), s.transvection(1, 2, 1)) == s.transvection(1, 2, 2));
  CHECK(steinberg_relation_check(s, Relation::R4, {{1}, {3}, {2}, {}, 1, 1}));
  CHECK(s.commutator(s.transvection(1, 3, 1), s.transvection(3, 2, 1)) == s.transvection(1, 2, 1));
  CHECK(steinberg_relation_check(s, Relation::R5, {{1}, {2}, {}, {}, 1, 1}));
  CHECK(s.commutator(s.transvection(1, 2, 1), s.transvection(2, -1, 1)) == s.transvection(1, -1, 2));
}

TEST_CASE("index constraints are enforced") {
  const UnitarySpace s(fixtures::z4_symplectic(), 3);
  CHECK_THROWS_AS(steinberg_relation_check(s, Relation::R1, {{1}, {-1}, {}, {}, 1, 0}), AdmissibilityError);
  CHECK_THROWS_AS(steinberg_relation_check(s, Relation::R3, {{1}, {2}, {2}, {3}, 1, 1}), AdmissibilityError);
  CHECK_THROWS_AS(steinberg_relation_check(s, Relation::R4, {{1}, {2}, {-1}, {}, 1, 1}), AdmissibilityError);
  CHECK_THROWS_AS(steinberg_relation_check(s, Relation::R6, {{1}, {4}, {}, {}, 1, 1}), AdmissibilityError);
}

TEST_CASE("exhaustive sweep over the four small instances") {
  for (const auto& fr : {fixtures::f2_symplectic(), fixtures::f2_orthogonal(), fixtures::z4_symplectic(),
                         fixtures::f4_unitary()}) {
    const UnitarySpace s(fr, 3);
    const auto res = steinberg_exhaustive(s, kAll);
    CHECK(res.checked > 1000);
    if (res.first_failure) {
      MESSAGE(fr.r().name() << ": " << to_string(res.first_failure->first, res.first_failure->second));
    }
    CHECK(res.failures == 0);
  }
}

TEST_CASE("random sweep on rings of order up to 9") {
  std::vector<FormRing> rings;
  auto z9 = fixtures::share(InvolutiveRing::zmod(9));
  rings.push_back(make_form_ring(z9, 8, z9->all()));
  auto z8 = fixtures::share(InvolutiveRing::zmod(8));
  rings.push_back(make_form_ring(z8, 7, Subset{0, 2, 4, 6}));
  // F9 = F3[x]/(x^2+1) with x -> -x, lambda = 1
  auto f9 = fixtures::share(InvolutiveRing::quadratic(3, 1, 0, 0, 2));
  rings.push_back(make_form_ring(f9, 1, lambda_bounds(*f9, 1).max));
  auto sw = fixtures::share(InvolutiveRing::product(InvolutiveRing::zmod(2), InvolutiveRing::zmod(2),
                                                    InvolutiveRing::ProductInvolution::swap));
  rings.push_back(make_form_ring(sw, sw->one(), lambda_bounds(*sw, sw->one()).max));
  for (const auto& fr : rings) {
    const UnitarySpace s(fr, 3);
    const auto res = steinberg_random(s, 100000, 42);
    CHECK(res.checked == 100000);
    CHECK(res.failures == 0);
  }
}

TEST_CASE("random sweep is deterministic") {
  const UnitarySpace s(fixtures::z4_symplectic(), 3);
  const auto a = steinberg_random(s, 1000, 5), b = steinberg_random(s, 1000, 5);
  CHECK(a.checked == b.checked);
  CHECK(a.failures == b.failures);
}

TEST_CASE("R6 long-root exponent") {
  // Over Z/4 with λ = -1 the two readings of the exponent give different
  // matrices; only the derived one equals the commutator.
  const UnitarySpace s(fixtures::z4_symplectic(), 3);
  const OmegaIndex i{1}, j{2};
  const UMatrix lhs = s.commutator(s.transvection(1, -1, 1), s.transvection(-1, 2, 1));
  CHECK(lhs == r6_right_side(s, i, j, 1, 1, R6Exponent::derived));
  CHECK(lhs != r6_right_side(s, i, j, 1, 1, R6Exponent::as_printed));
  CHECK(r6_exponent(i, j, R6Exponent::derived) == 1);
  CHECK(r6_exponent(i, j, R6Exponent::as_printed) == 0);
  // with λ = 1 both agree
  const UnitarySpace f(fixtures::f4_unitary(), 3);
  const UMatrix l2 = f.commutator(f.transvection(1, -1, 1), f.transvection(-1, 2, 2));
  CHECK(l2 == r6_right_side(f, i, j, 1, 2, R6Exponent::as_printed));
}
