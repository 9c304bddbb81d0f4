#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "formring/error.hpp"
#include "instances.hpp"

using namespace formring;

namespace {

// h(ge_a, ge_b) written out from the defining sum.
Elem h_oracle(const UnitarySpace& s, const UMatrix& g, int a, int b) {
  const auto& r = s.ring();
  Elem acc = 0;
  for (int i = 1; i <= s.n(); ++i) {
    const int p = i - 1, q = 2 * s.n() - i;
    acc = r.add(acc, r.mul(r.conj(g.at(p, a)), g.at(q, b)));
    acc = r.add(acc, r.mul(s.form_ring().lambda, r.mul(r.conj(g.at(q, a)), g.at(p, b))));
  }
  return acc;
}

bool gu_oracle(const UnitarySpace& s, const UMatrix& g) {
  const auto& r = s.ring();
  const UMatrix e = s.identity();
  for (int a = 0; a < s.dim(); ++a) {
    for (int b = 0; b < s.dim(); ++b) {
      if (h_oracle(s, g, a, b) != h_oracle(s, e, a, b)) return false;
    }
    Elem fa = 0;
    for (int i = 1; i <= s.n(); ++i) {
      fa = r.add(fa, r.mul(r.conj(g.at(i - 1, a)), g.at(2 * s.n() - i, a)));
    }
    if (!s.form_ring().lambda_param.contains(fa)) return false;
  }
  return true;
}

// Leibniz expansion.
Elem det_oracle(const InvolutiveRing& r, const UMatrix& g) {
  const int d = g.dim();
  std::vector<int> perm(static_cast<std::size_t>(d));
  std::iota(perm.begin(), perm.end(), 0);
  Elem acc = 0;
  do {
    int inversions = 0;
    for (int i = 0; i < d; ++i) {
      for (int j = i + 1; j < d; ++j) inversions += perm[i] > perm[j];
    }
    Elem term = r.one();
    for (int i = 0; i < d; ++i) term = r.mul(term, g.at(i, perm[i]));
    acc = inversions % 2 ? r.sub(acc, term) : r.add(acc, term);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return acc;
}

UMatrix random_matrix(const UnitarySpace& s, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> el(0, s.ring().order() - 1);
  UMatrix g(s.dim());
  for (int r = 0; r < s.dim(); ++r) {
    for (int c = 0; c < s.dim(); ++c) g.at(r, c) = static_cast<Elem>(el(rng));
  }
  return g;
}

UMatrix random_word(const UnitarySpace& s, const std::vector<UMatrix>& gens, int len,
                    std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  UMatrix g = s.identity();
  for (int i = 0; i < len; ++i) g = s.mul(g, gens[pick(rng)]);
  return g;
}

std::vector<Elem> random_vector(const UnitarySpace& s, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> el(0, s.ring().order() - 1);
  std::vector<Elem> v(static_cast<std::size_t>(s.dim()));
  for (auto& x : v) x = static_cast<Elem>(el(rng));
  return v;
}

}  // namespace

TEST_CASE("omega positions") {
  const auto om = omega(3);
  REQUIRE(om.size() == 6);
  CHECK(om[0].value == 1);
  CHECK(om[2].value == 3);
  CHECK(om[3].value == -3);
  CHECK(om[5].value == -1);
  for (int p = 0; p < 6; ++p) CHECK(OmegaIndex::from_position(p, 3).position(3) == p);
}

TEST_CASE("forms on basis vectors") {
  const UnitarySpace s(fixtures::z4_symplectic(), 3);
  const auto e1 = s.basis_vector(OmegaIndex{1}), em1 = s.basis_vector(OmegaIndex{-1}),
             e2 = s.basis_vector(OmegaIndex{2});
  auto t = s.eval_forms(e1, em1);
  CHECK(t.f_value == 1);
  CHECK(t.h_value == 1);
  t = s.eval_forms(em1, e1);
  CHECK(t.f_value == 0);
  CHECK(t.h_value == 3);
  t = s.eval_forms(e1, e2);
  CHECK(t.f_value == 0);
  CHECK(t.h_value == 0);
  CHECK(t.q_value == 0);
  CHECK_THROWS_AS(s.eval_forms(e1, std::vector<Elem>(4)), Error);
}

TEST_CASE("h equals f + lambda conj f on random vectors") {
  std::mt19937_64 rng(7);
  for (const auto& fr : {fixtures::z4_symplectic(), fixtures::f4_unitary()}) {
    const UnitarySpace s(fr, 3);
    for (int k = 0; k < 10000; ++k) {
      CHECK_NOTHROW(s.eval_forms(random_vector(s, rng), random_vector(s, rng)));
    }
  }
}

TEST_CASE("transvection shapes") {
  const UnitarySpace s(fixtures::z4_symplectic(), 3);
  CHECK(s.is_identity(s.transvection(1, 2, 0)));
  const UMatrix t = s.transvection(1, -1, 2);
  UMatrix expect = s.identity();
  expect.at(OmegaIndex{1}, OmegaIndex{-1}) = 2;
  CHECK(t == expect);
  CHECK(s.is_identity(s.mul(s.transvection(1, 2, 1), s.transvection(1, 2, 3))));
  // T_12(1) = e + e_12 - e_{-2,-1}
  const UMatrix t12 = s.transvection(1, 2, 1);
  CHECK(t12.at(OmegaIndex{1}, OmegaIndex{2}) == 1);
  CHECK(t12.at(OmegaIndex{-2}, OmegaIndex{-1}) == 3);
  CHECK_THROWS_AS(s.transvection(1, 1, 1), AdmissibilityError);
  // orthogonal F2: Λ = 0 so no nontrivial long roots
  const UnitarySpace o(fixtures::f2_orthogonal(), 3);
  CHECK_THROWS_AS(o.transvection(1, -1, 1), AdmissibilityError);
}

TEST_CASE("gu membership agrees with the basis-pair oracle") {
  std::mt19937_64 rng(11);
  for (const auto& fr : {fixtures::f2_symplectic(), fixtures::f2_orthogonal(), fixtures::z4_symplectic(),
                         fixtures::f4_unitary()}) {
    const UnitarySpace s(fr, 3);
    const auto gens = s.fu_generators(absolute_form_ideal(fr));
    CHECK(s.gu_membership(s.identity()));
    for (const auto& g : gens) CHECK(s.gu_membership(g));
    for (const auto& g : s.torus_and_swaps()) CHECK(gu_oracle(s, g));
    for (int k = 0; k < 300; ++k) {
      const UMatrix g = random_word(s, gens, 12, rng);
      CHECK(s.gu_membership(g));
      // perturb one entry
      UMatrix p = g;
      p.at(static_cast<int>(rng() % 6), static_cast<int>(rng() % 6)) =
          static_cast<Elem>(rng() % static_cast<unsigned>(fr.r().order()));
      bool ok = false;
      try {
        ok = s.gu_membership(p);
      } catch (const SingularMatrixError&) {
        ok = false;
      }
      CHECK(ok == gu_oracle(s, p));
    }
  }
}

TEST_CASE("gu membership rejects e + e_12 and singular input") {
  const UnitarySpace s(fixtures::z4_symplectic(), 3);
  UMatrix g = s.identity();
  g.at(OmegaIndex{1}, OmegaIndex{2}) = 1;
  CHECK_FALSE(s.gu_membership(g));
  CHECK(h_oracle(s, g, OmegaIndex{2}.position(3), OmegaIndex{-1}.position(3)) == 1);
  UMatrix z = s.identity();
  z.at(0, 0) = 2;
  CHECK_THROWS_AS(s.gu_membership(z), SingularMatrixError);
}

TEST_CASE("determinant matches the Leibniz expansion") {
  std::mt19937_64 rng(3);
  for (const auto& fr : {fixtures::z4_symplectic(), fixtures::f4_unitary()}) {
    const UnitarySpace s(fr, 3);
    for (int k = 0; k < 200; ++k) {
      const UMatrix g = random_matrix(s, rng);
      CHECK(determinant(fr.r(), g) == det_oracle(fr.r(), g));
    }
  }
  const UnitarySpace s2(fixtures::z4_symplectic(), 2);
  for (int k = 0; k < 200; ++k) {
    const UMatrix g = random_matrix(s2, rng);
    CHECK(determinant(s2.ring(), g) == det_oracle(s2.ring(), g));
  }
}

TEST_CASE("inverse of arbitrary invertible matrices") {
  std::mt19937_64 rng(5);
  const UnitarySpace s(fixtures::z4_symplectic(), 2);
  int found = 0;
  for (int k = 0; k < 200; ++k) {
    const UMatrix g = random_matrix(s, rng);
    if (s.is_invertible(g)) {
      ++found;
      const UMatrix inv = s.inverse(g);
      CHECK(s.is_identity(s.mul(g, inv)));
      CHECK(s.is_identity(s.mul(inv, g)));
    } else {
      CHECK_THROWS_AS(s.inverse(g), SingularMatrixError);
    }
  }
  CHECK(found > 0);
}

TEST_CASE("unit detection without a determinant on a noncommutative ring") {
  // upper triangular 2x2 matrices over F2 with the transpose-antidiagonal involution
  // are noncommutative; build them from tables
  const int order = 8;  // (a, b, d) -> [[a, b], [0, d]]
  auto enc = [](int a, int b, int d) { return static_cast<Elem>(a | (b << 1) | (d << 2)); };
  std::vector<Elem> add(64), mul(64), conj(8);
  for (int x = 0; x < order; ++x) {
    const int a = x & 1, b = (x >> 1) & 1, d = (x >> 2) & 1;
    conj[x] = enc(d, b, a);
    for (int y = 0; y < order; ++y) {
      const int a2 = y & 1, b2 = (y >> 1) & 1, d2 = (y >> 2) & 1;
      add[x * 8 + y] = enc(a ^ a2, b ^ b2, d ^ d2);
      mul[x * 8 + y] = enc(a & a2, (a & b2) ^ (b & d2), d & d2);
    }
  }
  auto r = fixtures::share(InvolutiveRing::from_tables(order, add, mul, conj, "T2(F2)"));
  REQUIRE_FALSE(r->commutative());
  const auto fr = make_form_ring(r, r->one(), lambda_bounds(*r, r->one()).max);
  const UnitarySpace s(fr, 1);
  std::mt19937_64 rng(9);
  int invertible = 0;
  for (int k = 0; k < 300; ++k) {
    const UMatrix g = random_matrix(s, rng);
    // brute-force search for a two-sided inverse
    bool has = false;
    for (int m = 0; m < 8 * 8 * 8 * 8 && !has; ++m) {
      UMatrix c(2);
      c.at(0, 0) = Elem(m & 7);
      c.at(0, 1) = Elem((m >> 3) & 7);
      c.at(1, 0) = Elem((m >> 6) & 7);
      c.at(1, 1) = Elem((m >> 9) & 7);
      has = s.is_identity(s.mul(g, c)) && s.is_identity(s.mul(c, g));
    }
    CHECK(s.is_invertible(g) == has);
    invertible += has;
  }
  CHECK(invertible > 0);
}

TEST_CASE("sparse products agree with dense products") {
  std::mt19937_64 rng(13);
  const UnitarySpace s(fixtures::f4_unitary(), 3);
  const auto gens = s.fu_generators(absolute_form_ideal(s.form_ring()));
  for (int k = 0; k < 500; ++k) {
    const UMatrix a = random_matrix(s, rng);
    const UMatrix g = k % 2 ? gens[rng() % gens.size()] : random_matrix(s, rng);
    const auto p = s.prepare(g);
    CHECK(s.mul(a, p) == s.mul(a, g));
    CHECK(s.mul(p, a) == s.mul(g, a));
  }
}

TEST_CASE("encoding round trip and injectivity") {
  std::mt19937_64 rng(17);
  const UnitarySpace s(fixtures::z4_symplectic(), 3);
  for (int k = 0; k < 1000; ++k) {
    const UMatrix a = random_matrix(s, rng), b = random_matrix(s, rng);
    CHECK(s.decode(s.encode(a)) == a);
    CHECK((a == b) == (s.encode(a) == s.encode(b)));
  }
  const UnitarySpace t(fixtures::f2_symplectic(), 4);
  const UMatrix a = random_matrix(t, rng);
  CHECK(t.decode(t.encode(a)) == a);
}

TEST_CASE("congruence membership") {
  using namespace fixtures;
  const UnitarySpace s(z4_symplectic(), 3);
  for (const auto& fi : {z4_O(), z4_P(), z4_Q(), z4_A()}) CHECK(s.congruence_membership(fi, s.identity()));
  CHECK(s.congruence_membership(z4_Q(), s.transvection(1, 2, 2)));
  CHECK_FALSE(s.congruence_membership(z4_Q(), s.transvection(1, 2, 1)));
  CHECK(s.congruence_membership(z4_Q(), s.transvection(1, -1, 2)));
  // T_{-1,1}(2) sends e_1 to e_1 + 2e_{-1}, f-defect 2
  CHECK(s.congruence_membership(z4_Q(), s.transvection(-1, 1, 2)));
  CHECK_FALSE(s.congruence_membership(z4_P(), s.transvection(-1, 1, 2)));
  CHECK(s.congruence_membership(z4_P(), s.transvection(1, 2, 2)));
  for (const auto& fi : {z4_P(), z4_Q()}) {
    for (const auto& g : s.fu_generators(fi)) CHECK(s.congruence_membership(fi, g));
    for (const auto& g : s.eu_generator_set(fi)) CHECK(s.congruence_membership(fi, g));
  }
}

TEST_CASE("congruence subgroups are closed and normal on random members") {
  using namespace fixtures;
  std::mt19937_64 rng(19);
  const UnitarySpace s(z4_symplectic(), 3);
  const auto abs = s.fu_generators(z4_A());
  for (const auto& fi : {z4_P(), z4_Q()}) {
    const auto gens = s.eu_generator_set(fi);
    for (int k = 0; k < 10000; ++k) {
      const UMatrix x = random_word(s, gens, 4, rng), y = random_word(s, gens, 4, rng);
      CHECK(s.congruence_membership(fi, s.mul(x, y)));
      CHECK(s.congruence_membership(fi, s.unitary_inverse(x)));
      CHECK(s.congruence_membership(fi, s.conjugate(random_word(s, abs, 4, rng), x)));
    }
  }
}

TEST_CASE("full congruence membership") {
  using namespace fixtures;
  const UnitarySpace s(z4_symplectic(), 3);
  const auto ambient = s.fu_generators(z4_A());
  UMatrix minus_e = s.identity();
  for (int i = 0; i < 6; ++i) minus_e.at(i, i) = 3;
  CHECK(s.gu_membership(minus_e));
  CHECK(s.cu_membership(z4_O(), minus_e, ambient));
  CHECK(s.cu_membership(z4_O(), s.identity(), ambient));
  const UMatrix g = s.transvection(1, 2, 1);
  CHECK_FALSE(s.cu_membership(z4_Q(), g, ambient));
  CHECK(s.commutator(g, s.transvection(2, 3, 1)) == s.transvection(1, 3, 1));
  CHECK_FALSE(s.congruence_membership(z4_Q(), s.transvection(1, 3, 1)));
}

TEST_CASE("Z generators") {
  using namespace fixtures;
  const UnitarySpace s(z4_symplectic(), 3);
  const OmegaIndex i{1}, j{2};
  CHECK(s.z_generator(z4_Q(), i, j, 2, 0) == s.transvection(1, 2, 2));
  CHECK(s.is_identity(s.z_generator(z4_Q(), i, j, 0, 1)));
  const UMatrix z = s.z_generator(z4_Q(), i, j, 2, 1);
  const UMatrix direct =
      s.mul(s.mul(s.transvection(2, 1, 1), s.transvection(1, 2, 2)), s.transvection(2, 1, 3));
  CHECK(z == direct);
  CHECK(s.congruence_membership(z4_Q(), z));
  CHECK_THROWS_AS(s.z_generator(z4_Q(), i, j, 1, 0), AdmissibilityError);
}

TEST_CASE("FU generator counts") {
  const UnitarySpace s(fixtures::f2_symplectic(), 3);
  // 12 short root subgroups and 6 long root subgroups, one nonzero parameter each
  CHECK(s.fu_generators(absolute_form_ideal(s.form_ring())).size() == 18);
  CHECK(s.fu_generators(zero_form_ideal(s.form_ring())).empty());
  const UnitarySpace o(fixtures::f2_orthogonal(), 3);
  CHECK(o.fu_generators(absolute_form_ideal(o.form_ring())).size() == 12);
}

TEST_CASE("torus and swaps lie in GU") {
  for (const auto& fr : {fixtures::f2_orthogonal(), fixtures::z4_symplectic(), fixtures::f4_unitary()}) {
    const UnitarySpace s(fr, 3);
    const auto ts = s.torus_and_swaps();
    CHECK_FALSE(ts.empty());
    for (const auto& g : ts) CHECK(s.gu_membership(g));
  }
}

TEST_CASE("commutator identities on random GU elements") {
  std::mt19937_64 rng(23);
  const UnitarySpace s(fixtures::z4_symplectic(), 3);
  auto gens = s.fu_generators(absolute_form_ideal(s.form_ring()));
  for (const auto& g : s.torus_and_swaps()) gens.push_back(g);
  const auto inv = [&](const UMatrix& a) { return s.unitary_inverse(a); };
  const auto c = [&](const UMatrix& a, const UMatrix& b) { return s.commutator(a, b); };
  const auto cj = [&](const UMatrix& a, const UMatrix& b) { return s.conjugate(a, b); };
  for (int k = 0; k < 200; ++k) {
    const UMatrix x = random_word(s, gens, 6, rng), y = random_word(s, gens, 6, rng),
                  z = random_word(s, gens, 6, rng);
    CHECK(c(x, s.mul(y, z)) == s.mul(c(x, y), cj(y, c(x, z))));
    CHECK(c(s.mul(x, y), z) == s.mul(cj(x, c(y, z)), c(x, z)));
    const UMatrix hw = s.mul(s.mul(cj(x, c(c(inv(x), y), z)), cj(z, c(c(inv(z), x), y))),
                             cj(y, c(c(inv(y), z), x)));
    CHECK(s.is_identity(hw));
    CHECK(c(x, cj(y, z)) == cj(y, c(cj(inv(y), x), z)));
    CHECK(c(cj(y, x), z) == cj(y, c(x, cj(inv(y), z))));
    CHECK(inv(c(x, y)) == c(y, x));
  }
}

TEST_CASE("theorem generators") {
  using namespace fixtures;
  const UnitarySpace s(z4_symplectic(), 3);
  // zero left level: only family 3 at level (0,0), which is trivial
  CHECK(theorem_generators(s, z4_O(), z4_Q(), {}).empty());
  const auto gens = theorem_generators(s, z4_Q(), z4_A(), {});
  CHECK_FALSE(gens.empty());
  for (const auto& g : gens) {
    CHECK(s.gu_membership(g));
    CHECK(s.congruence_membership(z4_Q(), g));
  }
  const auto words = words_up_to_length(s, s.fu_generators(z4_A()), 1);
  const auto conj = theorem_generators(s, z4_Q(), z4_A(), words);
  CHECK(conj.size() >= gens.size());
}

TEST_CASE("words up to length") {
  const UnitarySpace s(fixtures::f2_symplectic(), 1);
  const auto gens = s.fu_generators(absolute_form_ideal(s.form_ring()));
  REQUIRE(gens.size() == 2);
  CHECK(words_up_to_length(s, gens, 0).size() == 1);
  CHECK(words_up_to_length(s, gens, 1).size() == 3);
  // SL(2,2) has 6 elements
  CHECK(words_up_to_length(s, gens, 10).size() == 6);
}
