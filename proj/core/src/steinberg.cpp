#include "formring/steinberg.hpp"

#include <cstdlib>
#include <random>

#include "formring/error.hpp"

namespace formring {

std::string to_string(Relation r) {
  return "R" + std::to_string(static_cast<int>(r) + 1);
}

std::string to_string(Relation r, const RelationArgs& a) {
  auto s = to_string(r) + "(i=" + std::to_string(a.i.value) + ",j=" + std::to_string(a.j.value);
  if (r == Relation::R3 || r == Relation::R4) s += ",h=" + std::to_string(a.h.value);
  if (r == Relation::R3) s += ",k=" + std::to_string(a.k.value);
  return s + ",xi=" + std::to_string(a.xi) + ",zeta=" + std::to_string(a.zeta) + ")";
}

namespace {

bool pm(OmegaIndex a, OmegaIndex b) { return a == b || a == b.opposite(); }

void require(bool ok, const char* what) {
  if (!ok) throw AdmissibilityError(what);
}

void validate(const UnitarySpace& s, Relation r, const RelationArgs& a) {
  const FormIdeal abs = absolute_form_ideal(s.form_ring());
  const auto in_omega = [&](OmegaIndex x) {
    return x.value != 0 && std::abs(x.value) <= s.n();
  };
  require(in_omega(a.i) && in_omega(a.j), "index outside Omega");
  const Subset all = s.ring().all();
  switch (r) {
    case Relation::R1:
      require(!pm(a.i, a.j), "R1 needs i != +-j");
      require(all.contains(a.xi), "R1 parameter outside A");
      break;
    case Relation::R2:
      require(a.i != a.j, "R2 needs i != j");
      require(s.admissible(abs, a.i, a.j).contains(a.xi) &&
                  s.admissible(abs, a.i, a.j).contains(a.zeta),
              "R2 parameter not admissible");
      break;
    case Relation::R3:
      require(in_omega(a.h) && in_omega(a.k), "index outside Omega");
      require(a.i != a.j && a.h != a.k, "R3 needs i != j and h != k");
      require(a.h != a.j && a.h != a.i.opposite(), "R3 needs h != j, -i");
      require(a.k != a.i && a.k != a.j.opposite(), "R3 needs k != i, -j");
      require(s.admissible(abs, a.i, a.j).contains(a.xi) &&
                  s.admissible(abs, a.h, a.k).contains(a.zeta),
              "R3 parameter not admissible");
      break;
    case Relation::R4:
      require(in_omega(a.h), "index outside Omega");
      require(!pm(a.i, a.j) && !pm(a.h, a.j) && !pm(a.i, a.h), "R4 needs i,h != +-j and i != +-h");
      require(all.contains(a.xi) && all.contains(a.zeta), "R4 parameter outside A");
      break;
    case Relation::R5:
      require(!pm(a.i, a.j), "R5 needs i != +-j");
      require(all.contains(a.xi) && all.contains(a.zeta), "R5 parameter outside A");
      break;
    case Relation::R6:
      require(!pm(a.i, a.j), "R6 needs i != +-j");
      require(s.long_root_parameters(a.i, s.form_ring().lambda_param).contains(a.xi),
              "R6 long-root parameter not admissible");
      require(all.contains(a.zeta), "R6 parameter outside A");
      break;
  }
}

// e + alpha e_{i,-i}, without the admissibility test, so that a wrong
// right-hand side shows up as a mismatch instead of an exception.
UMatrix long_root(const UnitarySpace& s, OmegaIndex i, Elem alpha) {
  UMatrix t = s.identity();
  t.at(i, i.opposite()) = alpha;
  return t;
}

}  // namespace

int r6_exponent(OmegaIndex i, OmegaIndex j, R6Exponent form) {
  const int other = form == R6Exponent::derived ? i.opposite().sign() : i.sign();
  return (j.sign() - other) / 2;
}

UMatrix r6_right_side(const UnitarySpace& s, OmegaIndex i, OmegaIndex j, Elem alpha, Elem xi,
                      R6Exponent form) {
  const auto& R = s.ring();
  const Elem c = s.lambda_power(r6_exponent(i, j, form));
  const Elem beta = R.neg(R.mul(c, R.mul(R.mul(R.conj(xi), alpha), xi)));
  return s.mul(s.transvection(i, j, R.mul(alpha, xi)), long_root(s, j.opposite(), beta));
}

bool steinberg_relation_check(const UnitarySpace& s, Relation r, const RelationArgs& a) {
  validate(s, r, a);
  const auto& R = s.ring();
  const OmegaIndex i = a.i, j = a.j, h = a.h, k = a.k;
  switch (r) {
    case Relation::R1: {
      const Elem c = s.lambda_power((j.sign() - i.sign()) / 2);
      return s.transvection(i, j, a.xi) ==
             s.transvection(j.opposite(), i.opposite(), R.neg(R.mul(c, R.conj(a.xi))));
    }
    case Relation::R2:
      return s.mul(s.transvection(i, j, a.xi), s.transvection(i, j, a.zeta)) ==
             s.transvection(i, j, R.add(a.xi, a.zeta));
    case Relation::R3:
      return s.is_identity(s.commutator(s.transvection(i, j, a.xi), s.transvection(h, k, a.zeta)));
    case Relation::R4:
      return s.commutator(s.transvection(i, j, a.xi), s.transvection(j, h, a.zeta)) ==
             s.transvection(i, h, R.mul(a.xi, a.zeta));
    case Relation::R5: {
      const Elem c = s.lambda_power(-i.sign());
      const Elem rhs =
          R.sub(R.mul(a.xi, a.zeta), R.mul(c, R.mul(R.conj(a.zeta), R.conj(a.xi))));
      return s.commutator(s.transvection(i, j, a.xi), s.transvection(j, i.opposite(), a.zeta)) ==
             long_root(s, i, rhs);
    }
    case Relation::R6:
      return s.commutator(s.transvection(i, i.opposite(), a.xi),
                          s.transvection(i.opposite(), j, a.zeta)) ==
             r6_right_side(s, i, j, a.xi, a.zeta, R6Exponent::derived);
  }
  return false;
}

namespace {

void record(SweepResult& out, const UnitarySpace& s, Relation r, const RelationArgs& a) {
  ++out.checked;
  if (!steinberg_relation_check(s, r, a)) {
    ++out.failures;
    if (!out.first_failure) out.first_failure = std::make_pair(r, a);
  }
}

}  // namespace

SweepResult steinberg_exhaustive(const UnitarySpace& s, const std::vector<Relation>& relations) {
  SweepResult out;
  const FormIdeal abs = absolute_form_ideal(s.form_ring());
  const auto om = omega(s.n());
  const auto all = s.ring().all().elements();
  const Subset lam = s.form_ring().lambda_param;
  for (Relation r : relations) {
    for (OmegaIndex i : om) {
      for (OmegaIndex j : om) {
        if (i == j) continue;
        switch (r) {
          case Relation::R1:
            if (pm(i, j)) break;
            for (Elem x : all) record(out, s, r, {i, j, {}, {}, x, 0});
            break;
          case Relation::R2: {
            const auto adm = s.admissible(abs, i, j).elements();
            for (Elem x : adm) {
              for (Elem z : adm) record(out, s, r, {i, j, {}, {}, x, z});
            }
            break;
          }
          case Relation::R3:
            for (OmegaIndex h : om) {
              for (OmegaIndex k : om) {
                if (h == k || h == j || h == i.opposite() || k == i || k == j.opposite()) continue;
                const auto za = s.admissible(abs, h, k).elements();
                for (Elem x : s.admissible(abs, i, j).elements()) {
                  for (Elem z : za) record(out, s, r, {i, j, h, k, x, z});
                }
              }
            }
            break;
          case Relation::R4:
            for (OmegaIndex h : om) {
              if (pm(i, j) || pm(h, j) || pm(i, h)) continue;
              for (Elem x : all) {
                for (Elem z : all) record(out, s, r, {i, j, h, {}, x, z});
              }
            }
            break;
          case Relation::R5:
            if (pm(i, j)) break;
            for (Elem x : all) {
              for (Elem z : all) record(out, s, r, {i, j, {}, {}, x, z});
            }
            break;
          case Relation::R6:
            if (pm(i, j)) break;
            for (Elem x : s.long_root_parameters(i, lam).elements()) {
              for (Elem z : all) record(out, s, r, {i, j, {}, {}, x, z});
            }
            break;
        }
      }
    }
  }
  return out;
}

SweepResult steinberg_random(const UnitarySpace& s, std::uint64_t count, std::uint64_t seed) {
  SweepResult out;
  std::mt19937_64 rng(seed);
  const FormIdeal abs = absolute_form_ideal(s.form_ring());
  const auto om = omega(s.n());
  std::uniform_int_distribution<std::size_t> pick_index(0, om.size() - 1);
  std::uniform_int_distribution<int> pick_rel(0, 5);
  const auto pick = [&](Subset set) {
    const auto el = set.elements();
    return el[std::uniform_int_distribution<std::size_t>(0, el.size() - 1)(rng)];
  };
  const Subset all = s.ring().all();
  for (std::uint64_t n = 0; n < count; ++n) {
    const auto r = static_cast<Relation>(pick_rel(rng));
    for (;;) {
      RelationArgs a{om[pick_index(rng)], om[pick_index(rng)], om[pick_index(rng)],
                     om[pick_index(rng)], 0, 0};
      bool ok = a.i != a.j;
      switch (r) {
        case Relation::R1:
        case Relation::R5:
        case Relation::R6:
          ok = ok && !pm(a.i, a.j);
          break;
        case Relation::R2:
          break;
        case Relation::R3:
          ok = ok && a.h != a.k && a.h != a.j && a.h != a.i.opposite() && a.k != a.i &&
               a.k != a.j.opposite();
          break;
        case Relation::R4:
          ok = ok && !pm(a.i, a.j) && !pm(a.h, a.j) && !pm(a.i, a.h);
          break;
      }
      if (!ok) continue;
      switch (r) {
        case Relation::R2:
          a.xi = pick(s.admissible(abs, a.i, a.j));
          a.zeta = pick(s.admissible(abs, a.i, a.j));
          break;
        case Relation::R3:
          a.xi = pick(s.admissible(abs, a.i, a.j));
          a.zeta = pick(s.admissible(abs, a.h, a.k));
          break;
        case Relation::R6:
          a.xi = pick(s.long_root_parameters(a.i, s.form_ring().lambda_param));
          a.zeta = pick(all);
          break;
        default:
          a.xi = pick(all);
          a.zeta = pick(all);
      }
      record(out, s, r, a);
      break;
    }
  }
  return out;
}

}  // namespace formring
