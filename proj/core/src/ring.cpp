#include "formring/ring.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "formring/error.hpp"

namespace formring {

namespace {

std::string elem_str(Elem e) { return std::to_string(static_cast<int>(e)); }

int bits_for(int order) {
  int b = 1;
  while ((1 << b) < order) ++b;
  return b;
}

}  // namespace

InvolutiveRing::InvolutiveRing(int order, std::vector<Elem> add, std::vector<Elem> mul,
                               std::vector<Elem> conj, std::string name)
    : order_(order),
      name_(std::move(name)),
      add_(std::move(add)),
      mul_(std::move(mul)),
      conj_(std::move(conj)) {
  validate_and_derive();
}

void InvolutiveRing::validate_and_derive() {
  if (order_ < 1 || order_ > kMaxRingOrder) {
    throw RingError("ring order must lie in [1, 64], got " + std::to_string(order_));
  }
  const auto n = static_cast<std::size_t>(order_);
  if (add_.size() != n * n || mul_.size() != n * n || conj_.size() != n) {
    throw RingError("table sizes do not match ring order " + std::to_string(order_));
  }
  auto in_range = [&](const std::vector<Elem>& t) {
    return std::all_of(t.begin(), t.end(), [&](Elem e) { return e < order_; });
  };
  if (!in_range(add_) || !in_range(mul_) || !in_range(conj_)) {
    throw RingError("table entry out of range");
  }

  auto elems = [&] {
    std::vector<Elem> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<Elem>(i);
    return v;
  }();

  // additive identity
  bool found = false;
  for (Elem z : elems) {
    if (std::all_of(elems.begin(), elems.end(), [&](Elem a) { return add(z, a) == a && add(a, z) == a; })) {
      zero_ = z;
      found = true;
      break;
    }
  }
  if (!found) throw RingError("no additive identity");

  found = false;
  for (Elem u : elems) {
    if (std::all_of(elems.begin(), elems.end(), [&](Elem a) { return mul(u, a) == a && mul(a, u) == a; })) {
      one_ = u;
      found = true;
      break;
    }
  }
  if (!found) throw RingError("no multiplicative identity");

  neg_.assign(n, kNoInverse);
  for (Elem a : elems) {
    for (Elem b : elems) {
      if (add(a, b) == zero_) {
        neg_[a] = b;
        break;
      }
    }
    if (neg_[a] == kNoInverse) throw RingError("element " + elem_str(a) + " has no additive inverse");
  }

  for (Elem a : elems) {
    for (Elem b : elems) {
      if (add(a, b) != add(b, a)) throw RingError("addition is not commutative");
      if (mul(a, b) != mul(b, a)) commutative_ = false;
      for (Elem c : elems) {
        if (add(add(a, b), c) != add(a, add(b, c))) throw RingError("addition is not associative");
        if (mul(mul(a, b), c) != mul(a, mul(b, c))) throw RingError("multiplication is not associative");
        if (mul(a, add(b, c)) != add(mul(a, b), mul(a, c)) ||
            mul(add(a, b), c) != add(mul(a, c), mul(b, c))) {
          throw RingError("multiplication does not distribute over addition");
        }
      }
    }
  }

  for (Elem a : elems) {
    if (conj(conj(a)) != a) throw RingError("involution does not have order <= 2");
    for (Elem b : elems) {
      if (conj(add(a, b)) != add(conj(a), conj(b))) throw RingError("involution is not additive");
      if (conj(mul(a, b)) != mul(conj(b), conj(a))) {
        throw RingError("involution is not an anti-homomorphism");
      }
    }
  }

  inv_.assign(n, kNoInverse);
  for (Elem a : elems) {
    for (Elem b : elems) {
      if (mul(a, b) == one_ && mul(b, a) == one_) {
        inv_[a] = b;
        break;
      }
    }
  }
  element_bits_ = bits_for(order_);
}

InvolutiveRing InvolutiveRing::zmod(int m) {
  if (m < 1 || m > kMaxRingOrder) throw RingError("Z/m requires 1 <= m <= 64");
  const auto n = static_cast<std::size_t>(m);
  std::vector<Elem> add(n * n), mul(n * n), conj(n);
  for (int a = 0; a < m; ++a) {
    conj[a] = static_cast<Elem>(a);
    for (int b = 0; b < m; ++b) {
      add[a * n + b] = static_cast<Elem>((a + b) % m);
      mul[a * n + b] = static_cast<Elem>((a * b) % m);
    }
  }
  return InvolutiveRing(m, std::move(add), std::move(mul), std::move(conj), "Z/" + std::to_string(m));
}

InvolutiveRing InvolutiveRing::quadratic(int m, int c0, int c1, int a0, int a1) {
  if (m < 1 || m * m > kMaxRingOrder) throw RingError("quadratic extension requires m*m <= 64");
  auto md = [m](long v) { return static_cast<int>(((v % m) + m) % m); };
  const int order = m * m;
  const auto n = static_cast<std::size_t>(order);
  std::vector<Elem> add(n * n), mul(n * n), conj(n);
  auto index = [m](int a, int b) { return static_cast<Elem>(a + b * m); };
  for (int x = 0; x < order; ++x) {
    const int a = x % m, b = x / m;
    conj[x] = index(md(a + static_cast<long>(b) * a0), md(static_cast<long>(b) * a1));
    for (int y = 0; y < order; ++y) {
      const int c = y % m, d = y / m;
      add[x * n + y] = index(md(a + c), md(b + d));
      // x^2 = -c1 x - c0
      const long bd = static_cast<long>(b) * d;
      mul[x * n + y] = index(md(static_cast<long>(a) * c - bd * c0),
                             md(static_cast<long>(a) * d + static_cast<long>(b) * c - bd * c1));
    }
  }
  std::ostringstream name;
  name << "Z/" << m << "[x]/(x^2+" << md(c1) << "x+" << md(c0) << ")";
  return InvolutiveRing(order, std::move(add), std::move(mul), std::move(conj), name.str());
}

InvolutiveRing InvolutiveRing::product(const InvolutiveRing& a, const InvolutiveRing& b,
                                       ProductInvolution inv) {
  const int order = a.order() * b.order();
  if (order > kMaxRingOrder) throw RingError("product ring exceeds 64 elements");
  if (inv == ProductInvolution::swap &&
      (a.add_ != b.add_ || a.mul_ != b.mul_ || a.conj_ != b.conj_)) {
    throw RingError("swap involution requires identical factors");
  }
  const auto n = static_cast<std::size_t>(order);
  const int na = a.order();
  std::vector<Elem> add(n * n), mul(n * n), conj(n);
  auto index = [na](Elem x, Elem y) { return static_cast<Elem>(x + y * na); };
  for (int p = 0; p < order; ++p) {
    const auto pa = static_cast<Elem>(p % na), pb = static_cast<Elem>(p / na);
    conj[p] = inv == ProductInvolution::swap ? index(b.conj(pb), a.conj(pa))
                                             : index(a.conj(pa), b.conj(pb));
    for (int q = 0; q < order; ++q) {
      const auto qa = static_cast<Elem>(q % na), qb = static_cast<Elem>(q / na);
      add[p * n + q] = index(a.add(pa, qa), b.add(pb, qb));
      mul[p * n + q] = index(a.mul(pa, qa), b.mul(pb, qb));
    }
  }
  std::string name = a.name() + " x " + b.name();
  if (inv == ProductInvolution::swap) name += " (swap)";
  return InvolutiveRing(order, std::move(add), std::move(mul), std::move(conj), name);
}

InvolutiveRing InvolutiveRing::from_tables(int order, std::vector<Elem> add, std::vector<Elem> mul,
                                           std::vector<Elem> conj, std::string name) {
  return InvolutiveRing(order, std::move(add), std::move(mul), std::move(conj), std::move(name));
}

Elem InvolutiveRing::inverse(Elem a) const {
  if (!is_unit(a)) throw RingError("element " + elem_str(a) + " is not a unit");
  return inv_[a];
}

std::vector<Elem> InvolutiveRing::units() const {
  std::vector<Elem> out;
  for (int a = 0; a < order_; ++a) {
    if (inv_[a] != kNoInverse) out.push_back(static_cast<Elem>(a));
  }
  return out;
}

bool InvolutiveRing::is_central(Elem a) const {
  for (int b = 0; b < order_; ++b) {
    if (mul(a, static_cast<Elem>(b)) != mul(static_cast<Elem>(b), a)) return false;
  }
  return true;
}

ValidationReport validate_symmetry(const InvolutiveRing& ring, Elem lambda) {
  ValidationReport rep;
  if (lambda >= ring.order()) {
    rep.add("symmetry index out of range");
    return rep;
  }
  if (!ring.is_central(lambda)) rep.add("lambda is not central");
  if (ring.mul(lambda, ring.conj(lambda)) != ring.one()) rep.add("lambda * conj(lambda) != 1");
  return rep;
}

LambdaBounds lambda_bounds(const InvolutiveRing& ring, Elem lambda) {
  LambdaBounds b;
  for (int i = 0; i < ring.order(); ++i) {
    const auto a = static_cast<Elem>(i);
    const Elem lc = ring.mul(lambda, ring.conj(a));
    b.min.insert(ring.sub(a, lc));
    if (a == ring.neg(lc)) b.max.insert(a);
  }
  return b;
}

bool is_additive_subgroup(const InvolutiveRing& ring, Subset s) {
  if (!s.contains(ring.zero())) return false;
  const auto el = s.elements();
  for (Elem a : el) {
    if (!s.contains(ring.neg(a))) return false;
    for (Elem b : el) {
      if (!s.contains(ring.add(a, b))) return false;
    }
  }
  return true;
}

Subset additive_closure(const InvolutiveRing& ring, Subset s) {
  Subset out{ring.zero()};
  std::vector<Elem> gens = s.elements();
  // finite additive group: closure under + by generators suffices
  std::deque<Elem> queue{ring.zero()};
  while (!queue.empty()) {
    const Elem x = queue.front();
    queue.pop_front();
    for (Elem g : gens) {
      const Elem y = ring.add(x, g);
      if (!out.contains(y)) {
        out.insert(y);
        queue.push_back(y);
      }
    }
  }
  return out;
}

bool is_stable(const InvolutiveRing& ring, Subset s) {
  const auto el = s.elements();
  for (int i = 0; i < ring.order(); ++i) {
    const auto a = static_cast<Elem>(i);
    const Elem ca = ring.conj(a);
    for (Elem x : el) {
      if (!s.contains(ring.mul(ring.mul(a, x), ca))) return false;
    }
  }
  return true;
}

Subset stable_additive_closure(const InvolutiveRing& ring, Subset s) {
  Subset cur = additive_closure(ring, s);
  for (;;) {
    Subset next = cur;
    for (int i = 0; i < ring.order(); ++i) {
      const auto a = static_cast<Elem>(i);
      const Elem ca = ring.conj(a);
      for (Elem x : cur.elements()) next.insert(ring.mul(ring.mul(a, x), ca));
    }
    next = additive_closure(ring, next);
    if (next == cur) return cur;
    cur = next;
  }
}

Subset scale(const InvolutiveRing& ring, Elem c, Subset s) {
  Subset out;
  for (Elem x : s.elements()) out.insert(ring.mul(c, x));
  return out;
}

Subset r0_subring(const InvolutiveRing& ring) {
  Subset cur{ring.zero(), ring.one()};
  for (int i = 0; i < ring.order(); ++i) {
    const auto a = static_cast<Elem>(i);
    cur.insert(ring.mul(a, ring.conj(a)));
  }
  for (;;) {
    Subset next = cur;
    const auto el = cur.elements();
    for (Elem a : el) {
      next.insert(ring.neg(a));
      for (Elem b : el) {
        next.insert(ring.add(a, b));
        next.insert(ring.mul(a, b));
      }
    }
    if (next == cur) return cur;
    cur = next;
  }
}

ValidationReport validate_form_ring(const FormRing& fr) {
  ValidationReport rep = validate_symmetry(fr.r(), fr.lambda);
  if (!rep.valid()) return rep;
  const auto& ring = fr.r();
  const Subset lam = fr.lambda_param;
  if (!lam.subset_of(ring.all())) {
    rep.add("form parameter contains out-of-range elements");
    return rep;
  }
  const auto bounds = lambda_bounds(ring, fr.lambda);
  if (!is_additive_subgroup(ring, lam)) rep.add("form parameter is not an additive subgroup");
  if (!bounds.min.subset_of(lam)) rep.add("Lambda_min is not contained in the form parameter");
  if (!lam.subset_of(bounds.max)) rep.add("form parameter is not contained in Lambda_max");
  if (!is_stable(ring, lam)) rep.add("form parameter is not stable under a*x*conj(a)");
  const Subset r0 = r0_subring(ring);
  for (Elem r : r0.elements()) {
    for (Elem x : lam.elements()) {
      if (!lam.contains(ring.mul(r, x))) {
        rep.add("form parameter is not an R0-module");
        return rep;
      }
    }
  }
  return rep;
}

FormRing make_form_ring(RingPtr ring, Elem lambda, Subset lambda_param) {
  FormRing fr{std::move(ring), lambda, lambda_param};
  const auto rep = validate_form_ring(fr);
  if (!rep.valid()) throw RingError("invalid form ring: " + rep.violations.front());
  return fr;
}

std::vector<Subset> enumerate_form_parameters(const InvolutiveRing& ring, Elem lambda,
                                              std::size_t budget) {
  if (!validate_symmetry(ring, lambda).valid()) throw RingError("invalid symmetry");
  const auto bounds = lambda_bounds(ring, lambda);
  std::set<Subset> found;
  std::deque<Subset> queue;
  const Subset start = stable_additive_closure(ring, bounds.min);
  found.insert(start);
  queue.push_back(start);
  while (!queue.empty()) {
    const Subset h = queue.front();
    queue.pop_front();
    for (Elem x : bounds.max.elements()) {
      if (h.contains(x)) continue;
      Subset g = h;
      g.insert(x);
      const Subset next = stable_additive_closure(ring, g);
      if (!next.subset_of(bounds.max)) continue;
      if (found.insert(next).second) {
        if (found.size() > budget) throw BudgetExceeded("form parameter enumeration exceeded budget");
        queue.push_back(next);
      }
    }
  }
  return {found.begin(), found.end()};
}

}  // namespace formring
