#include "formring/unitary.hpp"

#include <absl/container/flat_hash_set.h>

#include <cstdlib>
#include <sstream>

#include "formring/error.hpp"

namespace formring {

std::vector<OmegaIndex> omega(int n) {
  std::vector<OmegaIndex> out;
  out.reserve(static_cast<std::size_t>(2 * n));
  for (int pos = 0; pos < 2 * n; ++pos) out.push_back(OmegaIndex::from_position(pos, n));
  return out;
}

UnitarySpace::UnitarySpace(FormRing fr, int n) : fr_(std::move(fr)), n_(n) {
  if (!fr_.ring) throw RingError("form ring without a ring");
  if (n < 1 || 2 * n > kMaxDim) throw Error("half-dimension out of range 1..4");
  if (fr_.r().zero() != 0) throw RingError("ring zero must be element 0");
  bits_ = fr_.r().element_bits();
  if (bits_ * dim() * dim() > 256) throw Error("matrix key exceeds 256 bits");
  id_ = UMatrix(dim());
  for (int i = 0; i < dim(); ++i) id_.at(i, i) = fr_.r().one();
}

UMatrix UnitarySpace::identity() const { return id_; }

UMatrix UnitarySpace::zero_matrix() const { return UMatrix(dim()); }

UMatrix UnitarySpace::mul(const UMatrix& a, const UMatrix& b) const {
  const auto& R = ring();
  const int d = dim();
  UMatrix c(d);
  for (int r = 0; r < d; ++r) {
    Elem* out = c.row(r);
    const Elem* ar = a.row(r);
    for (int m = 0; m < d; ++m) {
      const Elem x = ar[m];
      if (x == 0) continue;
      const Elem* mr = R.mul_row(x);
      const Elem* br = b.row(m);
      for (int k = 0; k < d; ++k) {
        if (br[k] != 0) out[k] = R.add(out[k], mr[br[k]]);
      }
    }
  }
  return c;
}

PreparedMatrix UnitarySpace::prepare(const UMatrix& g) const {
  const auto& R = ring();
  PreparedMatrix p{g, {}, false};
  for (int r = 0; r < dim(); ++r) {
    for (int c = 0; c < dim(); ++c) {
      const Elem v = R.sub(g.at(r, c), id_.at(r, c));
      if (v != 0) {
        p.delta.entries.push_back(
            {static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(c), v});
      }
    }
  }
  p.sparse = static_cast<int>(p.delta.entries.size()) <= dim();
  return p;
}

UMatrix UnitarySpace::mul(const UMatrix& a, const PreparedMatrix& b) const {
  if (!b.sparse) return mul(a, b.m);
  const auto& R = ring();
  UMatrix c = a;
  for (const auto& e : b.delta.entries) {
    for (int r = 0; r < dim(); ++r) {
      const Elem x = a.at(r, e.row);
      if (x != 0) c.at(r, e.col) = R.add(c.at(r, e.col), R.mul(x, e.value));
    }
  }
  return c;
}

UMatrix UnitarySpace::mul(const PreparedMatrix& a, const UMatrix& b) const {
  if (!a.sparse) return mul(a.m, b);
  const auto& R = ring();
  UMatrix c = b;
  for (const auto& e : a.delta.entries) {
    const Elem* mr = R.mul_row(e.value);
    const Elem* br = b.row(e.col);
    Elem* out = c.row(e.row);
    for (int k = 0; k < dim(); ++k) {
      if (br[k] != 0) out[k] = R.add(out[k], mr[br[k]]);
    }
  }
  return c;
}

UMatrix UnitarySpace::unitary_inverse(const UMatrix& g) const {
  const auto& R = ring();
  const Elem lam = fr_.lambda;
  const Elem lam_bar = R.conj(lam);
  UMatrix out(dim());
  for (const OmegaIndex a : omega(n_)) {
    for (const OmegaIndex b : omega(n_)) {
      Elem v = R.conj(g.at(b.opposite(), a.opposite()));
      if (a.value > 0) v = R.mul(lam_bar, v);
      if (b.value > 0) v = R.mul(v, lam);
      out.at(a, b) = v;
    }
  }
  return out;
}

Elem determinant(const InvolutiveRing& ring, const UMatrix& g) {
  if (!ring.commutative()) throw RingError("determinant requires a commutative ring");
  const int d = g.dim();
  if (d == 0) return ring.one();
  // Bird: X_{k+1} = mu(X_k) * g, mu zeroes below the diagonal and puts minus
  // the trailing diagonal sums on the diagonal.
  UMatrix x = g;
  for (int step = 1; step < d; ++step) {
    UMatrix mu(d);
    Elem acc = ring.zero();
    for (int i = d - 1; i >= 0; --i) {
      mu.at(i, i) = ring.neg(acc);
      acc = ring.add(acc, x.at(i, i));
      for (int j = i + 1; j < d; ++j) mu.at(i, j) = x.at(i, j);
    }
    UMatrix next(d);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        Elem s = ring.zero();
        for (int k = 0; k < d; ++k) s = ring.add(s, ring.mul(mu.at(i, k), g.at(k, j)));
        next.at(i, j) = s;
      }
    }
    x = next;
  }
  const Elem top = x.at(0, 0);
  return d % 2 == 1 ? top : ring.neg(top);
}

bool UnitarySpace::is_invertible(const UMatrix& g) const {
  const auto& R = ring();
  if (R.commutative()) return R.is_unit(determinant(R, g));
  // In a finite monoid g is a unit iff the sequence e, g, g^2, ... is purely
  // periodic. Brent's cycle detection gives the tail length.
  const UMatrix e = id_;
  std::size_t power = 1, lam = 1;
  UMatrix tortoise = e, hare = g;
  while (tortoise != hare) {
    if (power == lam) {
      tortoise = hare;
      power *= 2;
      lam = 0;
    }
    hare = mul(hare, g);
    ++lam;
  }
  UMatrix ahead = e;
  for (std::size_t i = 0; i < lam; ++i) ahead = mul(ahead, g);
  return ahead == e;
}

UMatrix UnitarySpace::inverse(const UMatrix& g) const {
  const UMatrix cand = unitary_inverse(g);
  if (mul(cand, g) == id_ && mul(g, cand) == id_) return cand;
  if (!is_invertible(g)) throw SingularMatrixError("matrix is singular");
  // g^{-1} = g^{k-1} where k is the order of g.
  UMatrix prev = id_, cur = g;
  while (cur != id_) {
    prev = cur;
    cur = mul(cur, g);
  }
  return prev;
}

UMatrix UnitarySpace::commutator(const UMatrix& x, const UMatrix& y) const {
  return mul(mul(x, y), mul(unitary_inverse(x), unitary_inverse(y)));
}

UMatrix UnitarySpace::conjugate(const UMatrix& s, const UMatrix& x) const {
  return mul(mul(s, x), unitary_inverse(s));
}

UMatrix UnitarySpace::power(const UMatrix& g, unsigned k) const {
  UMatrix out = id_, base = g;
  while (k != 0) {
    if (k & 1u) out = mul(out, base);
    base = mul(base, base);
    k >>= 1;
  }
  return out;
}

Elem UnitarySpace::f(const std::vector<Elem>& u, const std::vector<Elem>& v) const {
  if (static_cast<int>(u.size()) != dim() || static_cast<int>(v.size()) != dim()) {
    throw Error("vector length does not match 2n");
  }
  const auto& R = ring();
  Elem s = R.zero();
  for (int i = 1; i <= n_; ++i) {
    const int p = OmegaIndex{i}.position(n_), q = OmegaIndex{-i}.position(n_);
    s = R.add(s, R.mul(R.conj(u[p]), v[q]));
  }
  return s;
}

Elem UnitarySpace::h(const std::vector<Elem>& u, const std::vector<Elem>& v) const {
  if (static_cast<int>(u.size()) != dim() || static_cast<int>(v.size()) != dim()) {
    throw Error("vector length does not match 2n");
  }
  const auto& R = ring();
  Elem s = R.zero();
  for (int i = 1; i <= n_; ++i) {
    const int p = OmegaIndex{i}.position(n_), q = OmegaIndex{-i}.position(n_);
    s = R.add(s, R.mul(R.conj(u[p]), v[q]));
    s = R.add(s, R.mul(fr_.lambda, R.mul(R.conj(u[q]), v[p])));
  }
  return s;
}

FormsTriple UnitarySpace::eval_forms(const std::vector<Elem>& u, const std::vector<Elem>& v) const {
  const auto& R = ring();
  FormsTriple t;
  t.f_value = f(u, v);
  t.h_value = h(u, v);
  const Elem via_f = R.add(t.f_value, R.mul(fr_.lambda, R.conj(f(v, u))));
  if (via_f != t.h_value) throw Error("h disagrees with f + lambda conj(f)");
  t.q_value = f(u, u);
  return t;
}

std::vector<Elem> UnitarySpace::basis_vector(OmegaIndex i) const {
  std::vector<Elem> v(static_cast<std::size_t>(dim()), ring().zero());
  v[static_cast<std::size_t>(i.position(n_))] = ring().one();
  return v;
}

std::vector<Elem> UnitarySpace::column(const UMatrix& g, int pos) const {
  std::vector<Elem> v(static_cast<std::size_t>(dim()));
  for (int r = 0; r < dim(); ++r) v[static_cast<std::size_t>(r)] = g.at(r, pos);
  return v;
}

std::vector<Elem> UnitarySpace::apply(const UMatrix& g, const std::vector<Elem>& v) const {
  const auto& R = ring();
  std::vector<Elem> out(static_cast<std::size_t>(dim()), R.zero());
  for (int r = 0; r < dim(); ++r) {
    Elem s = R.zero();
    for (int c = 0; c < dim(); ++c) s = R.add(s, R.mul(g.at(r, c), v[static_cast<std::size_t>(c)]));
    out[static_cast<std::size_t>(r)] = s;
  }
  return out;
}

bool UnitarySpace::gu_membership(const UMatrix& g) const {
  if (g.dim() != dim()) throw Error("matrix dimension does not match 2n");
  const UMatrix cand = unitary_inverse(g);
  if (mul(cand, g) != id_ || mul(g, cand) != id_) {
    if (!is_invertible(g)) throw SingularMatrixError("matrix is singular");
    return false;
  }
  for (int j = 0; j < dim(); ++j) {
    const auto col = column(g, j);
    if (!fr_.lambda_param.contains(f(col, col))) return false;
  }
  return true;
}

bool UnitarySpace::congruence_membership(const FormIdeal& fi, const UMatrix& g) const {
  const auto& R = ring();
  for (int r = 0; r < dim(); ++r) {
    for (int c = 0; c < dim(); ++c) {
      if (!fi.ideal.members.contains(R.sub(g.at(r, c), id_.at(r, c)))) return false;
    }
  }
  for (int j = 0; j < dim(); ++j) {
    const auto col = column(g, j);
    if (!fi.gamma.contains(f(col, col))) return false;
  }
  return true;
}

bool UnitarySpace::cu_membership(const FormIdeal& fi, const UMatrix& g,
                                 const std::vector<UMatrix>& ambient_generators) const {
  for (const UMatrix& x : ambient_generators) {
    if (!congruence_membership(fi, commutator(g, x))) return false;
  }
  return true;
}

Elem UnitarySpace::lambda_power(int k) const {
  switch (k) {
    case 0:
      return ring().one();
    case 1:
      return fr_.lambda;
    case -1:
      return ring().conj(fr_.lambda);
    default:
      throw Error("lambda exponent out of range");
  }
}

Subset UnitarySpace::long_root_parameters(OmegaIndex i, Subset gamma) const {
  return scale(ring(), lambda_power(-(i.sign() + 1) / 2), gamma);
}

Subset UnitarySpace::admissible(const FormIdeal& fi, OmegaIndex i, OmegaIndex j) const {
  if (i == j) throw AdmissibilityError("T_ii is undefined");
  if (i == j.opposite()) return long_root_parameters(i, fi.gamma);
  return fi.ideal.members;
}

UMatrix UnitarySpace::transvection(OmegaIndex i, OmegaIndex j, Elem xi) const {
  const auto& R = ring();
  if (i.value == 0 || j.value == 0 || std::abs(i.value) > n_ || std::abs(j.value) > n_) {
    throw AdmissibilityError("index outside Omega");
  }
  if (i == j) throw AdmissibilityError("T_ii is undefined");
  if (xi >= R.order()) throw AdmissibilityError("parameter is not a ring element");
  UMatrix t = id_;
  if (i == j.opposite()) {
    if (!long_root_parameters(i, fr_.lambda_param).contains(xi)) {
      throw AdmissibilityError("long-root parameter outside the scaled form parameter");
    }
    t.at(i, j) = xi;
    return t;
  }
  t.at(i, j) = xi;
  const Elem c = lambda_power((j.sign() - i.sign()) / 2);
  t.at(j.opposite(), i.opposite()) = R.neg(R.mul(c, R.conj(xi)));
  return t;
}

UMatrix UnitarySpace::z_generator(const FormIdeal& fi, OmegaIndex i, OmegaIndex j, Elem xi,
                                  Elem zeta) const {
  if (!admissible(fi, i, j).contains(xi)) throw AdmissibilityError("xi is not admissible at level");
  const FormIdeal abs = absolute_form_ideal(fr_);
  if (!admissible(abs, j, i).contains(zeta)) throw AdmissibilityError("zeta is not admissible");
  const UMatrix a = transvection(j, i, zeta);
  return mul(mul(a, transvection(i, j, xi)), transvection(j, i, ring().neg(zeta)));
}

namespace {

void push_unique(absl::flat_hash_set<Key>& seen, std::vector<UMatrix>& out, const UnitarySpace& s,
                 const UMatrix& g) {
  if (s.is_identity(g)) return;
  if (seen.insert(s.encode(g)).second) out.push_back(g);
}

}  // namespace

std::vector<UMatrix> UnitarySpace::fu_generators(const FormIdeal& fi) const {
  absl::flat_hash_set<Key> seen;
  std::vector<UMatrix> out;
  for (const OmegaIndex i : omega(n_)) {
    for (const OmegaIndex j : omega(n_)) {
      if (i == j) continue;
      for (Elem xi : admissible(fi, i, j).elements()) push_unique(seen, out, *this, transvection(i, j, xi));
    }
  }
  return out;
}

std::vector<UMatrix> UnitarySpace::eu_generator_set(const FormIdeal& fi) const {
  const FormIdeal abs = absolute_form_ideal(fr_);
  absl::flat_hash_set<Key> seen;
  std::vector<UMatrix> out;
  for (const OmegaIndex i : omega(n_)) {
    for (const OmegaIndex j : omega(n_)) {
      if (i == j) continue;
      const auto zetas = admissible(abs, j, i).elements();
      for (Elem xi : admissible(fi, i, j).elements()) {
        if (xi == 0) continue;
        for (Elem zeta : zetas) push_unique(seen, out, *this, z_generator(fi, i, j, xi, zeta));
      }
    }
  }
  return out;
}

std::vector<UMatrix> UnitarySpace::torus_and_swaps() const {
  const auto& R = ring();
  absl::flat_hash_set<Key> seen;
  std::vector<UMatrix> out;
  auto try_add = [&](const UMatrix& g) {
    bool ok = false;
    try {
      ok = gu_membership(g);
    } catch (const SingularMatrixError&) {
      ok = false;
    }
    if (ok) push_unique(seen, out, *this, g);
  };
  for (int i = 1; i <= n_; ++i) {
    const OmegaIndex p{i}, m{-i};
    for (Elem u : R.units()) {
      UMatrix g = id_;
      g.at(p, p) = u;
      g.at(m, m) = R.inverse(R.conj(u));
      try_add(g);
    }
    for (Elem c : R.units()) {
      for (Elem d : R.units()) {
        UMatrix g = id_;
        g.at(p, p) = R.zero();
        g.at(m, m) = R.zero();
        g.at(m, p) = c;
        g.at(p, m) = d;
        try_add(g);
      }
    }
  }
  return out;
}

Key UnitarySpace::encode(const UMatrix& g) const {
  Key k{};
  int bit = 0;
  for (int r = 0; r < dim(); ++r) {
    for (int c = 0; c < dim(); ++c) {
      const std::uint64_t v = g.at(r, c);
      const int w = bit >> 6, off = bit & 63;
      k[static_cast<std::size_t>(w)] |= v << off;
      if (off + bits_ > 64) k[static_cast<std::size_t>(w + 1)] |= v >> (64 - off);
      bit += bits_;
    }
  }
  return k;
}

UMatrix UnitarySpace::decode(const Key& k) const {
  UMatrix g(dim());
  const std::uint64_t mask = (std::uint64_t{1} << bits_) - 1;
  int bit = 0;
  for (int r = 0; r < dim(); ++r) {
    for (int c = 0; c < dim(); ++c) {
      const int w = bit >> 6, off = bit & 63;
      std::uint64_t v = k[static_cast<std::size_t>(w)] >> off;
      if (off + bits_ > 64) v |= k[static_cast<std::size_t>(w + 1)] << (64 - off);
      g.at(r, c) = static_cast<Elem>(v & mask);
      bit += bits_;
    }
  }
  return g;
}

std::string UnitarySpace::to_string(const UMatrix& g) const {
  std::ostringstream os;
  for (int r = 0; r < dim(); ++r) {
    for (int c = 0; c < dim(); ++c) os << (c ? " " : "") << static_cast<int>(g.at(r, c));
    os << '\n';
  }
  return os.str();
}

std::vector<std::vector<int>> UnitarySpace::to_rows(const UMatrix& g) const {
  std::vector<std::vector<int>> rows(static_cast<std::size_t>(dim()));
  for (int r = 0; r < dim(); ++r) {
    for (int c = 0; c < dim(); ++c) rows[static_cast<std::size_t>(r)].push_back(g.at(r, c));
  }
  return rows;
}

UMatrix UnitarySpace::from_rows(const std::vector<std::vector<int>>& rows) const {
  if (static_cast<int>(rows.size()) != dim()) throw Error("matrix has the wrong number of rows");
  UMatrix g(dim());
  for (int r = 0; r < dim(); ++r) {
    const auto& row = rows[static_cast<std::size_t>(r)];
    if (static_cast<int>(row.size()) != dim()) throw Error("matrix row has the wrong length");
    for (int c = 0; c < dim(); ++c) {
      const int v = row[static_cast<std::size_t>(c)];
      if (v < 0 || v >= ring().order()) throw Error("matrix entry is not a ring element");
      g.at(r, c) = static_cast<Elem>(v);
    }
  }
  return g;
}

std::vector<UMatrix> words_up_to_length(const UnitarySpace& space, const std::vector<UMatrix>& gens,
                                        int max_length) {
  absl::flat_hash_set<Key> seen;
  std::vector<UMatrix> out{space.identity()};
  seen.insert(space.encode(space.identity()));
  std::size_t begin = 0;
  for (int len = 1; len <= max_length; ++len) {
    const std::size_t end = out.size();
    for (std::size_t w = begin; w < end; ++w) {
      for (const UMatrix& g : gens) {
        const UMatrix next = space.mul(out[w], g);
        if (seen.insert(space.encode(next)).second) out.push_back(next);
      }
    }
    begin = end;
  }
  return out;
}

std::vector<UMatrix> theorem_generators(const UnitarySpace& space, const FormIdeal& fi_i,
                                        const FormIdeal& fi_j,
                                        const std::vector<UMatrix>& conjugators) {
  const FormRing& fr = space.form_ring();
  const FormIdeal abs = absolute_form_ideal(fr);
  const FormIdeal prod = symmetrized_product(fr, fi_i, fi_j);
  std::vector<UMatrix> base;
  absl::flat_hash_set<Key> base_seen;
  const int n = space.n();
  for (const OmegaIndex i : omega(n)) {
    for (const OmegaIndex j : omega(n)) {
      if (i == j) continue;
      const auto alphas = space.admissible(fi_i, j, i).elements();
      const auto betas_ji = space.admissible(fi_j, j, i).elements();
      const auto betas_ij = space.admissible(fi_j, i, j).elements();
      const auto as = space.admissible(abs, i, j).elements();
      for (Elem alpha : alphas) {
        if (alpha == 0) continue;
        const UMatrix ta = space.transvection(j, i, alpha);
        for (Elem a : as) {
          const UMatrix tij = space.transvection(i, j, a);
          for (Elem beta : betas_ji) {
            if (beta == 0) continue;
            const UMatrix inner = space.conjugate(tij, space.transvection(j, i, beta));
            push_unique(base_seen, base, space, space.commutator(ta, inner));
          }
        }
        for (Elem beta : betas_ij) {
          if (beta == 0) continue;
          push_unique(base_seen, base, space, space.commutator(ta, space.transvection(i, j, beta)));
        }
      }
      for (Elem xi : space.admissible(prod, i, j).elements()) {
        push_unique(base_seen, base, space, space.transvection(i, j, xi));
      }
    }
  }
  if (conjugators.empty()) return base;
  absl::flat_hash_set<Key> seen;
  std::vector<UMatrix> out;
  for (const UMatrix& c : conjugators) {
    const UMatrix c_inv = space.unitary_inverse(c);
    const PreparedMatrix pc = space.prepare(c), pci = space.prepare(c_inv);
    for (const UMatrix& g : base) push_unique(seen, out, space, space.mul(space.mul(pc, g), pci));
  }
  return out;
}

}  // namespace formring
