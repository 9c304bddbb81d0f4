#include "formring/form_ideal.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "formring/error.hpp"

namespace formring {

namespace {

Subset ideal_step(const InvolutiveRing& ring, Subset cur) {
  Subset next = cur;
  for (Elem x : cur.elements()) {
    next.insert(ring.conj(x));
    for (int i = 0; i < ring.order(); ++i) {
      const auto a = static_cast<Elem>(i);
      next.insert(ring.mul(a, x));
      next.insert(ring.mul(x, a));
    }
  }
  return additive_closure(ring, next);
}

std::string set_str(Subset s) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (Elem e : s.elements()) {
    if (!first) os << ',';
    os << static_cast<int>(e);
    first = false;
  }
  os << '}';
  return os.str();
}

}  // namespace

Ideal ideal_closure(const InvolutiveRing& ring, const std::vector<Elem>& gens) {
  Subset cur = additive_closure(ring, Subset::from(gens));
  for (;;) {
    const Subset next = ideal_step(ring, cur);
    if (next == cur) return Ideal{cur};
    cur = next;
  }
}

bool is_ideal(const InvolutiveRing& ring, Subset members) {
  return is_additive_subgroup(ring, members) && ideal_step(ring, members) == members;
}

Subset product_set(const InvolutiveRing& ring, Subset a, Subset b) {
  Subset out;
  for (Elem x : a.elements()) {
    for (Elem y : b.elements()) out.insert(ring.mul(x, y));
  }
  return additive_closure(ring, out);
}

Subset twisted_gamma(const InvolutiveRing& ring, Subset ideal, Subset gamma) {
  Subset out;
  for (Elem xi : ideal.elements()) {
    const Elem cxi = ring.conj(xi);
    for (Elem g : gamma.elements()) out.insert(ring.mul(ring.mul(xi, g), cxi));
  }
  return additive_closure(ring, out);
}

GammaBounds gamma_bounds(const FormRing& fr, const Ideal& ideal) {
  const auto& ring = fr.r();
  Subset lin;
  for (Elem xi : ideal.members.elements()) {
    lin.insert(ring.sub(xi, ring.mul(fr.lambda, ring.conj(xi))));
  }
  const Subset quad = twisted_gamma(ring, ideal.members, fr.lambda_param);
  return GammaBounds{additive_closure(ring, lin | quad), ideal.members & fr.lambda_param};
}

ValidationReport validate_form_ideal(const FormRing& fr, const FormIdeal& fi) {
  ValidationReport rep;
  const auto& ring = fr.r();
  const Subset I = fi.ideal.members;
  if (!I.subset_of(ring.all()) || !fi.gamma.subset_of(ring.all())) {
    rep.add("form ideal contains out-of-range elements");
    return rep;
  }
  if (!is_additive_subgroup(ring, I)) rep.add("ideal is not an additive subgroup");
  if (ideal_step(ring, I) != I) rep.add("ideal is not a two-sided involution-invariant ideal");
  if (!fi.gamma.subset_of(I)) rep.add("gamma is not contained in the ideal");
  if (!is_additive_subgroup(ring, fi.gamma)) rep.add("gamma is not an additive subgroup");
  if (!rep.valid()) return rep;
  const auto b = gamma_bounds(fr, fi.ideal);
  if (!b.min.subset_of(fi.gamma)) rep.add("Gamma_min(I) is not contained in gamma");
  if (!fi.gamma.subset_of(b.max)) rep.add("gamma is not contained in Gamma_max(I) = I ∩ Lambda");
  if (!is_stable(ring, fi.gamma)) rep.add("gamma is not stable under a*x*conj(a)");
  return rep;
}

FormIdeal zero_form_ideal(const FormRing& fr) {
  const Subset z{fr.r().zero()};
  return FormIdeal{Ideal{z}, z};
}

FormIdeal absolute_form_ideal(const FormRing& fr) {
  return FormIdeal{Ideal{fr.r().all()}, fr.lambda_param};
}

FormIdeal sum_form_ideals(const InvolutiveRing& ring, const FormIdeal& a, const FormIdeal& b) {
  return FormIdeal{Ideal{additive_closure(ring, a.ideal.members | b.ideal.members)},
                   additive_closure(ring, a.gamma | b.gamma)};
}

FormIdeal symmetrized_product(const FormRing& fr, const FormIdeal& a, const FormIdeal& b) {
  const auto& ring = fr.r();
  const Subset I = a.ideal.members, J = b.ideal.members;
  const Ideal ij{additive_closure(ring, product_set(ring, I, J) | product_set(ring, J, I))};
  const Subset gmin = gamma_bounds(fr, ij).min;
  const Subset gamma =
      additive_closure(ring, gmin | twisted_gamma(ring, J, a.gamma) | twisted_gamma(ring, I, b.gamma));
  return FormIdeal{ij, gamma};
}

FormIdeal symmetrized_product(const FormRing& fr, const std::vector<FormIdeal>& factors) {
  if (factors.empty()) throw Error("symmetrized product of zero factors");
  FormIdeal acc = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) acc = symmetrized_product(fr, acc, factors[i]);
  return acc;
}

bool contained_in(const FormIdeal& a, const FormIdeal& b) {
  return a.ideal.members.subset_of(b.ideal.members) && a.gamma.subset_of(b.gamma);
}

std::vector<Ideal> enumerate_ideals(const InvolutiveRing& ring) {
  std::set<Subset> found;
  std::deque<Subset> queue;
  const Subset zero{ring.zero()};
  found.insert(zero);
  queue.push_back(zero);
  while (!queue.empty()) {
    const Subset cur = queue.front();
    queue.pop_front();
    for (int i = 0; i < ring.order(); ++i) {
      const auto x = static_cast<Elem>(i);
      if (cur.contains(x)) continue;
      auto gens = cur.elements();
      gens.push_back(x);
      const Subset next = ideal_closure(ring, gens).members;
      if (found.insert(next).second) queue.push_back(next);
    }
  }
  std::vector<Ideal> out;
  for (Subset s : found) out.push_back(Ideal{s});
  std::sort(out.begin(), out.end(), [](const Ideal& x, const Ideal& y) {
    if (x.members.size() != y.members.size()) return x.members.size() < y.members.size();
    return x.members < y.members;
  });
  return out;
}

std::vector<FormIdeal> enumerate_form_ideals(const FormRing& fr, std::size_t budget) {
  const auto& ring = fr.r();
  std::vector<FormIdeal> out;
  for (const Ideal& I : enumerate_ideals(ring)) {
    const auto b = gamma_bounds(fr, I);
    std::set<Subset> found;
    std::deque<Subset> queue;
    const Subset start = stable_additive_closure(ring, b.min);
    if (!start.subset_of(b.max)) continue;
    found.insert(start);
    queue.push_back(start);
    while (!queue.empty()) {
      const Subset h = queue.front();
      queue.pop_front();
      for (Elem x : b.max.elements()) {
        if (h.contains(x)) continue;
        Subset g = h;
        g.insert(x);
        const Subset next = stable_additive_closure(ring, g);
        if (!next.subset_of(b.max)) continue;
        if (found.insert(next).second) queue.push_back(next);
      }
    }
    for (Subset g : found) {
      out.push_back(FormIdeal{I, g});
      if (out.size() > budget) throw BudgetExceeded("form ideal enumeration exceeded budget");
    }
  }
  return out;
}

std::string describe(const FormIdeal& fi) {
  return "(" + set_str(fi.ideal.members) + "," + set_str(fi.gamma) + ")";
}

}  // namespace formring
