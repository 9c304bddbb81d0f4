#include "context.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "formring/error.hpp"

namespace formring::detail {

namespace {

std::vector<UMatrix> concat(std::vector<UMatrix> a, const std::vector<UMatrix>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

absl::flat_hash_set<Key> keys_of(const UnitarySpace& s, const std::vector<UMatrix>& gens) {
  absl::flat_hash_set<Key> out;
  for (const UMatrix& g : gens) out.insert(s.encode(g));
  return out;
}

void add_flags(std::vector<std::string>& to, const std::vector<std::string>& from) {
  for (const auto& f : from) {
    if (std::find(to.begin(), to.end(), f) == to.end()) to.push_back(f);
  }
}

}  // namespace

struct Context::Parsed {
  std::string kind;  // leaf kind, or "[]"
  std::vector<FormIdeal> ideals;
  std::vector<std::string> ideal_text;
  std::unique_ptr<Parsed> left, right;
};

Context::Context(const ScenarioConfig& cfg)
    : cfg_(&cfg), space_(cfg.form_ring, cfg.n), absolute_(absolute_form_ideal(cfg.form_ring)) {
  if (cfg.form_ring.r().order() <= 8) {
    for (const FormIdeal& fi : enumerate_form_ideals(cfg.form_ring)) lattice_.emplace_back("", fi);
    for (auto& [name, fi] : lattice_) name = ideal_name(fi);
  } else {
    for (const auto& [name, fi] : cfg.ideals) {
      if (validate_form_ideal(cfg.form_ring, fi).valid()) lattice_.emplace_back(name, fi);
    }
  }
  if (!cfg.enumerate_absolute) too_large_.push_back(keys_of(space_, space_.fu_generators(absolute_)));
}

std::string Context::ideal_name(const FormIdeal& fi) const {
  for (const auto& [name, c] : cfg_->ideals) {
    if (c == fi) return name;
  }
  if (fi == absolute_) return "A";
  if (fi == zero_form_ideal(form_ring())) return "0";
  if (form_ring().r().order() <= 8) {
    int k = 0;
    for (const FormIdeal& l : enumerate_form_ideals(form_ring())) {
      if (l == fi) return "L" + std::to_string(k);
      ++k;
    }
  }
  return describe(fi);
}

std::string Context::key_of(const FormIdeal& fi) const { return describe(fi); }

namespace {

class Parser {
 public:
  Parser(const std::string& text, const std::function<FormIdeal(const std::string&)>& lookup,
         const FormRing& fr)
      : s_(text), lookup_(lookup), fr_(fr) {}

  FormIdeal ideal_expr(std::string* shown) {
    skip();
    if (peek() == '(') {
      ++p_;
      std::string a, b;
      const FormIdeal l = ideal_expr(&a);
      expect('.');
      const FormIdeal r = ideal_expr(&b);
      expect(')');
      if (shown) *shown = "(" + a + "." + b + ")";
      return symmetrized_product(fr_, l, r);
    }
    const std::string name = word();
    if (name.empty()) fail("ideal name expected");
    if (shown) *shown = name;
    return lookup_(name);
  }

  std::string word() {
    skip();
    std::string out;
    while (p_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[p_])) || s_[p_] == '_'))
      out += s_[p_++];
    return out;
  }

  char peek() {
    skip();
    return p_ < s_.size() ? s_[p_] : '\0';
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("'") + c + "' expected");
    ++p_;
  }
  bool done() { return peek() == '\0'; }
  [[noreturn]] void fail(const std::string& what) {
    throw ConfigError("group expression '" + s_ + "': " + what + " at " + std::to_string(p_));
  }

 private:
  void skip() {
    while (p_ < s_.size() && s_[p_] == ' ') ++p_;
  }
  std::string s_;
  std::size_t p_ = 0;
  std::function<FormIdeal(const std::string&)> lookup_;
  const FormRing& fr_;
};

}  // namespace

FormIdeal Context::ideal(const std::string& text) const {
  const auto lookup = [this](const std::string& name) -> FormIdeal {
    for (const auto& [n, fi] : cfg_->ideals) {
      if (n == name) return fi;
    }
    for (const auto& [n, fi] : lattice_) {
      if (n == name) return fi;
    }
    if (name == "A") return absolute_;
    if (name == "0") return zero_form_ideal(form_ring());
    throw ConfigError("unknown ideal '" + name + "'");
  };
  Parser p(text, lookup, form_ring());
  const FormIdeal fi = p.ideal_expr(nullptr);
  if (!p.done()) p.fail("trailing input");
  return fi;
}

GroupPtr Context::group(const std::string& expr) {
  const auto lookup = [this](const std::string& name) { return ideal(name); };
  Parser p(expr, lookup, form_ring());
  std::function<std::unique_ptr<Parsed>()> parse = [&]() {
    auto out = std::make_unique<Parsed>();
    if (p.peek() == '[') {
      p.expect('[');
      out->kind = "[]";
      out->left = parse();
      p.expect(',');
      out->right = parse();
      p.expect(']');
      return out;
    }
    out->kind = p.word();
    static const std::vector<std::string> kinds{"E", "G", "C", "FU", "Z", "NFU", "GU", "TG"};
    if (std::find(kinds.begin(), kinds.end(), out->kind) == kinds.end())
      p.fail("unknown subgroup kind '" + out->kind + "'");
    p.expect('(');
    std::string shown;
    out->ideals.push_back(p.ideal_expr(&shown));
    out->ideal_text.push_back(shown);
    if (out->kind == "TG") {
      p.expect(',');
      out->ideals.push_back(p.ideal_expr(&shown));
      out->ideal_text.push_back(shown);
    }
    p.expect(')');
    return out;
  };
  auto parsed = parse();
  if (!p.done()) p.fail("trailing input");
  return evaluate(*parsed);
}

GroupPtr Context::evaluate(const Parsed& p) {
  if (p.kind == "[]") {
    const GroupPtr a = evaluate(*p.left), b = evaluate(*p.right);
    return commutator(a, b, "[" + a->expr + "," + b->expr + "]");
  }
  std::string text = p.kind + "(" + p.ideal_text[0];
  std::string key = p.kind + "(" + key_of(p.ideals[0]);
  if (p.kind == "TG") {
    text += "," + p.ideal_text[1];
    key += "," + key_of(p.ideals[1]);
  }
  text += ")";
  key += ")";
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  GroupPtr g;
  if (p.kind == "TG") {
    const auto targets = theorem_generators(space_, p.ideals[0], p.ideals[1], {space_.identity()});
    const auto amb = space_.fu_generators(absolute_);
    Group out;
    out.expr = text;
    if (known_too_large(targets)) {
      out.h.status = StoreStatus::budget_exceeded;
    } else {
      out.h = normal_closure(space_, targets, amb, cfg_->budget);
    }
    if (!out.exact()) {
      out.targets = dedupe_generators(space_, targets);
      out.ambient = amb;
      out.known = out.targets;
    } else {
      out.known = out.h.generators;
    }
    g = std::make_shared<const Group>(std::move(out));
  } else {
    g = leaf(p.kind, p.ideals[0], text);
  }
  cache_.emplace(key, g);
  return g;
}

bool Context::known_too_large(const std::vector<UMatrix>& gens) const {
  if (too_large_.empty()) return false;
  const auto keys = keys_of(space_, gens);
  for (const auto& reg : too_large_) {
    if (std::all_of(reg.begin(), reg.end(), [&](const Key& k) { return keys.contains(k); })) return true;
  }
  return false;
}

Group Context::closed(std::string expr, const std::vector<UMatrix>& gens) {
  Group g;
  g.expr = std::move(expr);
  if (known_too_large(gens)) {
    g.h = generated_handle(space_, gens);
  } else {
    g.h = closure_enumerate(space_, gens, cfg_->budget);
    if (!g.exact()) {
      too_large_.push_back(keys_of(space_, gens));
      g.h.status = StoreStatus::generated;
    }
  }
  if (!g.exact()) g.flags.push_back(g.expr + " not enumerated");
  g.known = dedupe_generators(space_, gens);
  return g;
}

GroupPtr Context::ambient() {
  if (ambient_) return *ambient_;
  const auto gens = gu_generators(space_);
  Group g = closed("G(A)", gens);
  g.level_bound = absolute_;
  ambient_ = g.exact() ? std::make_shared<const Group>(std::move(g)) : nullptr;
  return *ambient_;
}

GroupPtr Context::leaf(const std::string& kind, const FormIdeal& fi, const std::string& text) {
  const FormIdeal zero = zero_form_ideal(form_ring());
  Group out;
  out.expr = text;
  if (kind == "GU") {
    out.predicate_only = true;
    out.level_exact = fi;
    out.h.status = StoreStatus::generated;
    return std::make_shared<const Group>(std::move(out));
  }
  if (fi == zero && kind != "C") {
    out.h = closure_enumerate(space_, {});
    out.level_bound = fi;
    if (kind == "G") out.level_exact = fi;
    return std::make_shared<const Group>(std::move(out));
  }
  if (kind == "E") {
    const bool abs = fi == absolute_;
    out = closed(text, abs ? space_.fu_generators(fi) : space_.eu_generator_set(fi));
    out.level_bound = fi;
  } else if (kind == "FU") {
    out = closed(text, space_.fu_generators(fi));
    out.level_bound = fi;
  } else if (kind == "Z") {
    out = closed(text, space_.eu_generator_set(fi));
    out.level_bound = fi;
  } else if (kind == "NFU") {
    const auto targets = space_.fu_generators(fi);
    const auto amb = space_.fu_generators(absolute_);
    const auto tk = keys_of(space_, targets);
    const bool self = std::all_of(amb.begin(), amb.end(),
                                  [&](const UMatrix& a) { return tk.contains(space_.encode(a)); });
    if (self) {
      out = closed(text, targets);
    } else {
      if (!known_too_large(targets)) out.h = normal_closure(space_, targets, amb, cfg_->budget);
      else out.h.status = StoreStatus::budget_exceeded;
      if (!out.exact()) {
        out.targets = dedupe_generators(space_, targets);
        out.ambient = amb;
        out.known = out.targets;
        out.flags.push_back(text + " not enumerated");
      } else {
        out.known = out.h.generators;
      }
    }
    out.expr = text;
    out.level_bound = fi;
  } else if (kind == "G") {
    const InvolutiveRing& R = space_.ring();
    if (is_square_zero(R, fi.ideal.members)) {
      out.layer = solve_layer(space_, fi);
      out.h = gu_level_subgroup(space_, fi, LevelMode::layer, cfg_->budget);
      out.flags.push_back(text + " layer");
      out.level_exact = fi;
    } else if (fi == absolute_) {
      if (GroupPtr amb = ambient()) {
        out = *amb;
      } else {
        out.h = generated_handle(space_, gu_generators(space_));
        out.flags.push_back("G(A) generated by EU, torus and swaps");
      }
      out.expr = text;
      out.level_bound = fi;
    } else if (GroupPtr amb = ambient()) {
      out.h = gu_level_subgroup(space_, fi, LevelMode::exact, cfg_->budget, &amb->h);
      out.level_exact = fi;
    } else {
      const std::size_t n = std::min<std::size_t>(cfg_->samples, 1000);
      out.h = gu_level_subgroup(space_, fi, LevelMode::sampled, cfg_->budget, nullptr, n, cfg_->seed);
      out.flags.push_back(text + " sampled");
      out.level_exact = fi;
    }
    out.known = out.h.generators;
  } else if (kind == "C") {
    GroupPtr amb = ambient();
    if (!amb) throw Skip("CU needs an enumerable ambient GU");
    out.h = cu_subgroup(space_, fi, amb->h, gu_generators(space_));
    out.known = out.h.generators;
  }
  out.expr = text;
  if (!validate_form_ideal(form_ring(), fi).valid()) {
    out.level_bound.reset();
    out.level_exact.reset();
    out.flags.push_back(text + " over an invalid form ideal");
  }
  return std::make_shared<const Group>(std::move(out));
}

GroupPtr Context::commutator(const GroupPtr& a, const GroupPtr& b, const std::string& text) {
  const std::string key = "[" + std::to_string(reinterpret_cast<std::uintptr_t>(a.get())) + "," +
                          std::to_string(reinterpret_cast<std::uintptr_t>(b.get())) + "]";
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  Group out;
  out.expr = text;
  out.left = a;
  out.right = b;
  add_flags(out.flags, a->flags);
  add_flags(out.flags, b->flags);
  if (a->trivial() || b->trivial()) {
    out.h = closure_enumerate(space_, {});
  } else {
    if (!a->has_generators() || !b->has_generators())
      throw BudgetExceeded(text + ": a side has no generating set");
    const auto amb = concat(a->h.generators, b->h.generators);
    if (!a->exact() && !b->exact()) {
      out.h.status = StoreStatus::budget_exceeded;
    } else {
      out.h = mixed_commutator(space_, a->h, b->h, cfg_->budget);
    }
    if (!out.exact()) {
      out.targets = generator_commutators(space_, a->h, b->h);
      out.ambient = amb;
      out.flags.push_back(text + " not enumerated");
    }
  }
  out.known = out.exact() ? out.h.generators : out.targets;
  GroupPtr g = std::make_shared<const Group>(std::move(out));
  cache_.emplace(key, g);
  return g;
}

bool Context::word_certificate(const Group& k, const UMatrix& g) {
  if (space_.is_identity(g)) return true;
  auto it = alphabets_.find(&k);
  if (it == alphabets_.end()) {
    Alphabet a;
    const auto& base = k.known.empty() ? k.h.generators : k.known;
    for (const UMatrix& x : base) {
      a.letters.push_back(x);
      a.letters.push_back(space_.unitary_inverse(x));
    }
    a.letters = dedupe_generators(space_, a.letters);
    a.keys = keys_of(space_, a.letters);
    for (const UMatrix& x : a.letters) a.inverses.push_back(space_.unitary_inverse(x));
    it = alphabets_.emplace(&k, std::move(a)).first;
  }
  const Alphabet& a = it->second;
  if (a.keys.contains(space_.encode(g))) return true;
  const auto& inv = a.inverses;
  for (const UMatrix& xi : inv) {
    if (a.keys.contains(space_.encode(space_.mul(xi, g)))) return true;
  }
  if (a.letters.size() > 600) return false;
  for (const UMatrix& xi : inv) {
    const UMatrix r = space_.mul(xi, g);
    for (const UMatrix& yi : inv) {
      if (a.keys.contains(space_.encode(space_.mul(yi, r)))) return true;
    }
  }
  return false;
}

Tri Context::member(const Group& k, const UMatrix& g) {
  if (k.exact()) return k.h.contains(space_, g) ? Tri::yes : Tri::no;
  if (k.level_exact) return space_.congruence_membership(*k.level_exact, g) ? Tri::yes : Tri::no;
  if (k.predicate_only) return Tri::unknown;
  if (k.level_bound && !space_.congruence_membership(*k.level_bound, g)) return Tri::no;
  return word_certificate(k, g) ? Tri::yes : Tri::unknown;
}

namespace {

Verdict verdict(Tri t, std::string method) {
  Verdict v;
  v.result = t;
  v.method = std::move(method);
  return v;
}

}  // namespace

Verdict Context::includes(const GroupPtr& h, const GroupPtr& k) {
  const auto key = std::make_pair(h.get(), k.get());
  if (auto it = inclusion_cache_.find(key); it != inclusion_cache_.end()) return it->second;
  Verdict v = includes_uncached(h, k);
  v.in = h->expr;
  v.out = k->expr;
  inclusion_cache_.emplace(key, v);
  return v;
}

Verdict Context::includes_uncached(const GroupPtr& h, const GroupPtr& k) {
  if (h == k || h->trivial()) return verdict(Tri::yes, "trivial");
  if (h->predicate_only) {
    if (k->level_exact && contained_in(*h->level_exact, *k->level_exact))
      return verdict(Tri::yes, "level");
    return verdict(Tri::unknown, "predicate");
  }
  if (h->exact() && k->exact()) {
    if (store_subset(h->h, k->h)) return verdict(Tri::yes, "store");
    Verdict v = verdict(Tri::no, "store");
    for (const Key& x : *h->h.store) {
      if (!k->h.contains(x)) {
        v.witness = space_.decode(x);
        break;
      }
    }
    return v;
  }
  if (h->exact() && k->level_exact) {
    for (const Key& x : *h->h.store) {
      const UMatrix g = space_.decode(x);
      if (!space_.congruence_membership(*k->level_exact, g)) {
        Verdict v = verdict(Tri::no, "element-scan");
        v.witness = g;
        return v;
      }
    }
    return verdict(Tri::yes, "element-scan");
  }
  if (h->left) {
    if (k->left) {
      const auto yes = [&](const GroupPtr& x, const GroupPtr& y) {
        return includes(x, y).result == Tri::yes;
      };
      if ((yes(h->left, k->left) && yes(h->right, k->right)) ||
          (yes(h->left, k->right) && yes(h->right, k->left)))
        return verdict(Tri::yes, "monotone");
    }
    if (includes(h->left, k).result == Tri::yes && includes(h->right, k).result == Tri::yes)
      return verdict(Tri::yes, "join");
  }
  const auto scan = [&](const std::vector<UMatrix>& elems, Verdict& v) {
    bool unknown = false;
    for (const UMatrix& g : elems) {
      const Tri t = member(*k, g);
      if (t == Tri::no) {
        v.result = Tri::no;
        v.witness = g;
        return;
      }
      unknown = unknown || t == Tri::unknown;
    }
    v.result = unknown ? Tri::unknown : Tri::yes;
  };
  Verdict v;
  if (h->h.status == StoreStatus::sampled) {
    v.method = "samples";
    v.sampled = true;
    scan(h->h.generators, v);
    return v;
  }
  if (h->has_generators()) {
    v.method = "generators";
    scan(h->h.generators, v);
    return v;
  }
  v.method = "normal-closure";
  scan(h->targets, v);
  if (v.result != Tri::yes || k->level_exact) return v;
  Verdict a;
  scan(h->ambient, a);
  if (a.result == Tri::yes) return v;
  // a conjugator outside k says nothing about h
  v.result = Tri::unknown;
  return v;
}

Verdict Context::equal(const GroupPtr& h, const GroupPtr& k) {
  if (h->exact() && k->exact()) {
    Verdict v;
    v.method = "store";
    if (same_store(h->h, k->h)) {
      v.result = Tri::yes;
      v.in = h->expr;
      v.out = k->expr;
      return v;
    }
    Verdict a = includes(h, k);
    return a.result == Tri::no ? a : includes(k, h);
  }
  Verdict a = includes(h, k);
  if (a.result == Tri::no) return a;
  Verdict b = includes(k, h);
  if (b.result == Tri::no) return b;
  Verdict v;
  v.in = h->expr;
  v.out = k->expr;
  v.method = a.method == b.method ? a.method : a.method + "/" + b.method;
  v.sampled = a.sampled || b.sampled;
  v.result = a.result == Tri::yes && b.result == Tri::yes ? Tri::yes : Tri::unknown;
  return v;
}

UMatrix Context::sample(const Group& g, std::mt19937_64& rng) {
  if (g.layer) return sample_layer(space_, *g.layer, rng);
  if (g.exact()) {
    std::uniform_int_distribution<std::size_t> pick(0, g.h.size() - 1);
    return space_.decode((*g.h.store)[pick(rng)]);
  }
  if (g.h.status == StoreStatus::sampled || g.h.status == StoreStatus::generated) {
    if (g.h.generators.empty()) return space_.identity();
    std::uniform_int_distribution<std::size_t> pick(0, g.h.generators.size() - 1);
    if (g.h.status == StoreStatus::sampled) return g.h.generators[pick(rng)];
    UMatrix w = space_.identity();
    for (int i = 0; i < 24; ++i) {
      const UMatrix& x = g.h.generators[pick(rng)];
      w = space_.mul(w, rng() & 1 ? x : space_.unitary_inverse(x));
    }
    return w;
  }
  throw Skip(g.expr + " has no sampler");
}

}  // namespace formring::detail
