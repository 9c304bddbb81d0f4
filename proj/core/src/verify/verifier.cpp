#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "context.hpp"
#include "formring/bracket.hpp"
#include "formring/error.hpp"
#include "formring/steinberg.hpp"
#include "formring/verify.hpp"

namespace formring {

using json = nlohmann::ordered_json;
using detail::GroupPtr;
using detail::Tri;
using detail::Verdict;

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass:
      return "pass";
    case CheckStatus::fail:
      return "fail";
    case CheckStatus::verified_sampled:
      return "verified-sampled";
    case CheckStatus::budget_exceeded:
      return "budget-exceeded";
    case CheckStatus::skipped:
      return "skipped";
  }
  return "unknown";
}

CheckStatus combine(const std::vector<CheckStatus>& parts) {
  const auto has = [&](CheckStatus s) { return std::find(parts.begin(), parts.end(), s) != parts.end(); };
  if (has(CheckStatus::fail)) return CheckStatus::fail;
  if (has(CheckStatus::budget_exceeded)) return CheckStatus::budget_exceeded;
  if (has(CheckStatus::verified_sampled)) return CheckStatus::verified_sampled;
  if (has(CheckStatus::pass)) return CheckStatus::pass;
  return parts.empty() ? CheckStatus::pass : CheckStatus::skipped;
}

namespace {

CheckStatus status_of(const Verdict& v) {
  switch (v.result) {
    case Tri::yes:
      return v.sampled ? CheckStatus::verified_sampled : CheckStatus::pass;
    case Tri::no:
      return CheckStatus::fail;
    case Tri::unknown:
      return CheckStatus::budget_exceeded;
  }
  return CheckStatus::budget_exceeded;
}

void add_flag(std::vector<std::string>& flags, const std::string& f) {
  if (std::find(flags.begin(), flags.end(), f) == flags.end()) flags.push_back(f);
}

std::string tuple_label(const std::vector<std::string>& names) {
  std::string s = "(";
  for (std::size_t i = 0; i < names.size(); ++i) s += (i ? "," : "") + names[i];
  return s + ")";
}

json rows_json(const UnitarySpace& s, const UMatrix& g) { return s.to_rows(g); }

}  // namespace

struct Verifier::Impl {
  ScenarioConfig cfg;
  detail::Context ctx;

  explicit Impl(ScenarioConfig c) : cfg(std::move(c)), ctx(cfg) {}

  const UnitarySpace& space() const { return ctx.space(); }

  // One check in progress.
  struct Run {
    CheckReport report;
    std::optional<json> witness;
  };

  void finish_case(Run& run, CaseReport c) {
    std::sort(c.flags.begin(), c.flags.end());
    for (const auto& f : c.flags) add_flag(run.report.flags, f);
    for (const auto& [k, v] : c.sizes) run.report.sizes[k] = v;
    run.report.cases.push_back(std::move(c));
  }

  void run_case(Run& run, const std::string& label, const std::function<void(CaseReport&)>& body) {
    CaseReport c;
    c.label = label;
    try {
      body(c);
    } catch (const detail::Skip& e) {
      c.status = CheckStatus::skipped;
      c.reason = e.what();
    } catch (const BudgetExceeded& e) {
      c.status = CheckStatus::budget_exceeded;
      c.reason = e.what();
    }
    finish_case(run, std::move(c));
  }

  void note(CaseReport& c, const GroupPtr& g) {
    if (g->exact()) c.sizes[g->expr] = g->h.size();
    for (const auto& f : g->flags) add_flag(c.flags, f);
  }

  void record(Run& run, CaseReport& c, const Verdict& v) {
    const CheckStatus s = status_of(v);
    c.status = c.method.empty() ? s : combine({c.status, s});
    c.method += (c.method.empty() ? "" : ",") + v.method;
    if (v.result == Tri::unknown && c.reason.empty()) c.reason = v.in + " vs " + v.out + " undecided";
    if (v.result == Tri::no && !run.witness && v.witness) {
      json w;
      w["check"] = run.report.name;
      w["case"] = c.label;
      w["kind"] = "membership";
      w["lhs"] = v.in;
      w["rhs"] = v.out;
      w["matrix"] = rows_json(space(), *v.witness);
      w["expected"] = "member of lhs, not a member of rhs";
      run.witness = w;
    }
  }

  void check_equal(Run& run, CaseReport& c, const std::string& a, const std::string& b) {
    const GroupPtr x = ctx.group(a), y = ctx.group(b);
    note(c, x);
    note(c, y);
    record(run, c, ctx.equal(x, y));
  }

  void check_includes(Run& run, CaseReport& c, const std::string& a, const std::string& b) {
    const GroupPtr x = ctx.group(a), y = ctx.group(b);
    note(c, x);
    note(c, y);
    record(run, c, ctx.includes(x, y));
  }

  bool zero(const std::string& ideal_expr) const {
    return ctx.ideal(ideal_expr) == zero_form_ideal(ctx.form_ring());
  }

  // Parameter helpers.

  std::vector<std::string> ideal_list(const json& p, const char* key) {
    std::vector<std::string> out;
    if (!p.contains(key) || p.at(key) == "lattice") {
      for (const auto& [name, fi] : ctx.lattice()) out.push_back(name);
      return out;
    }
    for (const json& e : p.at(key)) {
      out.push_back(e.get<std::string>());
      ctx.ideal(out.back());
    }
    return out;
  }

  std::vector<std::vector<std::string>> tuple_list(const json& p, const char* key, std::size_t arity) {
    std::vector<std::vector<std::string>> out;
    if (!p.contains(key) || p.at(key) == "lattice") {
      const auto names = ideal_list(p, "ideals");
      std::vector<std::string> cur(arity);
      std::function<void(std::size_t)> rec = [&](std::size_t d) {
        if (d == arity) {
          out.push_back(cur);
          return;
        }
        for (const auto& n : names) {
          cur[d] = n;
          rec(d + 1);
        }
      };
      rec(0);
      return out;
    }
    for (const json& t : p.at(key)) {
      std::vector<std::string> row;
      for (const json& e : t) {
        row.push_back(e.get<std::string>());
        ctx.ideal(row.back());
      }
      if (arity && row.size() != arity)
        throw ConfigError(std::string(key) + " entries need " + std::to_string(arity) + " ideals");
      out.push_back(std::move(row));
    }
    return out;
  }

  // Expression builders.

  static std::string left_normed_expr(const std::vector<std::string>& names,
                                      const std::vector<char>& kinds) {
    std::string e = std::string(1, kinds[0]) + "(" + names[0] + ")";
    for (std::size_t i = 1; i < names.size(); ++i)
      e = "[" + e + "," + std::string(1, kinds[i]) + "(" + names[i] + ")]";
    return e;
  }

  static std::string tree_expr(const CommExpr& t, const std::vector<std::string>& names,
                               const std::vector<std::string>& kinds) {
    if (t.is_leaf()) return kinds[t.leaf_index()] + "(" + names[t.leaf_index()] + ")";
    return "[" + tree_expr(t.left(), names, kinds) + "," + tree_expr(t.right(), names, kinds) + "]";
  }

  static std::string tree_ideal(const CommExpr& t, const std::vector<std::string>& names) {
    if (t.is_leaf()) return names[t.leaf_index()];
    return "(" + tree_ideal(t.left(), names) + "." + tree_ideal(t.right(), names) + ")";
  }

  std::vector<CommExpr> trees(const json& p, int leaves) {
    if (!p.contains("trees") || p.at("trees") == "all") return enumerate_bracketings(leaves);
    std::vector<CommExpr> out;
    for (const json& t : p.at("trees")) {
      out.push_back(CommExpr::parse(t.get<std::string>()));
      if (out.back().leaf_count() != leaves) throw ConfigError("tree leaf count does not match leaves");
    }
    return out;
  }

  // Checks.

  void validate(Run& run, const json&) {
    run_case(run, "form ring", [&](CaseReport& c) {
      const auto r = validate_form_ring(ctx.form_ring());
      c.method = "table scan";
      c.status = r.valid() ? CheckStatus::pass : CheckStatus::fail;
    });
    for (const auto& [name, fi] : cfg.ideals) {
      run_case(run, name, [&](CaseReport& c) {
        c.method = "table scan";
        const auto r = validate_form_ideal(ctx.form_ring(), fi);
        if (r.valid()) return;
        c.status = CheckStatus::fail;
        c.reason = r.violations.front();
        if (run.witness) return;
        // a product of level generators that leaves GU(I, Γ)
        std::vector<UMatrix> gens;
        try {
          gens = space().fu_generators(fi);
        } catch (const AdmissibilityError&) {
        }
        std::optional<UMatrix> bad;
        for (const UMatrix& a : gens) {
          if (!space().congruence_membership(fi, a)) {
            bad = a;
            break;
          }
        }
        for (std::size_t i = 0; !bad && i < gens.size(); ++i) {
          for (std::size_t j = 0; !bad && j < gens.size(); ++j) {
            const UMatrix g = space().mul(gens[i], gens[j]);
            if (!space().congruence_membership(fi, g)) bad = g;
          }
        }
        json w;
        w["check"] = "validate";
        w["case"] = name;
        w["violations"] = r.violations;
        if (bad) {
          w["kind"] = "membership";
          w["lhs"] = "FU(" + name + ")";
          w["rhs"] = "GU(" + name + ")";
          w["matrix"] = rows_json(space(), *bad);
          w["expected"] = "member of lhs, not a member of rhs";
        } else {
          w["kind"] = "form-ideal";
          w["ideal"] = name;
        }
        run.witness = w;
      });
    }
  }

  void steinberg(Run& run, const json& p) {
    const std::string mode = p.value("mode", "exhaustive");
    run_case(run, mode, [&](CaseReport& c) {
      SweepResult r;
      if (mode == "exhaustive") {
        r = steinberg_exhaustive(space(), {std::begin(kAllRelations), std::end(kAllRelations)});
      } else if (mode == "random") {
        r = steinberg_random(space(), p.value("count", std::uint64_t{100000}), p.value("seed", cfg.seed));
      } else {
        throw ConfigError("steinberg mode must be exhaustive or random");
      }
      c.method = mode;
      c.sizes["relations checked"] = r.checked;
      c.sizes["relation failures"] = r.failures;
      c.status = r.failures ? CheckStatus::fail : CheckStatus::pass;
      if (r.first_failure && !run.witness) {
        const auto& [rel, a] = *r.first_failure;
        json w;
        w["check"] = "steinberg";
        w["case"] = mode;
        w["kind"] = "relation";
        w["relation"] = to_string(rel);
        w["i"] = a.i.value;
        w["j"] = a.j.value;
        w["h"] = a.h.value;
        w["k"] = a.k.value;
        w["xi"] = a.xi;
        w["zeta"] = a.zeta;
        run.witness = w;
      }
    });
  }

  void genelm(Run& run, const json& p) {
    for (const auto& i : ideal_list(p, "ideals")) {
      run_case(run, tuple_label({i}), [&](CaseReport& c) { check_equal(run, c, "Z(" + i + ")", "NFU(" + i + ")"); });
    }
  }

  void perfectness(Run& run, const json& p) {
    for (const auto& i : ideal_list(p, "ideals")) {
      run_case(run, tuple_label({i}), [&](CaseReport& c) {
        check_equal(run, c, "[E(" + i + "),E(A)]", "E(" + i + ")");
      });
    }
  }

  void habdank(Run& run, const json& p) {
    for (const auto& t : tuple_list(p, "pairs", 2)) {
      const std::string& i = t[0];
      const std::string& j = t[1];
      run_case(run, tuple_label(t), [&](CaseReport& c) {
        const std::string prod = "(" + i + "." + j + ")";
        check_includes(run, c, "E(" + prod + ")", "[FU(" + i + "),FU(" + j + ")]");
        check_includes(run, c, "[FU(" + i + "),FU(" + j + ")]", "[E(" + i + "),E(" + j + ")]");
        check_includes(run, c, "[E(" + i + "),E(" + j + ")]", "GU(" + prod + ")");
        if (zero(prod)) add_flag(c.flags, "degenerate");
      });
    }
  }

  void level(Run& run, const json& p) {
    const std::size_t samples = p.value("samples", cfg.samples);
    std::uint64_t index = 0;
    for (const auto& t : tuple_list(p, "pairs", 2)) {
      const std::uint64_t seed = cfg.seed * 1000003u + index++;
      run_case(run, tuple_label(t), [&](CaseReport& c) {
        const GroupPtr a = ctx.group("G(" + t[0] + ")"), b = ctx.group("G(" + t[1] + ")");
        const FormIdeal prod = ctx.ideal("(" + t[0] + "." + t[1] + ")");
        note(c, a);
        note(c, b);
        const auto fail_with = [&](const UMatrix& x, const UMatrix& y, const UMatrix& g) {
          c.status = CheckStatus::fail;
          if (run.witness) return;
          json w;
          w["check"] = "level";
          w["case"] = c.label;
          w["kind"] = "membership";
          w["lhs"] = "[" + a->expr + "," + b->expr + "]";
          w["rhs"] = "GU((" + t[0] + "." + t[1] + "))";
          w["matrix"] = rows_json(space(), g);
          w["factors"] = json::array({json{{"group", a->expr}, {"matrix", rows_json(space(), x)}},
                                      json{{"group", b->expr}, {"matrix", rows_json(space(), y)}}});
          w["expected"] = "commutator of the factors, not a member of rhs";
          run.witness = w;
        };
        // GU(I∘J) is normal in GU, so the generator commutators decide [G(I), G(J)]
        bool proof = a->has_generators() && b->has_generators();
        if (proof) {
          c.method = "generator commutators";
          for (const UMatrix& x : a->h.generators) {
            for (const UMatrix& y : b->h.generators) {
              const UMatrix g = space().commutator(x, y);
              if (!space().congruence_membership(prod, g)) fail_with(x, y, g);
            }
          }
        }
        std::mt19937_64 rng(seed);
        std::uint64_t violations = 0;
        for (std::size_t s = 0; s < samples; ++s) {
          const UMatrix x = ctx.sample(*a, rng), y = ctx.sample(*b, rng);
          const UMatrix g = space().commutator(x, y);
          if (!space().congruence_membership(prod, g)) {
            ++violations;
            fail_with(x, y, g);
          }
        }
        c.method += std::string(c.method.empty() ? "" : ",") + "samples";
        c.sizes["samples"] = samples;
        c.sizes["violations"] = violations;
        if (c.status != CheckStatus::fail)
          c.status = proof ? CheckStatus::pass : CheckStatus::verified_sampled;
      });
    }
  }

  void standard(Run& run, const json& p) {
    for (const auto& t : tuple_list(p, "pairs", 2)) {
      run_case(run, tuple_label(t), [&](CaseReport& c) {
        check_equal(run, c, left_normed_expr(t, {'E', 'G'}), left_normed_expr(t, {'E', 'E'}));
        if (zero("(" + t[0] + "." + t[1] + ")")) add_flag(c.flags, "degenerate");
      });
    }
  }

  void absolute(Run& run, const json& p) {
    for (const auto& i : ideal_list(p, "ideals")) {
      run_case(run, tuple_label({i}), [&](CaseReport& c) {
        if (!ctx.ambient()) throw detail::Skip("CU needs an enumerable ambient GU");
        check_equal(run, c, "[G(A),E(" + i + ")]", "E(" + i + ")");
        check_equal(run, c, "[E(A),C(" + i + ")]", "E(" + i + ")");
      });
    }
  }

  void triple(Run& run, const json& p) {
    for (const auto& t : tuple_list(p, "triples", 3)) {
      run_case(run, tuple_label(t), [&](CaseReport& c) {
        check_equal(run, c, left_normed_expr(t, {'E', 'G', 'G'}), left_normed_expr(t, {'E', 'E', 'E'}));
        if (zero("(" + t[0] + "." + t[1] + ")")) add_flag(c.flags, "degenerate");
        if (ctx.group(left_normed_expr(t, {'E', 'E', 'E'}))->trivial()) add_flag(c.flags, "trivial");
      });
    }
  }

  void multi(Run& run, const json& p) {
    const std::size_t max_m = p.value("max_m", 3);
    for (const auto& t : tuple_list(p, "tuples", 0)) {
      if (t.size() < 2 || t.size() > max_m + 1)
        throw ConfigError("multi tuples need 2.." + std::to_string(max_m + 1) + " ideals");
      run_case(run, tuple_label(t), [&](CaseReport& c) {
        std::vector<char> g(t.size(), 'G'), e(t.size(), 'E');
        g[0] = 'E';
        const std::string rhs = left_normed_expr(t, e);
        check_equal(run, c, left_normed_expr(t, g), rhs);
        std::string prod = t[0];
        bool degenerate = false;
        for (std::size_t k = 1; k < t.size(); ++k) {
          prod = "(" + prod + "." + t[k] + ")";
          degenerate = degenerate || zero(prod);
        }
        if (degenerate) add_flag(c.flags, "degenerate");
        if (ctx.group(rhs)->trivial()) add_flag(c.flags, "trivial");
      });
    }
  }

  void bracketing(Run& run, const json& p) {
    const auto leaves = tuple_list(json{{"x", {p.at("leaves")}}}, "x", 0).front();
    const std::string other = p.value("kind", "G");
    if (other != "G" && other != "C" && other != "E") throw ConfigError("bracketing kind must be G, C or E");
    std::vector<int> forced;
    if (!p.contains("forced") || p.at("forced") == "all") {
      for (std::size_t j = 0; j < leaves.size(); ++j) forced.push_back(static_cast<int>(j));
    } else {
      forced = p.at("forced").get<std::vector<int>>();
    }
    for (const CommExpr& tree : trees(p, static_cast<int>(leaves.size()))) {
      for (int j : forced) {
        if (j < 0 || j >= static_cast<int>(leaves.size())) throw ConfigError("forced leaf out of range");
        run_case(run, tree.to_string() + " E at " + std::to_string(j), [&](CaseReport& c) {
          std::vector<std::string> kinds(leaves.size(), other), all_e(leaves.size(), "E");
          kinds[j] = "E";
          const std::string rhs = tree_expr(tree, leaves, all_e);
          check_equal(run, c, tree_expr(tree, leaves, kinds), rhs);
          if (ctx.group(rhs)->trivial()) add_flag(c.flags, "trivial");
        });
      }
    }
  }

  void double_reduction(Run& run, const json& p) {
    const auto leaves = tuple_list(json{{"x", {p.at("leaves")}}}, "x", 0).front();
    std::vector<std::string> all_e(leaves.size(), "E");
    for (const CommExpr& tree : trees(p, static_cast<int>(leaves.size()))) {
      if (tree.is_leaf()) continue;
      const int k = tree.left().leaf_count() - 1;
      run_case(run, tree.to_string() + " k=" + std::to_string(k), [&](CaseReport& c) {
        const std::string lhs = tree_expr(tree, leaves, all_e);
        const std::string rhs =
            "[E(" + tree_ideal(tree.left(), leaves) + "),E(" + tree_ideal(tree.right(), leaves) + ")]";
        check_equal(run, c, lhs, rhs);
        if (ctx.group(lhs)->trivial()) add_flag(c.flags, "trivial");
      });
    }
  }

  void m_conditions(Run& run, const json& p) {
    const auto names = ideal_list(p, "ideals");
    for (const auto& i : names) {
      for (const auto& j : names) {
        if (i == j || !contained_in(ctx.ideal(i), ctx.ideal(j))) continue;
        run_case(run, "M1 " + tuple_label({i, j}), [&](CaseReport& c) {
          check_includes(run, c, "E(" + i + ")", "E(" + j + ")");
          check_includes(run, c, "G(" + i + ")", "G(" + j + ")");
        });
      }
    }
    for (const auto& i : names) {
      for (const auto& j : names) {
        run_case(run, "M2 " + tuple_label({i, j}), [&](CaseReport& c) {
          check_equal(run, c, left_normed_expr({i, j}, {'E', 'G'}), left_normed_expr({i, j}, {'E', 'E'}));
        });
      }
    }
    for (const auto& i : names) {
      for (const auto& j : names) {
        for (const auto& k : names) {
          run_case(run, "M3 " + tuple_label({i, j, k}), [&](CaseReport& c) {
            check_equal(run, c, left_normed_expr({i, j, k}, {'E', 'G', 'G'}),
                        left_normed_expr({i, j, k}, {'E', 'E', 'E'}));
            if (ctx.group(left_normed_expr({i, j, k}, {'E', 'E', 'E'}))->trivial()) add_flag(c.flags, "trivial");
          });
        }
      }
    }
    for (const auto& i : names) {
      for (const auto& j : names) {
        run_case(run, "M4 " + tuple_label({i, j}), [&](CaseReport& c) {
          const std::string prod = "(" + i + "." + j + ")";
          const std::vector<std::string> chain{"E(" + prod + ")", "[E(" + i + "),E(" + j + ")]",
                                               "[E(" + i + "),G(" + j + ")]", "[G(" + i + "),G(" + j + ")]",
                                               "G(" + prod + ")"};
          for (std::size_t s = 0; s + 1 < chain.size(); ++s) check_includes(run, c, chain[s], chain[s + 1]);
        });
      }
    }
  }

  void comgenerator(Run& run, const json& p) {
    for (const auto& t : tuple_list(p, "pairs", 2)) {
      run_case(run, tuple_label(t), [&](CaseReport& c) {
        check_equal(run, c, "TG(" + t[0] + "," + t[1] + ")", "[E(" + t[0] + "),E(" + t[1] + ")]");
      });
    }
  }

  void probe(CaseReport& c, const std::string& a, const std::string& b) {
    const GroupPtr x = ctx.group(a), y = ctx.group(b);
    note(c, x);
    note(c, y);
    const Verdict v = ctx.equal(x, y);
    c.method = v.method;
    if (v.result == Tri::no) {
      add_flag(c.flags, "counterexample");
    } else if (v.result == Tri::unknown) {
      c.status = CheckStatus::skipped;
      c.reason = "undecided";
    } else {
      add_flag(c.flags, "coincide");
    }
  }

  void probe_assoc(Run& run, const json& p) {
    for (const auto& t : tuple_list(p, "triples", 3)) {
      run_case(run, tuple_label(t), [&](CaseReport& c) {
        probe(c, "[[E(" + t[0] + "),E(" + t[1] + ")],E(" + t[2] + ")]",
              "[E(" + t[0] + "),[E(" + t[1] + "),E(" + t[2] + ")]]");
      });
    }
  }

  void probe_product(Run& run, const json& p) {
    for (const auto& t : tuple_list(p, "pairs", 2)) {
      run_case(run, tuple_label(t), [&](CaseReport& c) {
        probe(c, "E((" + t[0] + "." + t[1] + "))", "[E(" + t[0] + "),E(" + t[1] + ")]");
      });
    }
  }

  CheckReport run(const CheckSpec& spec) {
    const auto start = std::chrono::steady_clock::now();
    Run r;
    r.report.name = spec.name;
    json p;
    try {
      p = json::parse(spec.params);
    } catch (const json::exception& e) {
      throw ConfigError(spec.name + ": " + e.what());
    }
    try {
      const std::map<std::string, void (Impl::*)(Run&, const json&)> table{
          {"validate", &Impl::validate},
          {"steinberg", &Impl::steinberg},
          {"genelm", &Impl::genelm},
          {"perfectness", &Impl::perfectness},
          {"habdank-chain", &Impl::habdank},
          {"level", &Impl::level},
          {"standard", &Impl::standard},
          {"absolute", &Impl::absolute},
          {"triple", &Impl::triple},
          {"multi", &Impl::multi},
          {"bracketing", &Impl::bracketing},
          {"double-reduction", &Impl::double_reduction},
          {"m-conditions", &Impl::m_conditions},
          {"comgenerator", &Impl::comgenerator},
          {"probe-assoc", &Impl::probe_assoc},
          {"probe-product", &Impl::probe_product},
      };
      const auto it = table.find(spec.name);
      if (it == table.end()) throw ConfigError("unknown check '" + spec.name + "'");
      (this->*(it->second))(r, p);
    } catch (const json::exception& e) {
      throw ConfigError(spec.name + ": " + e.what());
    }
    std::vector<CheckStatus> parts;
    for (const auto& c : r.report.cases) parts.push_back(c.status);
    r.report.status = combine(parts);
    if (r.report.status == CheckStatus::fail) {
      if (!r.witness) {
        json w;
        w["check"] = spec.name;
        w["kind"] = "none";
        r.witness = w;
      }
      r.report.witness = r.witness->dump();
    }
    if (r.report.status == CheckStatus::skipped && !r.report.cases.empty())
      r.report.reason = r.report.cases.front().reason;
    std::sort(r.report.flags.begin(), r.report.flags.end());
    r.report.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r.report;
  }

  ReplayResult replay(const std::string& text) {
    ReplayResult out;
    json w;
    try {
      w = json::parse(text);
    } catch (const json::exception& e) {
      throw ConfigError(std::string("witness: ") + e.what());
    }
    const std::string kind = w.value("kind", "");
    try {
      if (kind == "relation") {
        RelationArgs a{OmegaIndex{w.at("i").get<int>()}, OmegaIndex{w.at("j").get<int>()},
                       OmegaIndex{w.at("h").get<int>()}, OmegaIndex{w.at("k").get<int>()},
                       w.at("xi").get<Elem>(), w.at("zeta").get<Elem>()};
        Relation rel = Relation::R1;
        for (Relation r : kAllRelations) {
          if (to_string(r) == w.at("relation").get<std::string>()) rel = r;
        }
        out.reproduced = !steinberg_relation_check(space(), rel, a);
        out.detail = to_string(rel, a) + (out.reproduced ? " fails" : " holds");
        return out;
      }
      if (kind == "form-ideal") {
        const FormIdeal fi = ctx.ideal(w.at("ideal").get<std::string>());
        const auto r = validate_form_ideal(ctx.form_ring(), fi);
        out.reproduced = !r.valid();
        out.detail = r.valid() ? "form ideal is valid" : r.violations.front();
        return out;
      }
      if (kind != "membership") throw ConfigError("witness kind '" + kind + "' cannot be replayed");
      const auto rows = w.at("matrix").get<std::vector<std::vector<int>>>();
      if (static_cast<int>(rows.size()) != space().dim()) throw ConfigError("witness matrix has wrong size");
      const UMatrix g = space().from_rows(rows);
      if (!space().gu_membership(g)) {
        out.detail = "matrix is not in GU";
        return out;
      }
      if (w.contains("factors")) {
        std::vector<UMatrix> f;
        for (const json& x : w.at("factors")) {
          const UMatrix m = space().from_rows(x.at("matrix").get<std::vector<std::vector<int>>>());
          const GroupPtr grp = ctx.group(x.at("group").get<std::string>());
          if (!space().gu_membership(m) || ctx.member(*grp, m) != Tri::yes) {
            out.detail = "factor not shown to lie in " + grp->expr;
            return out;
          }
          f.push_back(m);
        }
        if (f.size() != 2 || space().commutator(f[0], f[1]) != g) {
          out.detail = "matrix is not the commutator of the factors";
          return out;
        }
      } else {
        const GroupPtr lhs = ctx.group(w.at("lhs").get<std::string>());
        if (ctx.member(*lhs, g) != Tri::yes) {
          out.detail = "matrix not shown to lie in " + lhs->expr;
          return out;
        }
      }
      const GroupPtr rhs = ctx.group(w.at("rhs").get<std::string>());
      const Tri t = ctx.member(*rhs, g);
      out.reproduced = t == Tri::no;
      out.detail = t == Tri::no ? "matrix lies outside " + rhs->expr
                   : t == Tri::yes ? "matrix lies in " + rhs->expr
                                   : "membership in " + rhs->expr + " undecided";
    } catch (const json::exception& e) {
      throw ConfigError(std::string("witness: ") + e.what());
    }
    return out;
  }
};

Verifier::Verifier(ScenarioConfig cfg) : impl_(std::make_unique<Impl>(std::move(cfg))) {}
Verifier::~Verifier() = default;

const ScenarioConfig& Verifier::config() const { return impl_->cfg; }

CheckReport Verifier::run_check(const CheckSpec& spec) { return impl_->run(spec); }

std::vector<CheckReport> Verifier::run_all() {
  std::vector<CheckReport> out;
  for (const CheckSpec& c : impl_->cfg.checks) out.push_back(run_check(c));
  return out;
}

GroupSummary Verifier::summarize(const std::string& expression) {
  GroupSummary s;
  s.expression = expression;
  try {
    const GroupPtr g = impl_->ctx.group(expression);
    s.expression = g->expr;
    s.status = g->h.status;
    s.size = g->h.size();
    s.generators = g->h.generators.size();
    s.flags = g->flags;
  } catch (const BudgetExceeded&) {
    s.status = StoreStatus::budget_exceeded;
  }
  return s;
}

std::vector<std::pair<std::string, FormIdeal>> Verifier::lattice() { return impl_->ctx.lattice(); }

ReplayResult Verifier::replay(const std::string& witness_json) { return impl_->replay(witness_json); }

std::string emit_report(const std::vector<CheckReport>& reports, const std::string& format) {
  if (format == "json") {
    json out = json::array();
    for (const CheckReport& r : reports) {
      json j;
      j["name"] = r.name;
      j["status"] = to_string(r.status);
      if (r.witness) j["witness"] = json::parse(*r.witness);
      j["elapsed_ms"] = std::round(r.elapsed_ms * 1000.0) / 1000.0;
      j["sizes"] = r.sizes;
      j["flags"] = r.flags;
      if (!r.reason.empty()) j["reason"] = r.reason;
      json cases = json::array();
      for (const CaseReport& c : r.cases) {
        json cj;
        cj["case"] = c.label;
        cj["status"] = to_string(c.status);
        cj["method"] = c.method;
        cj["sizes"] = c.sizes;
        cj["flags"] = c.flags;
        if (!c.reason.empty()) cj["reason"] = c.reason;
        cases.push_back(std::move(cj));
      }
      j["cases"] = std::move(cases);
      out.push_back(std::move(j));
    }
    return out.dump(2);
  }
  if (format != "text") throw ConfigError("report format must be json or text");
  std::ostringstream os;
  for (const CheckReport& r : reports) {
    os << r.name << ": " << to_string(r.status) << " (" << static_cast<long long>(r.elapsed_ms) << " ms)";
    if (!r.reason.empty()) os << " " << r.reason;
    os << "\n";
    for (const CaseReport& c : r.cases) {
      os << "  " << c.label << ": " << to_string(c.status);
      if (!c.method.empty()) os << " [" << c.method << "]";
      for (const auto& f : c.flags) os << " {" << f << "}";
      if (!c.reason.empty()) os << " " << c.reason;
      os << "\n";
    }
    if (r.witness) os << "  witness: " << *r.witness << "\n";
  }
  return os.str();
}

int exit_code(const std::vector<CheckReport>& reports) {
  std::vector<CheckStatus> parts;
  for (const auto& r : reports) parts.push_back(r.status);
  const CheckStatus s = combine(parts);
  if (s == CheckStatus::fail) return 1;
  if (s == CheckStatus::budget_exceeded) return 2;
  return 0;
}

}  // namespace formring
