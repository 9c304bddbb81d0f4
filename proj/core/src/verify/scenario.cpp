#include "formring/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "formring/error.hpp"

namespace formring {

using json = nlohmann::ordered_json;

const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names{
      "validate",     "steinberg", "genelm",       "perfectness",      "habdank-chain",
      "level",        "standard",  "absolute",     "triple",           "multi",
      "bracketing",   "double-reduction",          "m-conditions",     "comgenerator",
      "probe-assoc",  "probe-product"};
  return names;
}

namespace {

[[noreturn]] void bad(const std::string& what) { throw ConfigError(what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

int as_int(const json& j, const char* what) {
  if (!j.is_number_integer()) bad(std::string(what) + " must be an integer");
  return j.get<int>();
}

Subset subset_from(const json& j, int order, const char* what) {
  if (!j.is_array()) bad(std::string(what) + " must be a list of elements");
  Subset s;
  for (const json& e : j) {
    const int v = as_int(e, what);
    if (v < 0 || v >= order) bad(std::string(what) + " element out of range");
    s.insert(static_cast<Elem>(v));
  }
  return s;
}

InvolutiveRing ring_from(const json& j) {
  const std::string kind = field(j, "kind").get<std::string>();
  if (kind == "zmod") {
    const std::string inv = j.value("involution", "trivial");
    if (inv != "trivial") bad("zmod supports only the trivial involution");
    return InvolutiveRing::zmod(as_int(field(j, "m"), "m"));
  }
  if (kind == "quadratic") {
    const json& poly = field(j, "poly");
    const json& cx = field(j, "conj_x");
    if (!poly.is_array() || poly.size() != 3 || as_int(poly[2], "poly") != 1)
      bad("poly must be [c0, c1, 1]");
    if (!cx.is_array() || cx.size() != 2) bad("conj_x must be [a0, a1]");
    return InvolutiveRing::quadratic(as_int(field(j, "m"), "m"), as_int(poly[0], "poly"),
                                     as_int(poly[1], "poly"), as_int(cx[0], "conj_x"),
                                     as_int(cx[1], "conj_x"));
  }
  if (kind == "product") {
    const json& f = field(j, "factors");
    if (!f.is_array() || f.size() != 2) bad("product needs two factors");
    const std::string inv = j.value("involution", "componentwise");
    InvolutiveRing::ProductInvolution pi;
    if (inv == "swap") {
      pi = InvolutiveRing::ProductInvolution::swap;
    } else if (inv == "componentwise") {
      pi = InvolutiveRing::ProductInvolution::componentwise;
    } else {
      bad("unknown product involution '" + inv + "'");
    }
    return InvolutiveRing::product(ring_from(f[0]), ring_from(f[1]), pi);
  }
  if (kind == "tables") {
    const int order = as_int(field(j, "order"), "order");
    if (order < 1 || order > 64) bad("tables order must be in 1..64");
    const auto table = [&](const char* key) {
      const json& t = field(j, key);
      std::vector<Elem> out;
      if (!t.is_array() || static_cast<int>(t.size()) != order) bad(std::string(key) + " has wrong shape");
      for (const json& row : t) {
        if (!row.is_array() || static_cast<int>(row.size()) != order) bad(std::string(key) + " has wrong shape");
        for (const json& e : row) out.push_back(static_cast<Elem>(as_int(e, key)));
      }
      return out;
    };
    std::vector<Elem> conj;
    for (const json& e : field(j, "conj")) conj.push_back(static_cast<Elem>(as_int(e, "conj")));
    return InvolutiveRing::from_tables(order, table("add"), table("mul"), std::move(conj));
  }
  bad("unknown ring kind '" + kind + "'");
}

Subset form_parameter_from(const json& j, const InvolutiveRing& ring, Elem lambda) {
  if (j.is_string()) {
    const auto b = lambda_bounds(ring, lambda);
    if (j == "min") return b.min;
    if (j == "max") return b.max;
    bad("form_parameter must be \"min\", \"max\" or a list");
  }
  return subset_from(j, ring.order(), "form_parameter");
}

FormIdeal ideal_from(const json& j, const FormRing& fr) {
  const InvolutiveRing& R = fr.r();
  std::vector<Elem> gens;
  for (const json& e : field(j, "generators")) {
    const int v = as_int(e, "generators");
    if (v < 0 || v >= R.order()) bad("ideal generator out of range");
    gens.push_back(static_cast<Elem>(v));
  }
  FormIdeal fi;
  fi.ideal = ideal_closure(R, gens);
  const json& g = field(j, "gamma");
  if (g.is_string()) {
    const auto b = gamma_bounds(fr, fi.ideal);
    if (g == "gamma_min") {
      fi.gamma = b.min;
    } else if (g == "gamma_max") {
      fi.gamma = b.max;
    } else {
      bad("gamma must be \"gamma_min\", \"gamma_max\" or a list");
    }
  } else {
    fi.gamma = subset_from(g, R.order(), "gamma");
  }
  return fi;
}

bool valid_name(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

const std::vector<std::string> kTheoremChecks{
    "genelm", "perfectness", "habdank-chain", "level",       "standard",        "absolute",
    "triple", "multi",       "bracketing",    "double-reduction", "m-conditions", "comgenerator"};

}  // namespace

InvolutiveRing parse_ring_spec(const std::string& json_text) {
  try {
    return ring_from(json::parse(json_text));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("ring spec: ") + e.what());
  }
}

ScenarioConfig parse_scenario(const std::string& json_text) {
  ScenarioConfig cfg;
  try {
    const json j = json::parse(json_text);
    if (!j.is_object()) bad("scenario must be a JSON object");
    cfg.name = j.value("name", "scenario");
    auto ring = std::make_shared<const InvolutiveRing>(ring_from(field(j, "ring")));
    const int lambda = as_int(field(j, "lambda"), "lambda");
    if (lambda < 0 || lambda >= ring->order()) bad("lambda out of range");
    const Subset lam = form_parameter_from(field(j, "form_parameter"), *ring, static_cast<Elem>(lambda));
    cfg.form_ring = make_form_ring(ring, static_cast<Elem>(lambda), lam);
    cfg.n = as_int(field(j, "n"), "n");
    if (cfg.n < 1 || cfg.n > kMaxDim / 2) bad("n must be in 1..4");
    if (j.contains("ideals")) {
      const json& ideals = j.at("ideals");
      if (!ideals.is_object()) bad("ideals must be an object");
      for (auto it = ideals.begin(); it != ideals.end(); ++it) {
        if (!valid_name(it.key())) bad("ideal name '" + it.key() + "' must be alphanumeric");
        cfg.ideals.emplace_back(it.key(), ideal_from(it.value(), cfg.form_ring));
      }
    }
    if (j.contains("budget")) {
      const auto b = j.at("budget").get<long long>();
      if (b < 1) bad("budget must be positive");
      cfg.budget = static_cast<std::size_t>(b);
    }
    if (j.contains("samples")) cfg.samples = j.at("samples").get<std::size_t>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    cfg.enumerate_absolute = j.value("enumerate_absolute", true);
    if (j.contains("checks")) {
      for (const json& c : j.at("checks")) {
        CheckSpec spec;
        if (c.is_string()) {
          spec.name = c.get<std::string>();
        } else {
          spec.name = field(c, "name").get<std::string>();
          if (c.contains("params")) spec.params = c.at("params").dump();
        }
        const auto& names = known_checks();
        if (std::find(names.begin(), names.end(), spec.name) == names.end())
          bad("unknown check '" + spec.name + "'");
        if (cfg.n < 3 &&
            std::find(kTheoremChecks.begin(), kTheoremChecks.end(), spec.name) != kTheoremChecks.end())
          bad("check '" + spec.name + "' needs n >= 3");
        cfg.checks.push_back(std::move(spec));
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("scenario: ") + e.what());
  } catch (const RingError& e) {
    throw ConfigError(std::string("scenario: ") + e.what());
  }
  return cfg;
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

}  // namespace formring
