#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "formring/error.hpp"
#include "formring/gu_level.hpp"
#include "formring/verify.hpp"

using namespace formring;

namespace {

struct Options {
  std::string config, report, format = "json", replay, group, ideal;
  std::optional<std::uint64_t> seed;
  std::optional<long long> budget;
};

ScenarioConfig load(const Options& o) {
  ScenarioConfig cfg = load_scenario(o.config);
  if (o.seed) cfg.seed = *o.seed;
  if (o.budget) {
    if (*o.budget < 1) throw ConfigError("--budget must be positive");
    cfg.budget = static_cast<std::size_t>(*o.budget);
  }
  return cfg;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_verify(const Options& o) {
  Verifier v(load(o));
  if (!o.replay.empty()) {
    const ReplayResult r = v.replay(slurp(o.replay));
    std::cout << (r.reproduced ? "reproduced: " : "not reproduced: ") << r.detail << "\n";
    return r.reproduced ? 1 : 0;
  }
  if (o.report.empty()) throw ConfigError("--report is required");
  const auto reports = v.run_all();
  std::ofstream out(o.report);
  if (!out) throw ConfigError("cannot write " + o.report);
  out << emit_report(reports, o.format) << "\n";
  if (!out) throw ConfigError("cannot write " + o.report);
  std::cout << emit_report(reports, "text");
  return exit_code(reports);
}

int run_enumerate(const Options& o) {
  Verifier v(load(o));
  std::string expr;
  if (o.group == "E") {
    expr = "E(" + o.ideal + ")";
  } else if (o.group == "G") {
    expr = "G(" + o.ideal + ")";
  } else {
    expr = "FU(" + o.ideal + ")";
  }
  const GroupSummary s = v.summarize(expr);
  if (s.status != StoreStatus::exact) {
    std::cout << s.expression << ": " << to_string(s.status) << "\n";
    return 2;
  }
  std::cout << s.size << "\n";
  return 0;
}

int run_ideals(const Options& o) {
  Verifier v(load(o));
  const FormRing& fr = v.config().form_ring;
  for (const auto& [name, fi] : v.lattice()) {
    std::cout << name << " " << describe(fi) << " |I|=" << fi.ideal.members.size()
              << " |Gamma|=" << fi.gamma.size();
    if (is_square_zero(fr.r(), fi.ideal.members)) std::cout << " I^2=0";
    std::cout << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hyperbolic unitary groups over finite form rings"};
  app.require_subcommand(1);
  Options o;

  auto* verify = app.add_subcommand("verify", "run the checks of a scenario");
  verify->add_option("--config", o.config, "scenario JSON")->required()->check(CLI::ExistingFile);
  verify->add_option("--report", o.report, "report output path");
  verify->add_option("--format", o.format, "report format")->check(CLI::IsMember({"json", "text"}));
  verify->add_option("--seed", o.seed, "override the scenario seed");
  verify->add_option("--budget", o.budget, "override the element budget");
  verify->add_option("--replay", o.replay, "witness JSON to replay")->check(CLI::ExistingFile);

  auto* enumerate = app.add_subcommand("enumerate", "print the size of one subgroup");
  enumerate->add_option("--config", o.config, "scenario JSON")->required()->check(CLI::ExistingFile);
  enumerate->add_option("--group", o.group, "E, G or F (FU)")->required()->check(CLI::IsMember({"E", "G", "F"}));
  enumerate->add_option("--ideal", o.ideal, "ideal name or product")->required();
  enumerate->add_option("--budget", o.budget, "override the element budget");

  auto* ideals = app.add_subcommand("ideals", "list the form-ideal lattice");
  ideals->add_option("--config", o.config, "scenario JSON")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  try {
    if (verify->parsed()) return run_verify(o);
    if (enumerate->parsed()) return run_enumerate(o);
    return run_ideals(o);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
