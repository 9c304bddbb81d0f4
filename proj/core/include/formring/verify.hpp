#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "formring/scenario.hpp"

namespace formring {

enum class CheckStatus { pass, fail, verified_sampled, budget_exceeded, skipped };

/// "pass", "fail", "verified-sampled", "budget-exceeded", "skipped"
std::string to_string(CheckStatus s);

/// fail > budget-exceeded > verified-sampled > pass; skipped only when every
/// input is skipped.
CheckStatus combine(const std::vector<CheckStatus>& parts);

struct CaseReport {
  std::string label;
  CheckStatus status = CheckStatus::pass;
  std::string method;
  std::vector<std::string> flags;
  std::map<std::string, std::uint64_t> sizes;
  std::string reason;
};

struct CheckReport {
  std::string name;
  CheckStatus status = CheckStatus::pass;
  /// JSON text, present iff status is fail.
  std::optional<std::string> witness;
  double elapsed_ms = 0;
  std::map<std::string, std::uint64_t> sizes;
  std::vector<CaseReport> cases;
  std::vector<std::string> flags;
  std::string reason;
};

/// Outcome of replaying a witness.
struct ReplayResult {
  bool reproduced = false;
  std::string detail;
};

/// Sizes of a subgroup computed through the verifier.
struct GroupSummary {
  std::string expression;
  StoreStatus status = StoreStatus::generated;
  std::uint64_t size = 0;
  std::size_t generators = 0;
  std::vector<std::string> flags;
};

/// Runs the checks of one scenario. Subgroups are computed once and shared
/// between checks.
class Verifier {
 public:
  explicit Verifier(ScenarioConfig cfg);
  ~Verifier();
  Verifier(const Verifier&) = delete;
  Verifier& operator=(const Verifier&) = delete;

  const ScenarioConfig& config() const;

  /// Throws ConfigError for unknown checks or bad parameters.
  CheckReport run_check(const CheckSpec& spec);
  std::vector<CheckReport> run_all();

  /// Evaluates a group expression such as "[E(Q),G(A)]".
  GroupSummary summarize(const std::string& expression);

  /// The ideals checks quantify over by default, with their names.
  std::vector<std::pair<std::string, FormIdeal>> lattice();

  ReplayResult replay(const std::string& witness_json);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

std::string emit_report(const std::vector<CheckReport>& reports, const std::string& format);

/// Process exit code for a finished run: 1 on any fail, 2 on any
/// budget-exceeded, else 0.
int exit_code(const std::vector<CheckReport>& reports);

}  // namespace formring
