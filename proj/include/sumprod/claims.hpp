#pragma once

/**
 * Claim registry: each inequality or identity about finite sets is a named
 * claim that can be instantiated on concrete sets and evaluated into a
 * Verdict.
 *
 * Claims that hold for every finite instance run in assert mode; their
 * failure is a defect. Asymptotic claims, claims with implicit constants and
 * claims with unquantified premises run in report mode: both sides are
 * measured and the slack recorded, but a false `holds` is not an error.
 *
 * Integer-valued sides are compared exactly. Sides involving tower
 * expressions (h^{65h}, t^{12t}, (6d)^{3d}) are compared in the log domain
 * with ExtReal arithmetic and tolerance 1e-9 relative to the larger side.
 * All logarithms are natural.
 */

#include "json.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sumprod/budget.hpp"
#include "sumprod/error.hpp"
#include "sumprod/ext_real.hpp"
#include "sumprod/finite_set.hpp"
#include "sumprod/lattice.hpp"

namespace sumprod {

using Json = nlohmann::ordered_json;

/// floor(t/2).
std::size_t gamma0(std::size_t t);
/// floor(t/2) for odd t, t/2 - 1 for even t >= 2.
std::size_t gamma1(std::size_t t);

/// ln D_{t,m} = t^{12t} (m+1), in extended range.
ExtReal log_D(std::size_t t, std::size_t m);

enum class Mode { Assert, Report };
std::string_view to_string(Mode m);

struct ClaimInstance {
  std::string claim_id;
  std::optional<FiniteSet> a, b;
  std::optional<LatticeSet> x, y;
  std::optional<std::size_t> h, k, l, n, m;
  std::optional<Rational> alpha;
  std::optional<Rational> c_ratio;
  std::optional<Rational> k_param;
  std::optional<Rational> epsilon;
  std::optional<bool> assume_large_d;

  /// Names of the parameters that are set ("A", "h", "K", ...).
  std::vector<std::string> present() const;
  Json echo() const;
};

struct Verdict {
  std::string claim;
  Json params = Json::object();
  std::optional<ExtReal> lhs_log, rhs_log;
  std::optional<std::string> lhs_exact, rhs_exact;
  bool holds = false;
  /// Positive when the claim holds, whatever its direction. Nullopt when one
  /// side is 0 and the slack is infinite.
  std::optional<ExtReal> slack_log;
  Mode mode = Mode::Report;
  double elapsed_ms = 0;
  Json details = Json::object();
  /// Set for error verdicts (premise violations, budget, bad parameters).
  std::optional<std::string> error;
  std::optional<ErrorCode> error_code;
};

struct ClaimInfo {
  std::string_view id;
  Mode mode;
  std::vector<std::string_view> required;
  std::vector<std::string_view> optional;
  std::string_view statement;
};

const std::vector<ClaimInfo>& claim_registry();
/// Nullptr when unknown.
const ClaimInfo* find_claim(std::string_view id);

/// Evaluates one instance. Throws UnknownClaim, MissingParam (missing or
/// unexpected parameters), BudgetExceeded, PremiseViolated, EmptyStarSet.
Verdict verify(const ClaimInstance& inst, const Budget& budget = {});

/// Like verify, but every library error becomes an error verdict.
Verdict verify_captured(const ClaimInstance& inst, const Budget& budget = {});

Json to_json(const Verdict& v);
std::string csv_header();
std::string to_csv(const Verdict& v);

}  // namespace sumprod
