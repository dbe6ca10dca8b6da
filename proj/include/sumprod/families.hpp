#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sumprod/claims.hpp"
#include "sumprod/finite_set.hpp"
#include "sumprod/lattice.hpp"

namespace sumprod {

/// splitmix64: state += 0x9e3779b97f4a7c15, then two xor-shift-multiply
/// rounds. below(n) is next() % n.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  std::uint64_t below(std::uint64_t n) { return next() % n; }

 private:
  std::uint64_t state_;
};

enum class FamilyKind { Range, Ap, Gp, Smooth, File, RandomSubset };

struct FamilySpec {
  FamilyKind kind = FamilyKind::Range;
  std::size_t n = 0;
  Rational a{1};            // ap/gp start
  Rational d{1};            // ap step
  Rational r{2};            // gp ratio
  std::uint64_t y = 0;      // smoothness bound
  std::uint64_t pool = 0;   // random_subset draws from {1..pool}
  std::optional<std::uint64_t> seed;
  std::string path;

  /// Compact form such as "gp(1,2,12)" or "random_subset(7,100,10)".
  std::string label() const;
};

/// Throws InvalidSpec, IoError (file).
FiniteSet generate(const FamilySpec& spec);

/// Parses one manifest family object. "N" may be an integer, an array, or
/// {"from": a, "to": b}; "repeat": r on random_subset expands to seeds
/// seed, seed+1, ..., seed+r-1. Throws InvalidSpec.
std::vector<FamilySpec> parse_family(const Json& j);

/// Random lattice sets for claims over Z^d.
struct LatticeGen {
  std::size_t max_dim = 4;
  std::size_t max_size = 12;
  std::int64_t coord_range = 3;
  std::uint64_t seed = 0;
};

struct ClaimRequest {
  std::string id;
  /// h, k, l, n, m, alpha, epsilon, K, assume_large_d; "B" as a family object
  /// or an explicit array; "X"/"Y" as arrays of points; "lattice" as a
  /// LatticeGen object.
  Json params = Json::object();
};

struct Manifest {
  std::vector<FamilySpec> families;
  std::vector<ClaimRequest> claims;
};

/// Throws ParseError (bad JSON) or InvalidSpec.
Manifest parse_manifest(const std::string& text);
Manifest read_manifest(const std::string& path);

struct SweepOptions {
  Budget budget;
  std::size_t threads = 1;
  /// When false, elapsed_ms is zeroed so reports are byte-reproducible.
  bool timing = false;
  /// Mixed into lattice seeds.
  std::uint64_t seed = 0;
};

/// Evaluates every (family, claim) pair; order is family-major and does not
/// depend on the thread count. Per-instance errors become error verdicts.
std::vector<Verdict> sweep(const std::vector<FamilySpec>& specs,
                           const std::vector<ClaimRequest>& claims,
                           const SweepOptions& opts = {});

enum class ReportFormat { Json, Csv };
void write_report(std::ostream& out, const std::vector<Verdict>& verdicts, ReportFormat fmt);

struct SweepSummary {
  std::size_t assert_hold = 0, assert_fail = 0;
  std::size_t report_hold = 0, report_fail = 0;
  std::size_t errors = 0;
};
SweepSummary summarize(const std::vector<Verdict>& verdicts);
std::string to_string(const SweepSummary& s);

}  // namespace sumprod
