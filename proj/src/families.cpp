#include "sumprod/families.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "sumprod/factor.hpp"
#include "sumprod/multdim.hpp"

namespace sumprod {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

constexpr std::uint64_t kMaxPool = 10'000'000;

[[noreturn]] void bad_spec(const std::string& msg) { fail(ErrorCode::InvalidSpec, msg); }

const char* kind_name(FamilyKind k) {
  switch (k) {
    case FamilyKind::Range: return "range";
    case FamilyKind::Ap: return "ap";
    case FamilyKind::Gp: return "gp";
    case FamilyKind::Smooth: return "smooth";
    case FamilyKind::File: return "file";
    case FamilyKind::RandomSubset: return "random_subset";
  }
  return "?";
}

FamilyKind kind_from(const std::string& s) {
  for (auto k : {FamilyKind::Range, FamilyKind::Ap, FamilyKind::Gp, FamilyKind::Smooth,
                 FamilyKind::File, FamilyKind::RandomSubset})
    if (s == kind_name(k)) return k;
  bad_spec("unknown family kind '" + s + "'");
}

FiniteSet smooth_numbers(std::uint64_t y, std::size_t n) {
  std::vector<unsigned long> primes;
  for (std::uint64_t p = 2; p <= y; ++p)
    if (is_prime_u64(p)) primes.push_back(static_cast<unsigned long>(p));
  if (primes.empty() && n > 1) bad_spec("smooth(1, N) has only one element");
  std::set<mpz_class> frontier{mpz_class(1)};
  std::vector<Rational> out;
  out.reserve(n);
  while (out.size() < n) {
    mpz_class x = *frontier.begin();
    frontier.erase(frontier.begin());
    for (unsigned long p : primes) frontier.insert(x * p);
    out.emplace_back(x);
  }
  return FiniteSet::from_sorted_unique(std::move(out));
}

FiniteSet random_subset(std::uint64_t seed, std::uint64_t pool, std::size_t n) {
  if (n > pool) bad_spec("random_subset needs N <= pool");
  if (pool > kMaxPool) bad_spec("random_subset pool is limited to 10^7");
  // Partial Fisher-Yates over 1..pool.
  std::vector<std::uint64_t> xs(pool);
  for (std::uint64_t i = 0; i < pool; ++i) xs[i] = i + 1;
  SplitMix64 rng(seed);
  std::vector<Rational> out;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t j = i + rng.below(pool - i);
    std::swap(xs[i], xs[j]);
    out.emplace_back(static_cast<long>(xs[i]));
  }
  return FiniteSet(std::move(out));
}

}  // namespace

std::string FamilySpec::label() const {
  std::ostringstream os;
  os << kind_name(kind) << '(';
  switch (kind) {
    case FamilyKind::Range: os << n; break;
    case FamilyKind::Ap: os << a.to_string() << ',' << d.to_string() << ',' << n; break;
    case FamilyKind::Gp: os << a.to_string() << ',' << r.to_string() << ',' << n; break;
    case FamilyKind::Smooth: os << y << ',' << n; break;
    case FamilyKind::File: os << path; break;
    case FamilyKind::RandomSubset: os << seed.value_or(0) << ',' << pool << ',' << n; break;
  }
  os << ')';
  return os.str();
}

FiniteSet generate(const FamilySpec& spec) {
  const std::size_t n = spec.n;
  std::vector<Rational> xs;
  switch (spec.kind) {
    case FamilyKind::Range:
      for (std::size_t i = 1; i <= n; ++i) xs.emplace_back(static_cast<long>(i));
      break;
    case FamilyKind::Ap: {
      if (n > 1 && spec.d.is_zero()) bad_spec("ap step must be nonzero");
      Rational x = spec.a;
      for (std::size_t i = 0; i < n; ++i, x = x + spec.d) xs.push_back(x);
      break;
    }
    case FamilyKind::Gp: {
      if (n > 1 && (spec.a.is_zero() || spec.r.is_zero() || spec.r == Rational(1) ||
                    spec.r == Rational(-1)))
        bad_spec("gp needs a != 0 and r not in {0, 1, -1}");
      Rational x = spec.a;
      for (std::size_t i = 0; i < n; ++i, x = x * spec.r) xs.push_back(x);
      break;
    }
    case FamilyKind::Smooth:
      if (spec.y == 0) bad_spec("smooth needs y >= 1");
      return smooth_numbers(spec.y, n);
    case FamilyKind::File:
      return read_set_file(spec.path);
    case FamilyKind::RandomSubset:
      if (!spec.seed) bad_spec("random_subset needs a seed");
      return random_subset(*spec.seed, spec.pool, n);
  }
  return FiniteSet(std::move(xs));
}

namespace {

std::uint64_t get_u64(const Json& j, const char* key) {
  const Json& v = j.at(key);
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return v.get<std::uint64_t>();
  bad_spec(std::string("'") + key + "' must be a nonnegative integer");
}

Rational get_rational(const Json& v, const std::string& key) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_string()) {
    try {
      return Rational::parse(v.get<std::string>());
    } catch (const Error&) {
    }
  }
  bad_spec("'" + key + "' must be an integer or a rational string like \"3/2\"");
}

std::vector<std::size_t> n_values(const Json& j) {
  if (!j.contains("N")) bad_spec("family needs 'N'");
  const Json& v = j.at("N");
  std::vector<std::size_t> out;
  if (v.is_array()) {
    for (const auto& e : v) {
      if (!e.is_number_integer() || e.get<std::int64_t>() < 0) bad_spec("'N' entries must be >= 0");
      out.push_back(e.get<std::size_t>());
    }
  } else if (v.is_object()) {
    const std::uint64_t from = get_u64(v, "from"), to = get_u64(v, "to");
    for (std::uint64_t i = from; i <= to; ++i) out.push_back(i);
  } else {
    out.push_back(get_u64(j, "N"));
  }
  return out;
}

}  // namespace

std::vector<FamilySpec> parse_family(const Json& j) {
  if (!j.is_object()) bad_spec("family must be a JSON object");
  try {
    FamilySpec base;
    if (!j.contains("kind") || !j.at("kind").is_string()) bad_spec("family needs a string 'kind'");
    base.kind = kind_from(j.at("kind").get<std::string>());
    if (j.contains("a")) base.a = get_rational(j.at("a"), "a");
    if (j.contains("d")) base.d = get_rational(j.at("d"), "d");
    if (j.contains("r")) base.r = get_rational(j.at("r"), "r");
    if (j.contains("y")) base.y = get_u64(j, "y");
    if (j.contains("pool")) base.pool = get_u64(j, "pool");
    if (j.contains("seed")) base.seed = get_u64(j, "seed");
    if (j.contains("path")) base.path = j.at("path").get<std::string>();
    if (base.kind == FamilyKind::Smooth && !j.contains("y")) bad_spec("smooth needs 'y'");
    if (base.kind == FamilyKind::File && base.path.empty()) bad_spec("file family needs 'path'");
    if (base.kind == FamilyKind::RandomSubset && (!base.seed || !j.contains("pool")))
      bad_spec("random_subset needs 'seed' and 'pool'");
    std::vector<std::size_t> ns = base.kind == FamilyKind::File ? std::vector<std::size_t>{0}
                                                                 : n_values(j);
    const std::uint64_t repeat = j.contains("repeat") ? get_u64(j, "repeat") : 1;
    if (repeat != 1 && base.kind != FamilyKind::RandomSubset)
      bad_spec("'repeat' applies to random_subset only");
    std::vector<FamilySpec> out;
    for (std::size_t n : ns) {
      for (std::uint64_t rep = 0; rep < repeat; ++rep) {
        FamilySpec s = base;
        s.n = n;
        if (s.seed) s.seed = *s.seed + rep;
        out.push_back(s);
      }
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    bad_spec(std::string("family: ") + e.what());
  }
}

Manifest parse_manifest(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, std::string("manifest: ") + e.what());
  }
  Manifest m;
  if (j.is_null()) return m;
  if (!j.is_object()) fail(ErrorCode::ParseError, "manifest must be a JSON object");
  if (j.contains("families")) {
    if (!j.at("families").is_array()) fail(ErrorCode::ParseError, "'families' must be an array");
    for (const auto& f : j.at("families")) {
      auto specs = parse_family(f);
      m.families.insert(m.families.end(), specs.begin(), specs.end());
    }
  }
  if (j.contains("claims")) {
    if (!j.at("claims").is_array()) fail(ErrorCode::ParseError, "'claims' must be an array");
    for (const auto& c : j.at("claims")) {
      if (!c.is_object() || !c.contains("id") || !c.at("id").is_string())
        fail(ErrorCode::ParseError, "each claim needs a string 'id'");
      ClaimRequest req;
      req.id = c.at("id").get<std::string>();
      if (c.contains("params")) {
        if (!c.at("params").is_object()) fail(ErrorCode::ParseError, "'params' must be an object");
        req.params = c.at("params");
      }
      m.claims.push_back(std::move(req));
    }
  }
  return m;
}

Manifest read_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open manifest '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_manifest(ss.str());
}

namespace {

bool takes(const ClaimInfo& info, std::string_view name) {
  return std::find(info.required.begin(), info.required.end(), name) != info.required.end() ||
         std::find(info.optional.begin(), info.optional.end(), name) != info.optional.end();
}

std::size_t get_size(const Json& p, const char* key) {
  const Json& v = p.at(key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
    bad_spec(std::string("'") + key + "' must be a nonnegative integer");
  return v.get<std::size_t>();
}

FiniteSet set_from_json(const Json& v) {
  if (v.is_object()) {
    auto specs = parse_family(v);
    if (specs.size() != 1) bad_spec("'B' family must describe exactly one set");
    return generate(specs.front());
  }
  if (!v.is_array()) bad_spec("'B' must be an array or a family object");
  std::vector<Rational> xs;
  for (const auto& e : v) xs.push_back(get_rational(e, "B"));
  return FiniteSet(std::move(xs));
}

LatticeSet lattice_from_json(const Json& v, const char* key) {
  if (!v.is_array()) bad_spec(std::string("'") + key + "' must be an array of points");
  std::vector<Point> pts;
  try {
    for (const auto& e : v) pts.push_back(e.get<Point>());
  } catch (const nlohmann::json::exception&) {
    bad_spec(std::string("'") + key + "' must be an array of integer arrays");
  }
  return LatticeSet(std::move(pts));
}

LatticeSet random_lattice(SplitMix64& rng, std::size_t dim, std::size_t max_size,
                          std::int64_t range) {
  const std::size_t size = 1 + rng.below(max_size);
  const auto width = static_cast<std::uint64_t>(2 * range + 1);
  std::vector<Point> pts(size, Point(dim));
  for (auto& p : pts)
    for (auto& c : p) c = static_cast<std::int64_t>(rng.below(width)) - range;
  return LatticeSet(std::move(pts));
}

ClaimInstance build_instance(const ClaimRequest& req, const FiniteSet& a, std::uint64_t seed) {
  ClaimInstance inst;
  inst.claim_id = req.id;
  const ClaimInfo* info = find_claim(req.id);
  if (!info) return inst;
  const Json& p = req.params;
  for (auto it = p.begin(); it != p.end(); ++it) {
    static const std::vector<std::string> known = {"h", "k", "l", "n", "m", "alpha", "epsilon",
                                                   "K", "C", "assume_large_d", "B", "X", "Y",
                                                   "lattice"};
    if (std::find(known.begin(), known.end(), it.key()) == known.end())
      bad_spec("unknown claim parameter '" + it.key() + "'");
  }
  if (takes(*info, "A")) inst.a = a;
  if (takes(*info, "B")) inst.b = p.contains("B") ? set_from_json(p.at("B")) : a;
  if (takes(*info, "X")) {
    if (p.contains("lattice")) {
      const Json& g = p.at("lattice");
      LatticeGen gen;
      if (g.contains("max_dim")) gen.max_dim = get_size(g, "max_dim");
      if (g.contains("max_size")) gen.max_size = get_size(g, "max_size");
      if (g.contains("coord_range")) gen.coord_range = static_cast<std::int64_t>(get_size(g, "coord_range"));
      if (g.contains("seed")) gen.seed = get_u64(g, "seed");
      if (gen.max_dim == 0 || gen.max_size == 0) bad_spec("lattice max_dim and max_size must be >= 1");
      SplitMix64 rng(gen.seed ^ seed);
      const std::size_t dim = 1 + rng.below(gen.max_dim);
      inst.x = random_lattice(rng, dim, gen.max_size, gen.coord_range);
      inst.y = random_lattice(rng, dim, gen.max_size, gen.coord_range);
    } else if (p.contains("X") || p.contains("Y")) {
      if (!p.contains("X") || !p.contains("Y")) bad_spec("give both 'X' and 'Y'");
      inst.x = lattice_from_json(p.at("X"), "X");
      inst.y = lattice_from_json(p.at("Y"), "Y");
    } else {
      Embedding e = embed(a);
      inst.x = e.vector_image(a);
      inst.y = inst.x;
    }
  } else {
    if (p.contains("X")) inst.x = lattice_from_json(p.at("X"), "X");
    if (p.contains("Y")) inst.y = lattice_from_json(p.at("Y"), "Y");
  }
  if (p.contains("h")) inst.h = get_size(p, "h");
  if (p.contains("k")) inst.k = get_size(p, "k");
  if (p.contains("l")) inst.l = get_size(p, "l");
  if (p.contains("n")) inst.n = get_size(p, "n");
  if (p.contains("m")) inst.m = get_size(p, "m");
  if (p.contains("alpha")) inst.alpha = get_rational(p.at("alpha"), "alpha");
  if (p.contains("epsilon")) inst.epsilon = get_rational(p.at("epsilon"), "epsilon");
  if (p.contains("K")) inst.k_param = get_rational(p.at("K"), "K");
  if (p.contains("C")) inst.c_ratio = get_rational(p.at("C"), "C");
  if (p.contains("assume_large_d")) {
    if (!p.at("assume_large_d").is_boolean()) bad_spec("'assume_large_d' must be a boolean");
    inst.assume_large_d = p.at("assume_large_d").get<bool>();
  }
  return inst;
}

Verdict error_verdict(const std::string& claim, const Json& params, const std::string& msg,
                      std::optional<ErrorCode> code) {
  Verdict v;
  v.claim = claim;
  if (const ClaimInfo* info = find_claim(claim)) v.mode = info->mode;
  v.params = params;
  v.holds = false;
  v.error = msg;
  v.error_code = code;
  return v;
}

Json with_family(const std::string& label, const Json& params) {
  Json j = Json::object();
  j["family"] = label;
  for (auto it = params.begin(); it != params.end(); ++it) j[it.key()] = it.value();
  return j;
}

}  // namespace

std::vector<Verdict> sweep(const std::vector<FamilySpec>& specs,
                           const std::vector<ClaimRequest>& claims, const SweepOptions& opts) {
  struct Source {
    std::optional<FiniteSet> set;
    std::string error;
    std::optional<ErrorCode> code;
  };
  std::vector<Source> sources(specs.size());
  if (!claims.empty()) {
    for (std::size_t i = 0; i < specs.size(); ++i) {
      try {
        sources[i].set = generate(specs[i]);
      } catch (const Error& e) {
        sources[i].error = std::string(to_string(e.code())) + ": " + e.what();
        sources[i].code = e.code();
      }
    }
  }

  const std::size_t total = specs.size() * claims.size();
  std::vector<Verdict> out(total);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t idx; (idx = next.fetch_add(1)) < total;) {
      const FamilySpec& spec = specs[idx / claims.size()];
      const Source& src = sources[idx / claims.size()];
      const ClaimRequest& req = claims[idx % claims.size()];
      const std::string label = spec.label();
      Verdict v;
      if (!src.set) {
        v = error_verdict(req.id, with_family(label, req.params), src.error, src.code);
      } else {
        try {
          const std::uint64_t seed = SplitMix64(opts.seed + idx).next();
          v = verify_captured(build_instance(req, *src.set, seed), opts.budget);
          v.params = with_family(label, v.params);
        } catch (const Error& e) {
          v = error_verdict(req.id, with_family(label, req.params),
                            std::string(to_string(e.code())) + ": " + e.what(), e.code());
        } catch (const std::exception& e) {
          v = error_verdict(req.id, with_family(label, req.params),
                            std::string("internal: ") + e.what(), std::nullopt);
        }
      }
      if (!opts.timing) v.elapsed_ms = 0;
      out[idx] = std::move(v);
    }
  };
  const std::size_t nthreads = std::max<std::size_t>(1, std::min(opts.threads, total));
  if (nthreads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < nthreads; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  return out;
}

void write_report(std::ostream& out, const std::vector<Verdict>& verdicts, ReportFormat fmt) {
  if (fmt == ReportFormat::Csv) {
    out << csv_header() << '\n';
    for (const auto& v : verdicts) out << to_csv(v) << '\n';
    return;
  }
  Json arr = Json::array();
  for (const auto& v : verdicts) arr.push_back(to_json(v));
  out << arr.dump(2) << '\n';
}

SweepSummary summarize(const std::vector<Verdict>& verdicts) {
  SweepSummary s;
  for (const auto& v : verdicts) {
    if (v.error) {
      ++s.errors;
    } else if (v.mode == Mode::Assert) {
      ++(v.holds ? s.assert_hold : s.assert_fail);
    } else {
      ++(v.holds ? s.report_hold : s.report_fail);
    }
  }
  return s;
}

std::string to_string(const SweepSummary& s) {
  std::ostringstream os;
  os << "assert: " << s.assert_hold << " hold, " << s.assert_fail << " fail; report: "
     << s.report_hold << " hold, " << s.report_fail << " fail; errors: " << s.errors;
  return os.str();
}

}  // namespace sumprod
