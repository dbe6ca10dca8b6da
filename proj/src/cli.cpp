#include "sumprod/cli.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <thread>

#include "sumprod/claims.hpp"
#include "sumprod/counting.hpp"
#include "sumprod/families.hpp"
#include "sumprod/multdim.hpp"
#include "sumprod/setalg.hpp"

namespace sumprod {
namespace {

struct Options {
  std::size_t max_card = 24;
  std::uint64_t max_work = 100'000'000;
  std::size_t threads = std::max(1u, std::thread::hardware_concurrency());
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string out_path;
  bool timing = false;

  std::string a, b, x, y;
  std::optional<std::size_t> h, k, l, n, m;
  std::string alpha, epsilon, big_k;
  bool assume_large_d = false;

  std::string op;
  std::string claim_pos, claim_opt;
  std::string manifest;
  std::string backend = "auto";
  std::string what;
  std::string coeffs;
  std::string target = "1";

  Budget budget() const { return {max_card, max_work}; }
};

int exit_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::ParseError:
    case ErrorCode::IoError:
    case ErrorCode::InvalidSpec:
    case ErrorCode::InvalidArgument:
    case ErrorCode::MissingParam:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::DivisionByZero:
      return kExitParse;
    case ErrorCode::BudgetExceeded: return kExitBudget;
    case ErrorCode::EmptyStarSet: return kExitEmptyStar;
    case ErrorCode::UnknownClaim: return kExitUnknownClaim;
    default: return kExitInternal;
  }
}

bool is_inline(const std::string& s) { return !s.empty() && (s.front() == '{' || s.front() == '['); }

// "{1,2,3}" / "[1, -1/2]" inline, anything else is a path.
FiniteSet load_set(const std::string& spec, const char* name) {
  if (spec.empty()) fail(ErrorCode::MissingParam, std::string("missing --") + name);
  if (!is_inline(spec)) return read_set_file(spec);
  std::string body = spec.substr(1, spec.size() >= 2 ? spec.size() - 2 : 0);
  for (char& c : body)
    if (c == ',') c = '\n';
  std::istringstream in(body);
  return parse_set(in);
}

LatticeSet load_lattice(const std::string& spec, const char* name) {
  if (spec.empty()) fail(ErrorCode::MissingParam, std::string("missing --") + name);
  if (!is_inline(spec)) return read_lattice_file(spec);
  try {
    return LatticeSet(Json::parse(spec).get<std::vector<Point>>());
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, std::string("--") + name + ": " + e.what());
  }
}

Rational load_rational(const std::string& s, const char* name) {
  try {
    return Rational::parse(s);
  } catch (const Error& e) {
    fail(ErrorCode::ParseError, std::string("--") + name + ": " + e.what());
  }
}

// Output sink: --out file or the data stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) fail(ErrorCode::IoError, "cannot write '" + path + "'");
      os_ = file_.get();
    }
  }
  std::ostream& operator*() { return *os_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* os_;
};

ReportFormat report_format(const std::string& f) {
  return f == "csv" ? ReportFormat::Csv : ReportFormat::Json;
}

std::size_t need(const std::optional<std::size_t>& v, const char* name) {
  if (!v) fail(ErrorCode::MissingParam, std::string("missing --") + name);
  return *v;
}

int cmd_setop(const Options& o, std::ostream& out) {
  const Budget bud = o.budget();
  const FiniteSet a = load_set(o.a, "a");
  auto b = [&] { return load_set(o.b, "b"); };
  FiniteSet result;
  if (o.op == "sumset") {
    result = sumset(a, b(), bud);
  } else if (o.op == "productset") {
    result = productset(a, b(), bud);
  } else if (o.op == "combo") {
    const std::size_t l = o.l.value_or(0);
    result = linear_combo(need(o.k, "k"), a, l, l ? b() : FiniteSet{}, bud);
  } else if (o.op == "diffcombo") {
    result = difference_combo(need(o.n ? o.n : o.k, "n"), need(o.m ? o.m : o.l, "m"), a, bud);
  } else if (o.op == "subsetsums") {
    SubsetSumBackend be = SubsetSumBackend::Auto;
    if (o.backend == "naive") be = SubsetSumBackend::Naive;
    if (o.backend == "mitm") be = SubsetSumBackend::MeetInMiddle;
    if (o.backend == "bitset") be = SubsetSumBackend::BitsetDP;
    result = subset_sums(a, bud, be);
  } else if (o.op == "subsetproducts") {
    result = subset_products(a, bud);
  } else if (o.op == "distinct_h") {
    result = distinct_h_sums(a, need(o.h, "h"), bud);
  } else if (o.op == "bounded_h") {
    result = bounded_simple_sums(a, need(o.h, "h"), bud);
  } else {  // gproxy
    GProxy g = g_proxy(a, bud);
    Sink sink(o.out_path, out);
    *sink << "Aplus=" << g.aplus << " Atimes=" << g.atimes << " g=" << g.g << '\n';
    return kExitOk;
  }
  Sink sink(o.out_path, out);
  write_set(*sink, result);
  return kExitOk;
}

int cmd_dim(const Options& o, std::ostream& out) {
  const FiniteSet a = load_set(o.a, "a");
  Embedding e = embed(a);
  Sink sink(o.out_path, out);
  std::ostream& os = *sink;
  os << "mult_dim: " << mult_dim(e) << '\n'
     << "free_rank: " << e.free_rank << '\n'
     << "torsion: " << (e.torsion ? "true" : "false") << '\n'
     << "coordinates:\n";
  Json coords = Json::array();
  for (std::size_t i = 0; i < e.elements.size(); ++i) {
    const Coordinate& c = e.coords[i];
    os << "  " << e.elements[i].to_string() << " -> (" << int(c.sign_bit) << "; " << to_string(c.vec)
       << ")\n";
    coords.push_back(Json{{"element", e.elements[i].to_string()},
                          {"sign_bit", c.sign_bit},
                          {"vector", c.vec}});
  }
  Json basis = Json::array();
  for (const auto& row : e.basis) basis.push_back(row);
  Json primes = Json::array();
  for (const auto& p : e.primes) primes.push_back(p.get_str());
  Json j{{"mult_dim", mult_dim(e)}, {"free_rank", e.free_rank}, {"torsion", e.torsion},
         {"primes", primes},        {"basis", basis},           {"coordinates", coords}};
  os << j.dump(2) << '\n';
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  const std::string id = o.claim_opt.empty() ? o.claim_pos : o.claim_opt;
  if (id.empty()) fail(ErrorCode::MissingParam, "no claim given");
  const ClaimInfo* info = find_claim(id);
  if (!info) fail(ErrorCode::UnknownClaim, "unknown claim '" + id + "'");
  ClaimInstance inst;
  inst.claim_id = id;
  if (!o.a.empty()) inst.a = load_set(o.a, "a");
  if (!o.b.empty()) inst.b = load_set(o.b, "b");
  if (!o.x.empty()) inst.x = load_lattice(o.x, "x");
  if (!o.y.empty()) inst.y = load_lattice(o.y, "y");
  inst.h = o.h;
  inst.k = o.k;
  inst.l = o.l;
  inst.n = o.n;
  inst.m = o.m;
  if (!o.alpha.empty()) inst.alpha = load_rational(o.alpha, "alpha");
  if (!o.epsilon.empty()) inst.epsilon = load_rational(o.epsilon, "epsilon");
  if (!o.big_k.empty()) inst.k_param = load_rational(o.big_k, "K");
  if (o.assume_large_d) inst.assume_large_d = true;

  Verdict v;
  try {
    v = verify(inst, o.budget());
  } catch (const Error& e) {
    if (e.code() != ErrorCode::PremiseViolated) throw;
    v = verify_captured(inst, o.budget());
    err << "premise violated: " << e.what() << '\n';
  }
  if (!o.timing) v.elapsed_ms = 0;
  Sink sink(o.out_path, out);
  if (o.format == "csv") {
    *sink << csv_header() << '\n' << to_csv(v) << '\n';
  } else {
    *sink << to_json(v).dump(2) << '\n';
  }
  if (v.error) return kExitOk;
  return (v.holds || v.mode == Mode::Report) ? kExitOk : kExitAssertFailed;
}

int cmd_sweep(const Options& o, std::ostream& out, std::ostream& err) {
  Manifest man = read_manifest(o.manifest);
  SweepOptions so;
  so.budget = o.budget();
  so.threads = o.threads;
  so.timing = o.timing;
  so.seed = o.seed;
  std::vector<Verdict> verdicts = sweep(man.families, man.claims, so);
  Sink sink(o.out_path, out);
  write_report(*sink, verdicts, report_format(o.format));
  err << "sweep: " << verdicts.size() << " verdicts; " << to_string(summarize(verdicts)) << '\n';
  return kExitOk;
}

int cmd_count(const Options& o, std::ostream& out) {
  const Budget bud = o.budget();
  const FiniteSet a = load_set(o.a, "a");
  Sink sink(o.out_path, out);
  std::ostream& os = *sink;
  auto b = [&] { return o.b.empty() ? a : load_set(o.b, "b"); };
  if (o.what == "energy") {
    os << energy(need(o.h, "h"), a, bud).get_str() << '\n';
  } else if (o.what == "mixed") {
    os << mixed_tuples(need(o.k, "k"), a, need(o.l, "l"), b(), bud).get_str() << '\n';
  } else if (o.what == "sigma0" || o.what == "sigma1") {
    os << sigma_count(o.what == "sigma1" ? 1 : 0, need(o.k, "k"), a, need(o.l, "l"), b(), bud)
              .get_str()
       << '\n';
  } else if (o.what == "rep") {
    const std::size_t l = o.l.value_or(0);
    RepFunction rf = rep_function(need(o.k, "k"), a, l, l ? b() : FiniteSet{}, bud);
    for (const auto& [x, r] : rf.entries) os << x.to_string() << ' ' << r.get_str() << '\n';
  } else {  // nondegenerate
    std::vector<Rational> cs;
    if (o.coeffs.empty()) {
      cs.assign(need(o.n, "n"), Rational(1));
    } else {
      std::string s = o.coeffs;
      for (char& c : s)
        if (c == ',') c = ' ';
      std::istringstream in(s);
      for (std::string tok; in >> tok;) cs.push_back(load_rational(tok, "coeffs"));
    }
    std::vector<FiniteSet> domains(cs.size(), a);
    SolutionCounts sc = nondegenerate_count(cs, domains, load_rational(o.target, "target"), bud);
    os << "nondegenerate=" << sc.nondegenerate.get_str() << " total=" << sc.total.get_str() << '\n';
  }
  return kExitOk;
}

void add_budget(CLI::App* app, Options& o) {
  app->add_option("--max-card", o.max_card, "Largest |A| for exponential operations")
      ->check(CLI::PositiveNumber);
  app->add_option("--max-work", o.max_work, "Largest projected intermediate count")
      ->check(CLI::PositiveNumber);
  app->add_option("--out", o.out_path, "Write output to FILE instead of stdout");
}

void add_sets(CLI::App* app, Options& o) {
  app->add_option("--a", o.a, "Set A: file path or inline {1,2,3}");
  app->add_option("--b", o.b, "Set B: file path or inline {1,2,3}");
}

void add_counts(CLI::App* app, Options& o, bool all) {
  app->add_option("--h", o.h);
  app->add_option("--k", o.k);
  app->add_option("--l", o.l);
  if (all) {
    app->add_option("--n", o.n);
    app->add_option("--m", o.m);
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact sum-product toolkit: set algebra, multiplicative dimension, claim checks"};
  // -h would clash with --h.
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  Options o;

  CLI::App* setop = app.add_subcommand("setop", "Set operation on A (and B)");
  setop
      ->add_option("op", o.op, "sumset|productset|combo|diffcombo|subsetsums|subsetproducts|"
                               "distinct_h|bounded_h|gproxy")
      ->required()
      ->check(CLI::IsMember({"sumset", "productset", "combo", "diffcombo", "subsetsums",
                             "subsetproducts", "distinct_h", "bounded_h", "gproxy"}));
  add_sets(setop, o);
  add_counts(setop, o, true);
  setop->add_option("--backend", o.backend, "Subset-sum backend")
      ->check(CLI::IsMember({"auto", "naive", "mitm", "bitset"}));
  add_budget(setop, o);

  CLI::App* dim = app.add_subcommand("dim", "Multiplicative dimension and coordinates of A");
  dim->add_option("--a", o.a, "Set A: file path or inline {1,2,3}")->required();
  add_budget(dim, o);

  CLI::App* ver = app.add_subcommand("verify", "Evaluate one claim");
  ver->add_option("id", o.claim_pos, "Claim id");
  ver->add_option("--claim", o.claim_opt, "Claim id");
  add_sets(ver, o);
  ver->add_option("--x", o.x, "Lattice set X: file or inline [[0,0],[1,0]]");
  ver->add_option("--y", o.y, "Lattice set Y: file or inline [[0,0],[1,0]]");
  add_counts(ver, o, true);
  ver->add_option("--alpha", o.alpha);
  ver->add_option("--epsilon", o.epsilon);
  ver->add_option("--K", o.big_k);
  ver->add_flag("--assume-large-d", o.assume_large_d);
  ver->add_option("--format", o.format)->check(CLI::IsMember({"json", "csv"}));
  ver->add_flag("--timing", o.timing, "Record elapsed_ms");
  add_budget(ver, o);

  CLI::App* sw = app.add_subcommand("sweep", "Run a manifest of families x claims");
  sw->add_option("manifest", o.manifest, "Manifest JSON file")->required();
  sw->add_option("--format", o.format)->check(CLI::IsMember({"json", "csv"}));
  sw->add_option("--threads", o.threads)->check(CLI::PositiveNumber);
  sw->add_option("--seed", o.seed, "Seed mixed into generated lattice sets");
  sw->add_flag("--timing", o.timing, "Record elapsed_ms (reports stop being reproducible)");
  add_budget(sw, o);

  CLI::App* cnt = app.add_subcommand("count", "Representation counts");
  cnt->add_option("what", o.what, "energy|rep|mixed|sigma0|sigma1|nondegenerate")
      ->required()
      ->check(CLI::IsMember({"energy", "rep", "mixed", "sigma0", "sigma1", "nondegenerate"}));
  add_sets(cnt, o);
  add_counts(cnt, o, true);
  cnt->add_option("--coeffs", o.coeffs, "Coefficients c_1,...,c_d for nondegenerate");
  cnt->add_option("--target", o.target, "Right-hand side for nondegenerate");
  add_budget(cnt, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kExitOk : kExitParse;
  }

  try {
    if (*setop) return cmd_setop(o, out);
    if (*dim) return cmd_dim(o, out);
    if (*ver) return cmd_verify(o, out, err);
    if (*sw) return cmd_sweep(o, out, err);
    return cmd_count(o, out);
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace sumprod
