#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sumprod/error.hpp"
#include "sumprod/families.hpp"

using namespace sumprod;

namespace {

FiniteSet ints(std::initializer_list<long> xs) {
  std::vector<Rational> v;
  for (long x : xs) v.emplace_back(x);
  return FiniteSet(std::move(v));
}

FamilySpec spec(FamilyKind k, std::size_t n) {
  FamilySpec s;
  s.kind = k;
  s.n = n;
  return s;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::Overflow;
}

std::string report(const std::vector<Verdict>& vs, ReportFormat fmt) {
  std::ostringstream os;
  write_report(os, vs, fmt);
  return os.str();
}

}  // namespace

TEST(SplitMix, KnownValues) {
  SplitMix64 r(0);
  EXPECT_EQ(r.next(), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(r.next(), 0x6e789e6aa1b965f4ULL);
  SplitMix64 a(1234), b(1234);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next(), b.next());
}

TEST(Families, GenerateExamples) {
  EXPECT_EQ(generate(spec(FamilyKind::Range, 4)), ints({1, 2, 3, 4}));
  EXPECT_TRUE(generate(spec(FamilyKind::Range, 0)).empty());

  FamilySpec ap = spec(FamilyKind::Ap, 4);
  ap.a = 3;
  ap.d = -2;
  EXPECT_EQ(generate(ap), ints({-3, -1, 1, 3}));

  FamilySpec gp = spec(FamilyKind::Gp, 4);
  gp.a = 1;
  gp.r = 2;
  EXPECT_EQ(generate(gp), ints({1, 2, 4, 8}));
  EXPECT_EQ(gp.label(), "gp(1,2,4)");
  gp.r = Rational::parse("1/2");
  EXPECT_EQ(generate(gp).size(), 4u);
  gp.r = -1;
  EXPECT_EQ(code_of([&] { generate(gp); }), ErrorCode::InvalidSpec);

  FamilySpec sm = spec(FamilyKind::Smooth, 7);
  sm.y = 3;
  EXPECT_EQ(generate(sm), ints({1, 2, 3, 4, 6, 8, 9}));
  EXPECT_EQ(sm.label(), "smooth(3,7)");
}

TEST(Families, RandomSubset) {
  FamilySpec r = spec(FamilyKind::RandomSubset, 10);
  r.pool = 100;
  r.seed = 7;
  const FiniteSet a = generate(r);
  EXPECT_EQ(a.size(), 10u);
  EXPECT_EQ(generate(r), a);
  for (const auto& x : a) {
    EXPECT_TRUE(x.is_integer());
    EXPECT_GE(x, Rational(1));
    EXPECT_LE(x, Rational(100));
  }
  r.seed = 8;
  EXPECT_NE(generate(r), a);
  r.n = 100;
  EXPECT_EQ(generate(r).size(), 100u);
  r.n = 101;
  EXPECT_EQ(code_of([&] { generate(r); }), ErrorCode::InvalidSpec);
  r.n = 2;
  r.pool = 20'000'000;
  EXPECT_EQ(code_of([&] { generate(r); }), ErrorCode::InvalidSpec);
}

TEST(Families, FileFamily) {
  const auto path = std::filesystem::temp_directory_path() / "sumprod_family_test.txt";
  {
    std::ofstream f(path);
    f << "3\n1/2\n-4\n3\n";
  }
  FamilySpec s = spec(FamilyKind::File, 0);
  s.path = path.string();
  EXPECT_EQ(generate(s), (FiniteSet{Rational(-4), Rational::parse("1/2"), Rational(3)}));
  std::filesystem::remove(path);
  EXPECT_EQ(code_of([&] { generate(s); }), ErrorCode::IoError);
}

TEST(Manifest, ParseAndExpand) {
  Manifest m = parse_manifest(R"({
    "families": [
      {"kind": "range", "N": {"from": 3, "to": 5}},
      {"kind": "gp", "a": 1, "r": "3/2", "N": [2, 6]},
      {"kind": "random_subset", "pool": 50, "N": 5, "seed": 10, "repeat": 3}
    ],
    "claims": [{"id": "cs_iterated", "params": {"h": 2}}, {"id": "identity_15"}]
  })");
  ASSERT_EQ(m.families.size(), 8u);
  EXPECT_EQ(m.families[0].label(), "range(3)");
  EXPECT_EQ(m.families[2].label(), "range(5)");
  EXPECT_EQ(m.families[3].label(), "gp(1,3/2,2)");
  EXPECT_EQ(m.families[4].n, 6u);
  EXPECT_EQ(m.families[5].label(), "random_subset(10,50,5)");
  EXPECT_EQ(m.families[7].label(), "random_subset(12,50,5)");
  ASSERT_EQ(m.claims.size(), 2u);
  EXPECT_EQ(m.claims[0].params["h"], 2);
  EXPECT_TRUE(m.claims[1].params.empty());
}

TEST(Manifest, Errors) {
  EXPECT_EQ(code_of([] { parse_manifest("{not json"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_manifest(R"({"families": [{"kind": "blob", "N": 3}]})"); }),
            ErrorCode::InvalidSpec);
  EXPECT_EQ(code_of([] { parse_manifest(R"({"families": [{"kind": "range"}]})"); }),
            ErrorCode::InvalidSpec);
  EXPECT_EQ(code_of([] { parse_manifest(R"({"families": [{"kind": "smooth", "N": 3}]})"); }),
            ErrorCode::InvalidSpec);
  EXPECT_EQ(code_of([] { parse_manifest(R"({"claims": [{"params": {}}]})"); }),
            ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { read_manifest("/nonexistent/manifest.json"); }), ErrorCode::IoError);
  Manifest empty = parse_manifest("{}");
  EXPECT_TRUE(empty.families.empty());
  EXPECT_TRUE(empty.claims.empty());
}

TEST(Sweep, EmptyInputsGiveEmptyReports) {
  Manifest m = parse_manifest(R"({"families": [{"kind": "range", "N": 3}]})");
  auto vs = sweep(m.families, m.claims);
  EXPECT_TRUE(vs.empty());
  EXPECT_EQ(report(vs, ReportFormat::Json), "[]\n");
  EXPECT_EQ(report(vs, ReportFormat::Csv), csv_header() + "\n");
}

TEST(Sweep, OrderAndParams) {
  Manifest m = parse_manifest(R"({
    "families": [{"kind": "range", "N": [3, 4]}],
    "claims": [{"id": "cs_iterated", "params": {"h": 2}}, {"id": "identity_15"}]
  })");
  auto vs = sweep(m.families, m.claims);
  ASSERT_EQ(vs.size(), 4u);
  EXPECT_EQ(vs[0].claim, "cs_iterated");
  EXPECT_EQ(vs[1].claim, "identity_15");
  EXPECT_EQ(vs[0].params["family"], "range(3)");
  EXPECT_EQ(vs[2].params["family"], "range(4)");
  EXPECT_EQ(vs[0].params.begin().key(), "family");
  for (const auto& v : vs) {
    EXPECT_TRUE(v.holds);
    EXPECT_EQ(v.elapsed_ms, 0);
  }
  SweepSummary s = summarize(vs);
  EXPECT_EQ(s.assert_hold, 4u);
  EXPECT_EQ(s.errors, 0u);
}

TEST(Sweep, GeometricSumsetSize) {
  Manifest m = parse_manifest(R"({
    "families": [{"kind": "gp", "a": 1, "r": 2, "N": 12}],
    "claims": [{"id": "cs_iterated", "params": {"h": 2}}]
  })");
  auto vs = sweep(m.families, m.claims);
  ASSERT_EQ(vs.size(), 1u);
  EXPECT_TRUE(vs[0].holds);
  EXPECT_EQ(vs[0].lhs_exact, "78");
}

TEST(Sweep, InstanceErrorsBecomeVerdicts) {
  Manifest m = parse_manifest(R"({
    "families": [{"kind": "ap", "a": -2, "d": 2, "N": 3},
                 {"kind": "file", "path": "/nonexistent/set.txt", "N": 0}],
    "claims": [{"id": "identity_15"}, {"id": "cs_iterated"}, {"id": "no_such_claim"},
               {"id": "cs_iterated", "params": {"h": 1, "bogus": 3}}]
  })");
  auto vs = sweep(m.families, m.claims);
  ASSERT_EQ(vs.size(), 8u);
  EXPECT_EQ(vs[0].error_code, ErrorCode::PremiseViolated);
  EXPECT_EQ(vs[1].error_code, ErrorCode::MissingParam);
  EXPECT_EQ(vs[2].error_code, ErrorCode::UnknownClaim);
  EXPECT_EQ(vs[3].error_code, ErrorCode::InvalidSpec);
  for (std::size_t i = 4; i < 8; ++i) EXPECT_EQ(vs[i].error_code, ErrorCode::IoError);
  EXPECT_EQ(summarize(vs).errors, 8u);
}

TEST(Sweep, ExplicitOperandsAndLattices) {
  Manifest m = parse_manifest(R"({
    "families": [{"kind": "range", "N": 5}],
    "claims": [
      {"id": "plunnecke", "params": {"B": [0, 1], "n": 1, "m": 1}},
      {"id": "cs_distinct", "params": {"B": {"kind": "gp", "a": 1, "r": 2, "N": 3}, "k": 1, "l": 1}},
      {"id": "ruzsa_rn", "params": {"X": [[0, 0], [1, 0], [0, 1]], "Y": [[0, 0], [1, 0], [0, 1]]}},
      {"id": "ruzsa_rn", "params": {"lattice": {"max_dim": 3, "max_size": 8, "seed": 4}}},
      {"id": "ruzsa_rn"}
    ]
  })");
  auto vs = sweep(m.families, m.claims);
  ASSERT_EQ(vs.size(), 5u);
  for (const auto& v : vs) {
    EXPECT_FALSE(v.error.has_value()) << to_json(v).dump();
    EXPECT_TRUE(v.holds) << to_json(v).dump();
  }
  // K = |A+B|/|A| = 6/5, so the bound is K^2 |A| = 36/5.
  EXPECT_EQ(vs[0].rhs_exact, "36/5");
  EXPECT_EQ(vs[2].lhs_exact, "6");
}

TEST(Sweep, ThreadCountDoesNotChangeOutput) {
  Manifest m = parse_manifest(R"({
    "families": [{"kind": "range", "N": {"from": 2, "to": 9}},
                 {"kind": "random_subset", "pool": 60, "N": 6, "seed": 1, "repeat": 5}],
    "claims": [{"id": "cs_iterated", "params": {"h": 2}},
               {"id": "plunnecke", "params": {"n": 2, "m": 1}},
               {"id": "ruzsa_rn", "params": {"lattice": {"max_size": 6}}},
               {"id": "multdim_ratio"}]
  })");
  SweepOptions one, four;
  four.threads = 4;
  auto a = sweep(m.families, m.claims, one), b = sweep(m.families, m.claims, four);
  EXPECT_EQ(report(a, ReportFormat::Json), report(b, ReportFormat::Json));
  EXPECT_EQ(report(a, ReportFormat::Csv), report(b, ReportFormat::Csv));
  SweepOptions reseeded;
  reseeded.seed = 99;
  EXPECT_NE(report(a, ReportFormat::Json),
            report(sweep(m.families, m.claims, reseeded), ReportFormat::Json));
}
