#include "doctest.h"
#include "vast/constructions.hpp"
#include "vast/error.hpp"
#include "vast/verify.hpp"

using namespace vast;

namespace {

Code singleton(unsigned n) { return Code{1} << n; }

SequenceReport singletons(std::size_t count) {
  SequenceReport r;
  r.label = "singletons";
  r.depth = 512;
  r.levels = count;
  r.tail = count;  // {m} ∈ H_count for every m >= count
  for (unsigned n = 0; n < count; ++n) r.xi.push_back({singleton(n), n});
  return r;
}

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::format;
}

}  // namespace

TEST_CASE("singletons are discrete with exact isolation") {
  const auto base = dyadic_chain();
  const auto v = check_discrete(singletons(10), base, 64);
  CHECK(v.verdict.kind == VerdictKind::exact);
  CHECK(v.verdict.detail == "0:1 1:2 2:3 3:4 4:5 5:6 6:7 7:8 8:9 9:10");

  auto no_tail = singletons(10);
  no_tail.tail.reset();
  CHECK(check_discrete(no_tail, base, 64).verdict.kind == VerdictKind::depth);

  auto repeated = singletons(4);
  repeated.xi.push_back({singleton(2), 4});
  const auto bad = check_discrete(repeated, base, 64);
  CHECK(bad.verdict.kind == VerdictKind::violated);
  CHECK(bad.verdict.detail == "repeat 4 at 2,4");
}

TEST_CASE("powers of three are discrete in the 3-adic integers") {
  const auto base = padic_chain(3);
  SequenceReport r;
  r.levels = 8;
  r.tail = 8;
  std::int64_t p = 1;
  for (std::size_t n = 0; n < 8; ++n, p *= 3) r.xi.push_back({zigzag_encode(p), n});
  const auto v = check_discrete(r, base, 64);
  CHECK(v.verdict.kind == VerdictKind::exact);
  CHECK(v.verdict.detail == "0:1 1:2 2:3 3:4 4:5 5:6 6:7 7:8");
}

TEST_CASE("limit point") {
  const auto base = dyadic_chain();
  const auto v = check_limit_point(singletons(12), base, 12);
  CHECK(v.verdict.kind == VerdictKind::exact);
  CHECK(v.warnings.empty());

  const auto clamped = check_limit_point(singletons(12), base, 40);
  CHECK(clamped.verdict.kind == VerdictKind::exact);
  REQUIRE(clamped.warnings.size() == 1);
  CHECK(clamped.warnings[0] == "depth 40 clamped to levels 12");

  SequenceReport bounded;
  bounded.levels = 5;
  bounded.xi = {{singleton(0), 0}, {singleton(1), 0}};
  const auto b = check_limit_point(bounded, base, 5);
  CHECK(b.verdict.kind == VerdictKind::violated);
  CHECK(b.verdict.detail == "n=2");
}

TEST_CASE("cosets of non-identity points meet finitely many elements") {
  const auto base = dyadic_chain();
  const auto xi = singletons(12);
  const auto zero = coset_meeting(xi, base, singleton(0));
  CHECK(zero.theta == 0);
  CHECK(zero.hits == std::vector<Code>{singleton(0)});
  CHECK(zero.verdict.kind == VerdictKind::exact);

  const auto pair = coset_meeting(xi, base, singleton(1) | singleton(2));
  CHECK(pair.theta == 1);
  // {1,2} + H_2 is every set meeting {0,1} in exactly {1}; among singletons only {1}.
  CHECK(pair.hits == std::vector<Code>{singleton(1)});
  const auto low = coset_meeting(xi, base, singleton(0) | singleton(1));
  CHECK(low.theta == 0);
  CHECK(low.hits == std::vector<Code>{singleton(0)});  // sets containing 0

  CHECK(kind_of([&] { coset_meeting(xi, base, 0); }) == ErrorKind::undefined_stratum);

  const auto v = check_unique_limit(xi, base, 512);
  CHECK(v.verdict.kind == VerdictKind::exact);

  auto bare = singletons(4);
  bare.tail.reset();
  CHECK(kind_of([&] { check_unique_limit(bare, base, 64); }) == ErrorKind::cannot_certify);
}

TEST_CASE("disjointness of prefixes") {
  const auto a = singletons(5);
  const auto same = check_disjoint(a, a);
  CHECK(same.verdict.kind == VerdictKind::violated);
  CHECK(same.verdict.detail == "common=1 at 0,0");
  CHECK(check_disjoint(a, SequenceReport{}).verdict.kind == VerdictKind::exact);
}

TEST_CASE("coset construction output is discrete with one limit point") {
  const auto base = dyadic_chain();
  Statement21Options opts;
  opts.count = 50;
  auto r = build_xi_statement21(base, base, opts);
  attach_verdicts(r, base);
  for (const char* p : {"discrete", "limit-point", "unique-limit"}) {
    REQUIRE(r.verdict(p));
    CHECK(r.verdict(p)->verdict.kind == VerdictKind::exact);
  }
}

TEST_CASE("verdicts do not degrade to violations as depth grows") {
  const auto base = dyadic_chain();
  Statement21Options opts;
  opts.count = 30;
  const auto r = build_xi_statement21(base, base, opts);
  for (std::size_t depth : {16, 64, 128, 256, 512}) {
    CAPTURE(depth);
    CHECK(check_discrete(r, base, depth).verdict.ok());
    CHECK(check_limit_point(r, base, depth).verdict.ok());
    CHECK(check_unique_limit(r, base, depth).verdict.ok());
  }
}

TEST_CASE("verdicts are recomputable from the serialized report") {
  const auto base = dyadic_chain();
  Statement21Options opts;
  opts.count = 25;
  auto r = build_xi_statement21(base, base, opts);
  auto reread = parse_report(serialize(r));
  attach_verdicts(r, base);
  attach_verdicts(reread, base);
  CHECK(reread.verdicts == r.verdicts);

  auto chooser = UltraChooser::always_right();
  auto pair = theorem31_pair(chooser, 10);
  auto first = parse_report(serialize(pair.first));
  auto second = parse_report(serialize(pair.second));
  CHECK(check_disjoint(first, second).verdict.kind == VerdictKind::exact);
  attach_verdicts(first, base);
  attach_verdicts(second, base);
  CHECK_FALSE(first.any_violation());
  CHECK_FALSE(second.any_violation());
}
