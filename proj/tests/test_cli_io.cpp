#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qspec/verify.hpp"

using namespace qspec;

TEST_CASE("ring and scheme descriptor shorthand") {
  CHECK(parseRingDescriptor("zmod:12")->key() == FiniteRing::zmod(12)->key());
  CHECK(parseRingDescriptor("gf:4")->isField());
  CHECK(parseRingDescriptor("poly:gf:2:t")->isPid());
  CHECK(parseRingDescriptor("poly:gf:3")->key() == PolyRing::make(FiniteRing::gf(3), "t")->key());
  CHECK_THROWS_WITH_AS(parseRingDescriptor("ring:soup"), doctest::Contains("ParseError"), Error);
  CHECK_THROWS_WITH_AS(parseRingDescriptor("zmod:x"), doctest::Contains("ParseError"), Error);
  CHECK_THROWS_WITH_AS(parseFiniteRingDescriptor("poly:gf:2"), doctest::Contains("ParseError"),
                       Error);
  CHECK(parseSchemeDescriptor("p1:2")->form() == GluedScheme::Form::P1);
  CHECK(parseSchemeDescriptor("empty")->form() == GluedScheme::Form::Empty);
  CHECK(parseSchemeDescriptor("affine:zmod:6")->affineRing()->size() == 6);
  auto D = parseSchemeDescriptor("disj:affine:zmod:4;affine:gf:2");
  CHECK(D->components().size() == 2);
  CHECK_THROWS_WITH_AS(parseSchemeDescriptor("torus"), doctest::Contains("ParseError"), Error);
}

TEST_CASE("module descriptor shorthand") {
  auto R = FiniteRing::zmod(12);
  CHECK(parseModuleDescriptor(R, "R")->size() == 12);
  CHECK(parseModuleDescriptor(R, "Z/4")->size() == 4);
  CHECK(parseModuleDescriptor(R, "R/(3)")->size() == 3);
  CHECK(parseModuleDescriptor(R, "R/(2,3)")->size() == 1);
  CHECK(parseModuleDescriptor(R, "free:2")->size() == 144);
  CHECK(parseModuleDescriptor(R, "Z/4 + Z/3")->size() == 12);
  CHECK(parseModuleDescriptor(R, "0")->size() == 1);
  CHECK_THROWS_WITH_AS(parseModuleDescriptor(R, "spam"), doctest::Contains("ParseError"), Error);
}

TEST_CASE("verdict JSON round trip and replay") {
  auto R = FiniteRing::zmod(12);
  auto M = FinMod::cyclic(R, Ideal::principal(R, Elem(R->fromInt(4))));
  auto N = FinMod::cyclic(R, Ideal::principal(R, Elem(R->fromInt(2))));
  // positive direction carries a witness
  PrecedesVerdict yes = precedes(N, M);
  REQUIRE(yes.yes());
  CHECK(replayVerdictJson(verdictToJson(yes, N, M), N, M));
  // negative direction carries a certificate
  PrecedesVerdict no = precedes(M, N);
  REQUIRE(no.answer == PrecedesVerdict::Answer::No);
  CHECK(replayVerdictJson(verdictToJson(no, M, N), M, N));
  // evidence replayed against the wrong modules is rejected
  CHECK_FALSE(replayVerdictJson(verdictToJson(yes, N, M), M, N));
  // determinism: identical runs serialize identically
  CHECK(verdictToJson(yes, N, M) == verdictToJson(precedes(N, M), N, M));
  CHECK_THROWS_WITH_AS(replayVerdictJson("not json", M, N), doctest::Contains("ParseError"),
                       Error);
}

TEST_CASE("suite registry runs and rejects unknown names") {
  CHECK(suiteNames().size() == 21);
  SuiteOptions opt;
  opt.ring = "zmod:6";
  VerifyReport r = runSuite("zartop", opt);
  CHECK_FALSE(r.anyFail());
  CHECK(r.countStatus("pass") == r.checks.size());
  CHECK_THROWS_WITH_AS(runSuite("nonsense", opt), doctest::Contains("UnknownSuite"), Error);
  // report JSON is deterministic (timing is excluded from it)
  VerifyReport r2 = runSuite("zartop", opt);
  CHECK(reportToJson(r) == reportToJson(r2));
}

TEST_CASE("every registered suite passes on its default instance") {
  for (const std::string& name : suiteNames()) {
    SuiteOptions opt;
    VerifyReport r = runSuite(name, opt);
    INFO(name);
    CHECK_FALSE(r.anyFail());
    CHECK(!r.checks.empty());
  }
}
