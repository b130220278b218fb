#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qspec/serre.hpp"

using namespace qspec;

namespace {

Closed allMask(const PrimeList& primes) {
  return primes.empty() ? 0 : (Closed(1) << primes.size()) - 1;
}

}  // namespace

TEST_CASE("realized hom sets shrink exactly where support is cut away") {
  auto R = FiniteRing::zmod(6);
  PrimeList primes = primeIdeals(R);
  REQUIRE(primes.size() == 2);
  auto M2 = FinMod::cyclic(R, idealSum(Ideal::principal(R, Elem(R->fromInt(2))),
                                       Ideal::zeroIdeal(R)));  // Z/6 / (2) = Z/2-part
  auto M3 = FinMod::cyclic(R, Ideal::principal(R, Elem(R->fromInt(3))));
  auto F = FinMod::freeModule(R, 1);

  // find which point supports which module
  Closed s2 = supportSet(primes, M2), s3 = supportSet(primes, M3);
  CHECK(s2 != s3);
  CHECK((s2 | s3) == allMask(primes));

  // in the full quotient nothing is lost
  ThickSubcat Tfull = thickOfOpen(R, allMask(primes));
  CHECK(quotHomCount(Tfull, F, F) == homCount(F, F));
  // cutting away the support of M3 makes it invisible
  ThickSubcat T2 = thickOfOpen(R, s2);
  CHECK(quotHomCount(T2, M3, M3) == 1);
  CHECK(quotIsomorphic(T2, M3, FinMod::zeroModule(R)));
  CHECK_FALSE(quotIsomorphic(T2, M2, FinMod::zeroModule(R)));
  // on its own support the module keeps all its maps
  CHECK(quotHomCount(T2, M2, M2) == homCount(M2, M2));
}

TEST_CASE("quotient category composition: identity and associativity") {
  auto R = FiniteRing::zmod(12);
  PrimeList primes = primeIdeals(R);
  auto F = FinMod::freeModule(R, 1);
  auto C4 = FinMod::cyclic(R, Ideal::principal(R, Elem(R->fromInt(4))));
  auto C6 = FinMod::cyclic(R, Ideal::principal(R, Elem(R->fromInt(6))));
  std::vector<FinModPtr> objs{F, C4, C6};
  for (Closed open : {allMask(primes), Closed(1), Closed(2)}) {
    ThickSubcat T = thickOfOpen(R, open);
    for (const auto& A : objs)
      for (const auto& B : objs) {
        auto homsAB = allQuotHoms(T, A, B, 100000);
        // identity laws
        QuotHom idA = inducedQuot(T, ModHom{A, A, identityMat(A->dim())});
        QuotHom idB = inducedQuot(T, ModHom{B, B, identityMat(B->dim())});
        for (const QuotHom& h : homsAB) {
          CHECK(composeQuot(T, idA, h).f.T == h.f.T);
          CHECK(composeQuot(T, h, idB).f.T == h.f.T);
        }
        // associativity through a third object
        for (const auto& C : objs) {
          auto homsBC = allQuotHoms(T, B, C, 100000);
          size_t na = std::min<size_t>(homsAB.size(), 4);
          size_t nb = std::min<size_t>(homsBC.size(), 4);
          auto homsCA = allQuotHoms(T, C, A, 100000);
          size_t nc = std::min<size_t>(homsCA.size(), 4);
          for (size_t i = 0; i < na; ++i)
            for (size_t j = 0; j < nb; ++j)
              for (size_t k = 0; k < nc; ++k) {
                QuotHom ab = homsAB[i], bc = homsBC[j], ca = homsCA[k];
                QuotHom left = composeQuot(T, composeQuot(T, ab, bc), ca);
                QuotHom right = composeQuot(T, ab, composeQuot(T, bc, ca));
                CHECK(left.f.T == right.f.T);
              }
        }
      }
  }
}

TEST_CASE("maps invertible up to the cut-away support are isomorphisms") {
  auto R = FiniteRing::zmod(6);
  PrimeList primes = primeIdeals(R);
  auto F = FinMod::freeModule(R, 1);
  auto M2 = FinMod::cyclic(R, Ideal::principal(R, Elem(R->fromInt(2))));
  ThickSubcat T = thickOfOpen(R, supportSet(primes, M2));
  // the projection R -> R/(2) kills only what the open set cannot see
  ModHom proj{F, M2, Mat{Vec{1}}};
  CHECK(quotIsIso(T, inducedQuot(T, proj)));
  CHECK(quotIsomorphic(T, F, M2));
  CHECK_FALSE(quotIsomorphic(thickOfOpen(R, allMask(primes)), F, M2));
}

TEST_CASE("natural endomorphism families over probe objects are scalars") {
  for (auto R : {FiniteRing::zmod(6), FiniteRing::zmod(8), FiniteRing::gf(4)}) {
    std::vector<FinModPtr> probes{FinMod::freeModule(R, 1)};
    for (const Ideal& I : allIdeals(R))
      if (!I.isUnitIdeal() && !I.isZeroIdeal()) probes.push_back(FinMod::cyclic(R, I));
    CenterResult c = centerOfCategory(R, probes);
    CHECK(c.count == R->size());
    CHECK(c.scalarOnly);
    CHECK(c.kernel.isZeroIdeal());
    CHECK(c.canonicalIso);
  }
}

TEST_CASE("a non-faithful probe family shows up in the kernel") {
  auto R = FiniteRing::zmod(6);
  auto M2 = FinMod::cyclic(R, Ideal::principal(R, Elem(R->fromInt(2))));
  CenterResult c = centerOfCategory(R, {M2});
  CHECK(c.count == 2);  // endomorphisms of Z/2
  CHECK(c.scalarOnly);
  CHECK(c.kernel == annihilator(M2));
  CHECK(c.canonicalIso);  // R/(2) still hits everything
}

TEST_CASE("quotient-category centers match local section rings on every open") {
  auto R = FiniteRing::zmod(6);
  PrimeList primes = primeIdeals(R);
  for (Closed open = 0; open <= allMask(primes); ++open) {
    CenterResult c = centerOfQuotient(R, open);
    auto S = sectionsRing(R, open, primes);
    CHECK(c.count == S->size());
    CHECK(c.scalarOnly);
    CHECK(c.canonicalIso);
    // kernel = everything invisible on the open set
    for (u64 i = 0; i < R->size(); ++i) {
      Vec r = R->elemAt(i);
      bool invisible = true;
      for (size_t p = 0; p < primes.size(); ++p)
        if (open & (Closed(1) << p))
          if (!isZeroVec(fv(localizeAtPrime(R, primes[p]).second(Elem(r)))))
            invisible = false;
      CHECK(c.kernel.contains(Elem(r)) == invisible);
    }
  }
}

TEST_CASE("section rings form a sheaf on the finite spectrum") {
  for (auto R : {FiniteRing::zmod(6), FiniteRing::zmod(12)}) {
    StructurePresheaf sh = structurePresheaf(R);
    CHECK(presheafMatchesCenters(sh));
    CHECK(presheafGluing(sh));
  }
}

TEST_CASE("global sections of the quotient construction recover the ring") {
  for (auto R : {FiniteRing::zmod(6), FiniteRing::zmod(12), FiniteRing::gf(4)}) {
    CHECK(affineReconstruction(R));
  }
}
