#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qspec/poly.hpp"
#include "qspec/ring.hpp"

using namespace qspec;

TEST_CASE("zmod basics") {
  auto R = FiniteRing::zmod(12);
  CHECK(R->size() == 12);
  CHECK(R->characteristic() == 12);
  CHECK(!R->isDomain());
  CHECK(!R->isField());
  // units of Z/12 are exactly the classes coprime to 12
  int units = 0;
  for (u64 i = 0; i < 12; ++i)
    if (R->isUnitV(R->elemAt(i))) ++units;
  CHECK(units == 4);
  CHECK(R->mulV(R->fromInt(7), *R->inverseV(R->fromInt(7))) == R->oneV());
  // idempotents of Z/12: 0,1,4,9
  auto es = R->idempotents();
  CHECK(es.size() == 4);
}

TEST_CASE("zmod prime is a field") {
  auto R = FiniteRing::zmod(7);
  CHECK(R->isField());
  CHECK(R->isDomain());
  CHECK(R->isPid());
}

TEST_CASE("gf(4) is a field with all nonzero elements invertible") {
  auto F = FiniteRing::gf(4);
  CHECK(F->size() == 4);
  CHECK(F->characteristic() == 2);
  CHECK(F->isField());
  // oracle: search the whole multiplication table for each inverse
  for (u64 i = 1; i < 4; ++i) {
    Vec a = F->elemAt(i);
    bool found = false;
    for (u64 j = 1; j < 4; ++j)
      if (F->mulV(a, F->elemAt(j)) == F->oneV()) found = true;
    CHECK(found);
  }
  // multiplicative group is cyclic of order 3: a^3 = 1 for a != 0
  for (u64 i = 1; i < 4; ++i) CHECK(F->powV(F->elemAt(i), 3) == F->oneV());
}

TEST_CASE("gf rejects non prime powers") {
  CHECK_THROWS_AS(FiniteRing::gf(6), Error);
  try {
    FiniteRing::gf(6);
  } catch (const Error& e) {
    CHECK(e.code() == "BadModulus");
  }
}

TEST_CASE("product ring matches CRT") {
  auto R = FiniteRing::product({FiniteRing::zmod(4), FiniteRing::zmod(3)});
  CHECK(R->size() == 12);
  auto Z12 = FiniteRing::zmod(12);
  // n |-> (n mod 4, n mod 3) is a ring isomorphism
  for (i64 n = 0; n < 12; ++n)
    for (i64 m = 0; m < 12; ++m) {
      Vec lhs = R->mulV(R->fromInt(n), R->fromInt(m));
      Vec rhs = R->fromInt((n * m) % 12);
      CHECK(lhs == rhs);
    }
}

TEST_CASE("table ring rejects bad axioms") {
  // "multiplication" e*e = e on Z/4 with unit 2*e: 2e * 2e = 4e = 0 != unit
  CHECK_THROWS_AS(FiniteRing::table({4}, {{{1}}}, {2}, "bad-unit"), Error);
}

TEST_CASE("polynomial arithmetic over GF(2)") {
  auto F2 = FiniteRing::gf(2);
  auto P = PolyRing::make(F2, "t");
  CHECK(P->isDomain());
  CHECK(P->isPid());
  CHECK(!P->isField());
  PolyE t = P->pVar();
  PolyE a = P->pAdd(P->pMul(t, t), P->pOne());      // t^2 + 1
  PolyE b = P->pAdd(t, P->pOne());                  // t + 1
  CHECK(P->pMul(b, b) == a);                        // (t+1)^2 = t^2+1 in char 2
  PolyE q, r;
  P->pDivMod(a, b, q, r);
  CHECK(r.c.empty());
  CHECK(q == b);
  CHECK(P->pGcd(a, b) == b);
  CHECK(P->showP(a) == "t^2+1");
}

TEST_CASE("divmod round trip over GF(3)") {
  auto F3 = FiniteRing::gf(3);
  auto P = PolyRing::make(F3, "x");
  for (const PolyE& a : P->polysOfDegreeLess(4))
    for (const PolyE& b : P->monicOfDegree(2)) {
      PolyE q, r;
      P->pDivMod(a, b, q, r);
      CHECK(P->deg(r) < P->deg(b));
      CHECK(P->pAdd(P->pMul(q, b), r) == a);
    }
}

TEST_CASE("irreducibles over GF(2)") {
  auto P = PolyRing::make(FiniteRing::gf(2));
  auto irr = P->monicIrreducibles(2);
  // t, t+1, t^2+t+1
  REQUIRE(irr.size() == 3);
  CHECK(P->showP(irr[0]) == "t");
  CHECK(P->showP(irr[1]) == "t+1");
  CHECK(P->showP(irr[2]) == "t^2+t+1");
  // counts by degree: 2, 1, 2, 3 for degrees 1..4 over GF(2)
  CHECK(P->monicIrreducibles(4).size() == 2 + 1 + 2 + 3);
}

TEST_CASE("factorization over GF(2)") {
  auto P = PolyRing::make(FiniteRing::gf(2));
  PolyE t = P->pVar();
  // t^4 + t^2 = t^2 (t+1)^2
  PolyE f = P->pAdd(P->pPow(t, 4), P->pPow(t, 2));
  auto fs = P->factor(f);
  REQUIRE(fs.size() == 2);
  CHECK(P->showP(fs[0].first) == "t");
  CHECK(fs[0].second == 2);
  CHECK(P->showP(fs[1].first) == "t+1");
  CHECK(fs[1].second == 2);
  // product of factors reconstructs f
  PolyE prod = P->pOne();
  for (auto& [g, e] : fs) prod = P->pMul(prod, P->pPow(g, (u64)e));
  CHECK(prod == f);
}

TEST_CASE("Laurent ring canonical forms") {
  auto P = PolyRing::make(FiniteRing::gf(2));
  auto L = LocalizedPolyRing::make(P, P->pVar());
  PolyE t = P->pVar();
  // t^2 canonicalizes to (1, -2) when written as num / t^k with t not | num
  LocE a = L->lmake(P->pPow(t, 2), 0);
  CHECK(a.num == P->pOne());
  CHECK(a.k == -2);
  // (t^2+t)/t = t+1
  LocE b = L->lmake(P->pAdd(P->pPow(t, 2), t), 1);
  CHECK(b.num == P->pAdd(t, P->pOne()));
  CHECK(b.k == 0);
  // units are c * t^n: t^2+t is not a unit, t^3 is
  CHECK(!L->isUnitL(b));
  LocE u = L->lmake(P->pOne(), -3);
  CHECK(L->isUnitL(u));
  CHECK(L->lMul(u, *L->invL(u)) == le(L->one()));
  // addition with different denominators: 1/t + 1 = (1+t)/t
  LocE s = L->lAdd(L->lmake(P->pOne(), 1), le(L->one()));
  CHECK(s.num == P->pAdd(t, P->pOne()));
  CHECK(s.k == 1);
}

TEST_CASE("substitution homomorphisms") {
  auto F2 = FiniteRing::gf(2);
  auto Pt = PolyRing::make(F2, "t");
  auto Ps = PolyRing::make(F2, "s");
  auto Lt = LocalizedPolyRing::make(Pt, Pt->pVar());
  auto Ls = LocalizedPolyRing::make(Ps, Ps->pVar());
  // t |-> 1/s maps GF(2)[t,1/t] isomorphically onto GF(2)[s,1/s]
  Elem sInv = LocE{Ps->pOne(), 1};
  RingHom h = substitutionHom(Lt, Ls, sInv, "t->1/s");
  Elem x = Elem(Lt->lmake(Pt->pAdd(Pt->pVar(), Pt->pOne()), 0));  // t+1
  Elem y = h(x);  // 1/s + 1 = (1+s)/s
  CHECK(le(y) == Ls->lmake(Ps->pAdd(Ps->pVar(), Ps->pOne()), 1));
  // homomorphism property on a few pairs
  Elem x2 = Elem(Lt->lmake(Pt->pPow(Pt->pVar(), 2), 1));  // t
  CHECK(Ls->eq(h(Lt->mul(x, x2)), Ls->mul(h(x), h(x2))));
  CHECK(Ls->eq(h(Lt->add(x, x2)), Ls->add(h(x), h(x2))));
}

#include "qspec/ideal.hpp"

TEST_CASE("ideal lattice of Z/12") {
  auto R = FiniteRing::zmod(12);
  auto ideals = allIdeals(R);
  CHECK(ideals.size() == 6);  // one per divisor of 12
  auto primes = primeIdeals(R);
  REQUIRE(primes.size() == 2);
  // the primes are (2) and (3)
  for (auto& P : primes) {
    CHECK(P.isMaximal());
    CHECK((P.order() == 6 || P.order() == 4));
  }
  Ideal I2 = Ideal::principal(R, Elem(R->fromInt(2)));
  Ideal I3 = Ideal::principal(R, Elem(R->fromInt(3)));
  Ideal I4 = Ideal::principal(R, Elem(R->fromInt(4)));
  Ideal I6 = Ideal::principal(R, Elem(R->fromInt(6)));
  CHECK(idealProduct(I2, I3) == I6);
  CHECK(idealIntersect(I2, I3) == I6);
  CHECK(idealSum(I4, I6) == I2);
  CHECK(I2.contains(I4));
  CHECK(!I4.contains(I2));
  CHECK(I2.isPrime());
  CHECK(!I4.isPrime());
  CHECK(!Ideal::unitIdeal(R).isPrime());
}

TEST_CASE("colon ideals match brute force") {
  auto R = FiniteRing::zmod(36);
  auto ideals = allIdeals(R);
  CHECK(ideals.size() == 9);
  for (auto& I : ideals)
    for (auto& J : ideals) {
      Ideal C = idealColon(I, J);
      // oracle: scan every ring element
      std::vector<Elem> gens;
      for (u64 r = 0; r < R->size(); ++r) {
        Vec rv = R->elemAt(r);
        bool ok = true;
        for (const Elem& g : J.generators())
          if (!I.contains(Elem(R->mulV(rv, fv(g))))) ok = false;
        if (ok) gens.emplace_back(rv);
      }
      CHECK(C == Ideal::span(RingPtr(R), gens));
    }
}

TEST_CASE("quotient rings") {
  auto R = FiniteRing::zmod(12);
  auto [Q, hom] = quotientRing(R, Ideal::principal(R, Elem(R->fromInt(4))));
  CHECK(Q->size() == 4);
  CHECK(Q->characteristic() == 4);
  // residue map is a ring homomorphism
  for (u64 i = 0; i < 12; ++i)
    for (u64 j = 0; j < 12; ++j) {
      Elem a = Elem(R->elemAt(i)), b = Elem(R->elemAt(j));
      CHECK(Q->eq(hom(R->mul(a, b)), Q->mul(hom(a), hom(b))));
      CHECK(Q->eq(hom(R->add(a, b)), Q->add(hom(a), hom(b))));
    }
  CHECK(Q->eq(hom(R->one()), Q->one()));
  // quotient by the unit ideal is the zero ring
  auto [Z, zh] = quotientRing(R, Ideal::unitIdeal(RingPtr(R)));
  CHECK(Z->size() == 1);
  CHECK(!Z->isDomain());
}

TEST_CASE("localization at primes") {
  auto R6 = FiniteRing::zmod(6);
  for (auto& P : primeIdeals(R6)) {
    auto [L, hom] = localizeAtPrime(R6, P);
    CHECK(L->isField());
    CHECK((L->size() == 2 || L->size() == 3));
    // localizing at (2) inverts 3: the image of 3 is a unit exactly when
    // 3 is outside the prime
    Vec im3 = fv(hom(Elem(R6->fromInt(3))));
    CHECK(L->isUnitV(im3) == !P.contains(Elem(R6->fromInt(3))));
  }
  auto R12 = FiniteRing::zmod(12);
  for (auto& P : primeIdeals(R12)) {
    auto [L, hom] = localizeAtPrime(R12, P);
    CHECK((L->size() == 4 || L->size() == 3));  // Z/4 at (2), Z/3 at (3)
  }
}

TEST_CASE("polynomial ideals over GF(2)") {
  auto P = PolyRing::make(FiniteRing::gf(2));
  RingPtr R = P;
  PolyE t = P->pVar();
  PolyE tp1 = P->pAdd(t, P->pOne());
  Ideal a = Ideal::principal(R, Elem(P->pMul(tp1, tp1)));  // ((t+1)^2)
  Ideal b = Ideal::principal(R, Elem(tp1));
  CHECK(!a.isPrime());
  CHECK(b.isPrime());
  CHECK(b.isMaximal());
  CHECK(idealColon(a, b) == b);
  CHECK(idealSum(a, Ideal::principal(R, Elem(P->pMul(t, tp1)))) == b);
  Ideal z = Ideal::zeroIdeal(R);
  CHECK(z.isPrime());
  CHECK(!z.isMaximal());
  auto primes = primeIdeals(R, 2);
  CHECK(primes.size() == 4);  // (0), (t), (t+1), (t^2+t+1)
}

TEST_CASE("Laurent ring ideals drop powers of t") {
  auto P = PolyRing::make(FiniteRing::gf(2));
  auto L = LocalizedPolyRing::make(P, P->pVar());
  RingPtr R = L;
  PolyE t = P->pVar();
  // (t^2 + t) = (t+1) once t is invertible
  Ideal a = Ideal::principal(R, Elem(L->fromPoly(P->pAdd(P->pPow(t, 2), t))));
  Ideal b = Ideal::principal(R, Elem(L->fromPoly(P->pAdd(t, P->pOne()))));
  CHECK(a == b);
  CHECK(Ideal::principal(R, Elem(L->fromPoly(t))).isUnitIdeal());
  auto primes = primeIdeals(R, 2);
  CHECK(primes.size() == 3);  // (0), (t+1), (t^2+t+1); (t) became the unit ideal
}
