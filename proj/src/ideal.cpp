#include "qspec/ideal.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "qspec/config.hpp"

namespace qspec {

namespace {

FiniteRingPtr frOf(const RingPtr& R) {
  return std::static_pointer_cast<const FiniteRing>(R);
}
PolyRingPtr prOf(const RingPtr& R) {
  if (R->kind() == Ring::Kind::Poly) return std::static_pointer_cast<const PolyRing>(R);
  return std::static_pointer_cast<const LocalizedPolyRing>(R)->base();
}

// Monic generator of the ideal of x, in the base polynomial ring. For a
// localized ring the factors shared with the inverted element are units and
// get stripped.
PolyE genOfElem(const RingPtr& R, const Elem& x) {
  auto P = prOf(R);
  PolyE g = R->kind() == Ring::Kind::Poly ? pe(x) : le(x).num;
  if (R->kind() == Ring::Kind::Localized) {
    const PolyE& f = std::static_pointer_cast<const LocalizedPolyRing>(R)->inverted();
    for (;;) {
      PolyE d = P->pGcd(g, f);
      if (P->deg(d) < 1) break;
      g = P->pDiv(g, d);
    }
  }
  return P->pMonic(g);
}

void requireSameRing(const Ideal& a, const Ideal& b) {
  if (a.ring()->key() != b.ring()->key())
    fail("MixedRings", "ideal operation across different rings: " + a.ring()->key() + " vs " +
                           b.ring()->key());
}

}  // namespace

Ideal Ideal::span(const RingPtr& R, const std::vector<Elem>& gens) {
  Ideal I(R);
  if (R->finite()) {
    auto F = frOf(R);
    Mat rows;
    for (const Elem& g : gens) {
      rows.push_back(fv(g));
      for (int b = 0; b < F->dim(); ++b) {
        Vec eb(F->dim(), 0);
        eb[b] = 1;
        rows.push_back(F->mulV(eb, fv(g)));
      }
    }
    I.hnf_ = subgroupBasis(std::move(rows), F->orders());
  } else {
    auto P = prOf(R);
    PolyE g;
    for (const Elem& x : gens) g = P->pGcd(g, genOfElem(R, x));
    I.gen_ = std::move(g);
  }
  return I;
}

Ideal Ideal::principal(const RingPtr& R, const Elem& g) { return span(R, {g}); }
Ideal Ideal::zeroIdeal(const RingPtr& R) { return span(R, {}); }
Ideal Ideal::unitIdeal(const RingPtr& R) { return span(R, {R->one()}); }

bool Ideal::contains(const Elem& x) const {
  if (ring_->finite()) return inSubgroup(hnf_, frOf(ring_)->orders(), fv(x));
  auto P = prOf(ring_);
  PolyE g = genOfElem(ring_, x);
  if (gen_.c.empty()) return g.c.empty();
  return P->divides(gen_, g);
}

bool Ideal::contains(const Ideal& other) const {
  requireSameRing(*this, other);
  if (ring_->finite()) {
    for (const Vec& r : other.hnf_)
      if (!inSubgroup(hnf_, frOf(ring_)->orders(), r)) return false;
    return true;
  }
  if (other.gen_.c.empty()) return true;
  if (gen_.c.empty()) return false;
  return prOf(ring_)->divides(gen_, other.gen_);
}

bool Ideal::operator==(const Ideal& o) const {
  return ring_->key() == o.ring_->key() && hnf_ == o.hnf_ && gen_ == o.gen_;
}

bool Ideal::isZeroIdeal() const {
  if (ring_->finite()) return subgroupOrder(hnf_, frOf(ring_)->orders()) == 1;
  return gen_.c.empty();
}

bool Ideal::isUnitIdeal() const { return contains(ring_->one()); }

bool Ideal::isPrime() const {
  if (isUnitIdeal()) return false;
  if (ring_->finite()) {
    auto F = frOf(ring_);
    std::vector<Vec> outside;
    for (u64 i = 0; i < F->size(); ++i) {
      Vec v = F->elemAt(i);
      if (!contains(Elem(v))) outside.push_back(std::move(v));
    }
    for (const Vec& a : outside)
      for (const Vec& b : outside)
        if (contains(Elem(F->mulV(a, b)))) return false;
    return true;
  }
  if (gen_.c.empty()) return true;  // zero ideal of a domain
  return prOf(ring_)->irreducible(gen_);
}

bool Ideal::isMaximal() const {
  // finite ring: residue domains are fields, so prime = maximal
  if (ring_->finite()) return isPrime();
  if (gen_.c.empty()) return false;
  return isPrime();
}

u64 Ideal::order() const {
  if (!ring_->finite()) fail("TooLarge", "infinite ideal has no element count");
  return subgroupOrder(hnf_, frOf(ring_)->orders());
}

std::vector<Elem> Ideal::generators() const {
  std::vector<Elem> g;
  if (ring_->finite()) {
    for (const Vec& r : hnf_)
      if (!isZeroVec(r)) g.emplace_back(r);
    if (g.empty()) g.emplace_back(ring_->zero());
  } else if (ring_->kind() == Ring::Kind::Poly) {
    g.emplace_back(gen_);
  } else {
    g.emplace_back(LocE{gen_, 0});
  }
  return g;
}

std::string Ideal::show() const {
  std::ostringstream os;
  os << "(";
  bool first = true;
  for (const Elem& g : generators()) {
    if (!first) os << ",";
    first = false;
    os << ring_->show(g);
  }
  os << ")";
  return os.str();
}

std::string Ideal::keyStr() const {
  std::ostringstream os;
  os << ring_->key() << "|";
  if (ring_->finite()) {
    for (const Vec& r : hnf_) {
      for (i64 x : r) os << x << ",";
      os << ";";
    }
  } else {
    os << prOf(ring_)->showP(gen_);
  }
  return os.str();
}

Ideal idealSum(const Ideal& a, const Ideal& b) {
  requireSameRing(a, b);
  std::vector<Elem> g = a.generators();
  for (Elem& x : b.generators()) g.push_back(std::move(x));
  return Ideal::span(a.ring(), g);
}

Ideal idealProduct(const Ideal& a, const Ideal& b) {
  requireSameRing(a, b);
  const RingPtr& R = a.ring();
  std::vector<Elem> g;
  for (const Elem& x : a.generators())
    for (const Elem& y : b.generators()) g.push_back(R->mul(x, y));
  return Ideal::span(R, g);
}

Ideal idealIntersect(const Ideal& a, const Ideal& b) {
  requireSameRing(a, b);
  const RingPtr& R = a.ring();
  if (R->finite()) {
    Mat m = subgroupIntersect(a.hnf(), b.hnf(), frOf(R)->orders());
    // an intersection of ideals is an ideal; re-span for the invariant
    std::vector<Elem> g;
    for (const Vec& row : m) g.emplace_back(row);
    return Ideal::span(R, g);
  }
  auto P = prOf(R);
  if (a.gen().c.empty() || b.gen().c.empty()) return Ideal::zeroIdeal(R);
  PolyE d = P->pGcd(a.gen(), b.gen());
  PolyE lcm = P->pDiv(P->pMul(a.gen(), b.gen()), d);
  return Ideal::span(R, {Elem(R->kind() == Ring::Kind::Poly ? Elem(lcm) : Elem(LocE{lcm, 0}))});
}

Ideal idealColon(const Ideal& a, const Ideal& b) {
  requireSameRing(a, b);
  const RingPtr& R = a.ring();
  if (R->finite()) {
    auto F = frOf(R);
    if (b.isZeroIdeal()) return Ideal::unitIdeal(R);
    QuotientGroup q = quotientGroup(a.hnf(), F->orders());
    // r is in (a : b) iff r*g maps to zero in R/a for every generator g of b
    Mat A(F->dim());
    Vec mout;
    for (const Elem& g : b.generators()) {
      Mat Ag = matMul(F->multMatrix(fv(g)), q.proj);
      for (int i = 0; i < F->dim(); ++i)
        for (i64 x : Ag[i]) A[i].push_back(x);
      for (i64 o : q.orders) mout.push_back(o);
    }
    Mat ker = kernelSubgroup(A, F->orders(), mout);
    std::vector<Elem> gens;
    for (const Vec& row : ker) gens.emplace_back(row);
    return Ideal::span(R, gens);  // a colon ideal is an ideal
  }
  auto P = prOf(R);
  if (b.isZeroIdeal()) return Ideal::unitIdeal(R);
  if (a.gen().c.empty()) return Ideal::zeroIdeal(R);
  PolyE d = P->pGcd(a.gen(), b.gen());
  PolyE g = P->pDiv(a.gen(), d);
  return Ideal::span(R, {R->kind() == Ring::Kind::Poly ? Elem(g) : Elem(LocE{g, 0})});
}

std::vector<Ideal> allIdeals(const FiniteRingPtr& R) {
  std::map<std::string, Ideal> seen;
  std::vector<Ideal> principal;
  for (u64 i = 0; i < R->size(); ++i) {
    Ideal I = Ideal::principal(R, Elem(R->elemAt(i)));
    if (seen.emplace(I.keyStr(), I).second) principal.push_back(I);
  }
  // every ideal is a finite sum of principal ideals
  std::vector<Ideal> work(principal);
  while (!work.empty()) {
    Ideal cur = std::move(work.back());
    work.pop_back();
    for (const Ideal& p : principal) {
      Ideal s = idealSum(cur, p);
      if (seen.size() >= caps().submoduleCap) fail("TooLarge", "ideal lattice exceeds cap");
      if (seen.emplace(s.keyStr(), s).second) work.push_back(s);
    }
  }
  std::vector<Ideal> out;
  for (auto& [k, v] : seen) out.push_back(std::move(v));
  return out;
}

std::vector<Ideal> primeIdeals(const RingPtr& R, int degBound) {
  std::vector<Ideal> out;
  if (R->finite()) {
    for (Ideal& I : allIdeals(frOf(R)))
      if (I.isPrime()) out.push_back(std::move(I));
    return out;
  }
  if (degBound < 0) fail("NeedsBound", "prime enumeration over an infinite ring needs a bound");
  out.push_back(Ideal::zeroIdeal(R));
  auto P = prOf(R);
  for (const PolyE& p : P->monicIrreducibles(degBound)) {
    Ideal I = Ideal::span(R, {R->kind() == Ring::Kind::Poly ? Elem(p) : Elem(LocE{p, 0})});
    if (!I.isUnitIdeal()) out.push_back(std::move(I));
  }
  return out;
}

std::pair<FiniteRingPtr, RingHom> quotientRing(const FiniteRingPtr& R, const Ideal& I) {
  if (I.ring()->key() != R->key()) fail("MixedRings", "ideal belongs to a different ring");
  QuotientGroup q = quotientGroup(I.hnf(), R->orders());
  auto project = [q, R](const Vec& x) { return vecModRed(vecMat(x, q.proj), q.orders); };
  int m = (int)q.orders.size();
  std::vector<std::vector<Vec>> mul(m, std::vector<Vec>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) mul[i][j] = project(R->mulV(q.lift[i], q.lift[j]));
  std::ostringstream label;
  label << "quot(" << I.keyStr() << ")";
  FiniteRingPtr Q = FiniteRing::table(q.orders, mul, project(R->oneV()), label.str());
  RingHom hom{R, Q, [project](const Elem& x) -> Elem { return project(fv(x)); }, "residue"};
  return {Q, hom};
}

Vec primitiveIdempotentOutside(const FiniteRingPtr& R, const Ideal& P) {
  if (P.ring()->key() != R->key()) fail("MixedRings", "prime belongs to a different ring");
  if (!P.isPrime()) fail("NotPrime", "localization point must be prime: " + P.show());
  std::vector<Vec> idem = R->idempotents();
  std::vector<Vec> primitive;
  for (const Vec& e : idem) {
    if (isZeroVec(e)) continue;
    bool prim = true;
    for (const Vec& f : idem) {
      Vec ef = R->mulV(e, f);
      if (!isZeroVec(ef) && ef != e) prim = false;
    }
    if (prim) primitive.push_back(e);
  }
  const Vec* chosen = nullptr;
  for (const Vec& e : primitive)
    if (!P.contains(Elem(e))) {
      if (chosen) fail("MismatchBug", "two primitive idempotents outside one prime");
      chosen = &e;
    }
  if (!chosen) fail("MismatchBug", "no primitive idempotent outside the prime");
  return *chosen;
}

std::pair<FiniteRingPtr, RingHom> localizeAtPrime(const FiniteRingPtr& R, const Ideal& P) {
  Vec e = primitiveIdempotentOutside(R, P);
  // R localized at P is the factor cut out by e: R/(1-e)
  Vec c = R->addV(R->oneV(), R->negV(e));
  auto [Q, hom] = quotientRing(R, Ideal::principal(R, Elem(c)));
  return {Q, RingHom{R, Q, hom.map, "localize@" + P.show()}};
}

}  // namespace qspec
