#pragma once

#include "qspec/poly.hpp"

namespace qspec {

// An ideal in canonical form. Finite rings store the canonical additive
// subgroup basis; principal-ideal kinds store a monic generator (empty
// polynomial = zero ideal).
class Ideal {
public:
  static Ideal span(const RingPtr& R, const std::vector<Elem>& gens);
  static Ideal principal(const RingPtr& R, const Elem& g);
  static Ideal zeroIdeal(const RingPtr& R);
  static Ideal unitIdeal(const RingPtr& R);

  const RingPtr& ring() const { return ring_; }
  const Mat& hnf() const { return hnf_; }
  const PolyE& gen() const { return gen_; }

  bool contains(const Elem& x) const;
  bool contains(const Ideal& other) const;  // other subset of this
  bool operator==(const Ideal& o) const;
  bool isZeroIdeal() const;
  bool isUnitIdeal() const;
  bool isPrime() const;
  bool isMaximal() const;
  u64 order() const;  // finite kind: number of elements
  std::vector<Elem> generators() const;
  std::string show() const;
  std::string keyStr() const;  // canonical; equal ideals get equal keys

private:
  explicit Ideal(RingPtr R) : ring_(std::move(R)) {}
  RingPtr ring_;
  Mat hnf_;
  PolyE gen_;
};

Ideal idealSum(const Ideal& a, const Ideal& b);
Ideal idealProduct(const Ideal& a, const Ideal& b);
Ideal idealIntersect(const Ideal& a, const Ideal& b);
// (a : b) = { r : r*b contained in a }
Ideal idealColon(const Ideal& a, const Ideal& b);

// Every ideal of a finite ring, sorted by canonical key.
std::vector<Ideal> allIdeals(const FiniteRingPtr& R);
// Prime ideals: all of them for a finite ring; for polynomial kinds the
// zero ideal plus (p) for monic irreducible p of degree <= degBound.
std::vector<Ideal> primeIdeals(const RingPtr& R, int degBound = 0);

// R/I as a finite ring in canonical coordinates, with the residue map.
std::pair<FiniteRingPtr, RingHom> quotientRing(const FiniteRingPtr& R, const Ideal& I);

// The unique primitive idempotent cutting out the local factor at a prime.
Vec primitiveIdempotentOutside(const FiniteRingPtr& R, const Ideal& P);

// Localization of a finite ring at a prime: a finite ring splits as a
// product of local rings along its primitive idempotents, and exactly one
// factor survives at each prime.
std::pair<FiniteRingPtr, RingHom> localizeAtPrime(const FiniteRingPtr& R, const Ideal& P);

}  // namespace qspec
