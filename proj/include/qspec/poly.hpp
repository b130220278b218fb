#pragma once

#include "qspec/ring.hpp"

namespace qspec {

class PolyRing;
class LocalizedPolyRing;
using PolyRingPtr = std::shared_ptr<const PolyRing>;
using LocRingPtr = std::shared_ptr<const LocalizedPolyRing>;

// Univariate polynomial ring over a finite field: the principal-ideal kind.
class PolyRing final : public Ring, public std::enable_shared_from_this<PolyRing> {
public:
  static PolyRingPtr make(FiniteRingPtr coeffField, std::string var = "t");

  const FiniteRingPtr& coeff() const { return coeff_; }
  const std::string& var() const { return var_; }

  PolyE pZero() const { return {}; }
  PolyE pOne() const;
  PolyE pVar() const;
  PolyE pConst(const Vec& c) const;
  PolyE normalize(std::vector<Vec> coeffs) const;
  int deg(const PolyE& a) const { return (int)a.c.size() - 1; }
  Vec leadCoeff(const PolyE& a) const;

  PolyE pAdd(const PolyE&, const PolyE&) const;
  PolyE pNeg(const PolyE&) const;
  PolyE pSub(const PolyE& a, const PolyE& b) const { return pAdd(a, pNeg(b)); }
  PolyE pMul(const PolyE&, const PolyE&) const;
  PolyE pScale(const Vec& c, const PolyE&) const;
  PolyE pPow(const PolyE&, u64) const;
  void pDivMod(const PolyE& a, const PolyE& b, PolyE& q, PolyE& r) const;
  PolyE pMod(const PolyE& a, const PolyE& b) const;
  PolyE pDiv(const PolyE& a, const PolyE& b) const;
  bool divides(const PolyE& d, const PolyE& a) const;
  PolyE pGcd(PolyE a, PolyE b) const;  // monic (or zero)
  PolyE pMonic(const PolyE&) const;
  Vec evalV(const PolyE&, const Vec& x) const;

  bool irreducible(const PolyE&) const;
  // monic irreducible factors with multiplicities, by trial division
  std::vector<std::pair<PolyE, int>> factor(PolyE f) const;
  std::vector<PolyE> monicOfDegree(int d) const;
  std::vector<PolyE> monicIrreducibles(int maxDeg) const;
  std::vector<PolyE> polysOfDegreeLess(int d) const;

  std::string showP(const PolyE&) const;

  Elem zero() const override { return pZero(); }
  Elem one() const override { return pOne(); }
  Elem add(const Elem& a, const Elem& b) const override;
  Elem neg(const Elem& a) const override;
  Elem mul(const Elem& a, const Elem& b) const override;
  bool eq(const Elem& a, const Elem& b) const override;
  std::string show(const Elem& a) const override;

private:
  PolyRing(FiniteRingPtr coeffField, std::string var);
  FiniteRingPtr coeff_;
  std::string var_;
};

// Localization of a PolyRing at one monic element f: elements num / f^k with
// f not dividing num (so representatives are unique).
class LocalizedPolyRing final : public Ring,
                                public std::enable_shared_from_this<LocalizedPolyRing> {
public:
  static LocRingPtr make(PolyRingPtr base, PolyE invertedMonic);

  const PolyRingPtr& base() const { return base_; }
  const PolyE& inverted() const { return f_; }

  LocE lmake(PolyE num, i64 k) const;  // canonicalize
  LocE fromPoly(const PolyE& p) const { return lmake(p, 0); }
  LocE lAdd(const LocE&, const LocE&) const;
  LocE lNeg(const LocE&) const;
  LocE lMul(const LocE&, const LocE&) const;
  bool isUnitL(const LocE&) const;
  std::optional<LocE> invL(const LocE&) const;
  // monic-times-unit normalized generator of the ideal (g)
  PolyE idealGen(const LocE&) const;

  std::string showL(const LocE&) const;

  Elem zero() const override { return LocE{{}, 0}; }
  Elem one() const override;
  Elem add(const Elem& a, const Elem& b) const override;
  Elem neg(const Elem& a) const override;
  Elem mul(const Elem& a, const Elem& b) const override;
  bool eq(const Elem& a, const Elem& b) const override;
  std::string show(const Elem& a) const override;

private:
  LocalizedPolyRing(PolyRingPtr base, PolyE f);
  PolyRingPtr base_;
  PolyE f_;
};

// t |-> imageOfVar, coefficients mapped identically. src must be a PolyRing
// or LocalizedPolyRing; dst any ring containing the image (same coeff field).
RingHom substitutionHom(RingPtr src, RingPtr dst, Elem imageOfVar, std::string name = "subst");

const PolyE& pe(const Elem& e);
const LocE& le(const Elem& e);

}  // namespace qspec
