#include "qspec/poly.hpp"

#include <sstream>

namespace qspec {

const PolyE& pe(const Elem& e) { return std::get<PolyE>(e); }
const LocE& le(const Elem& e) { return std::get<LocE>(e); }

PolyRing::PolyRing(FiniteRingPtr coeffField, std::string var)
    : Ring(Kind::Poly, "poly:" + coeffField->key() + ":" + var),
      coeff_(std::move(coeffField)),
      var_(std::move(var)) {
  if (!coeff_->isField()) fail("BadModulus", "polynomial coefficients must form a field");
  domain_ = true;
  pid_ = true;
}

PolyRingPtr PolyRing::make(FiniteRingPtr coeffField, std::string var) {
  return PolyRingPtr(new PolyRing(std::move(coeffField), std::move(var)));
}

PolyE PolyRing::pOne() const { return {{coeff_->oneV()}}; }

PolyE PolyRing::pVar() const { return {{coeff_->zeroV(), coeff_->oneV()}}; }

PolyE PolyRing::pConst(const Vec& c) const {
  if (isZeroVec(c)) return {};
  return {{c}};
}

PolyE PolyRing::normalize(std::vector<Vec> coeffs) const {
  while (!coeffs.empty() && isZeroVec(coeffs.back())) coeffs.pop_back();
  return {std::move(coeffs)};
}

Vec PolyRing::leadCoeff(const PolyE& a) const {
  return a.c.empty() ? coeff_->zeroV() : a.c.back();
}

PolyE PolyRing::pAdd(const PolyE& a, const PolyE& b) const {
  std::vector<Vec> c(std::max(a.c.size(), b.c.size()), coeff_->zeroV());
  for (size_t i = 0; i < a.c.size(); ++i) c[i] = a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) c[i] = coeff_->addV(c[i], b.c[i]);
  return normalize(std::move(c));
}

PolyE PolyRing::pNeg(const PolyE& a) const {
  PolyE r = a;
  for (auto& x : r.c) x = coeff_->negV(x);
  return r;
}

PolyE PolyRing::pMul(const PolyE& a, const PolyE& b) const {
  if (a.c.empty() || b.c.empty()) return {};
  std::vector<Vec> c(a.c.size() + b.c.size() - 1, coeff_->zeroV());
  for (size_t i = 0; i < a.c.size(); ++i)
    for (size_t j = 0; j < b.c.size(); ++j)
      c[i + j] = coeff_->addV(c[i + j], coeff_->mulV(a.c[i], b.c[j]));
  return normalize(std::move(c));
}

PolyE PolyRing::pScale(const Vec& s, const PolyE& a) const {
  std::vector<Vec> c(a.c.size());
  for (size_t i = 0; i < a.c.size(); ++i) c[i] = coeff_->mulV(s, a.c[i]);
  return normalize(std::move(c));
}

PolyE PolyRing::pPow(const PolyE& a, u64 e) const {
  PolyE r = pOne(), base = a;
  while (e) {
    if (e & 1) r = pMul(r, base);
    base = pMul(base, base);
    e >>= 1;
  }
  return r;
}

void PolyRing::pDivMod(const PolyE& a, const PolyE& b, PolyE& q, PolyE& r) const {
  if (b.c.empty()) fail("BadModulus", "polynomial division by zero");
  Vec leadInv = *coeff_->inverseV(b.c.back());
  std::vector<Vec> rem = a.c;
  std::vector<Vec> quot;
  if (a.c.size() >= b.c.size()) quot.assign(a.c.size() - b.c.size() + 1, coeff_->zeroV());
  while (rem.size() >= b.c.size() && !rem.empty()) {
    while (!rem.empty() && isZeroVec(rem.back())) rem.pop_back();
    if (rem.size() < b.c.size()) break;
    Vec f = coeff_->mulV(rem.back(), leadInv);
    size_t shift = rem.size() - b.c.size();
    quot[shift] = coeff_->addV(quot[shift], f);
    for (size_t i = 0; i < b.c.size(); ++i)
      rem[i + shift] = coeff_->addV(rem[i + shift], coeff_->negV(coeff_->mulV(f, b.c[i])));
  }
  q = normalize(std::move(quot));
  r = normalize(std::move(rem));
}

PolyE PolyRing::pMod(const PolyE& a, const PolyE& b) const {
  PolyE q, r;
  pDivMod(a, b, q, r);
  return r;
}

PolyE PolyRing::pDiv(const PolyE& a, const PolyE& b) const {
  PolyE q, r;
  pDivMod(a, b, q, r);
  return q;
}

bool PolyRing::divides(const PolyE& d, const PolyE& a) const {
  if (d.c.empty()) return a.c.empty();
  return pMod(a, d).c.empty();
}

PolyE PolyRing::pGcd(PolyE a, PolyE b) const {
  while (!b.c.empty()) {
    PolyE r = pMod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return pMonic(a);
}

PolyE PolyRing::pMonic(const PolyE& a) const {
  if (a.c.empty()) return a;
  return pScale(*coeff_->inverseV(a.c.back()), a);
}

Vec PolyRing::evalV(const PolyE& a, const Vec& x) const {
  Vec r = coeff_->zeroV();
  for (size_t i = a.c.size(); i-- > 0;) r = coeff_->addV(coeff_->mulV(r, x), a.c[i]);
  return r;
}

std::vector<PolyE> PolyRing::monicOfDegree(int d) const {
  std::vector<PolyE> res;
  u64 q = coeff_->size();
  u64 total = 1;
  for (int i = 0; i < d; ++i) total *= q;
  for (u64 idx = 0; idx < total; ++idx) {
    std::vector<Vec> c(d + 1, coeff_->zeroV());
    u64 t = idx;
    for (int i = 0; i < d; ++i) {
      c[i] = coeff_->elemAt(t % q);
      t /= q;
    }
    c[d] = coeff_->oneV();
    res.push_back(normalize(std::move(c)));
  }
  return res;
}

bool PolyRing::irreducible(const PolyE& f) const {
  int d = deg(f);
  if (d <= 0) return false;
  for (int e = 1; 2 * e <= d; ++e)
    for (const PolyE& g : monicOfDegree(e))
      if (divides(g, f)) return false;
  return true;
}

std::vector<PolyE> PolyRing::monicIrreducibles(int maxDeg) const {
  std::vector<PolyE> res;
  for (int d = 1; d <= maxDeg; ++d)
    for (PolyE& g : monicOfDegree(d))
      if (irreducible(g)) res.push_back(std::move(g));
  return res;
}

std::vector<PolyE> PolyRing::polysOfDegreeLess(int d) const {
  std::vector<PolyE> res;
  u64 q = coeff_->size();
  u64 total = 1;
  for (int i = 0; i < d; ++i) total *= q;
  for (u64 idx = 0; idx < total; ++idx) {
    std::vector<Vec> c(d, coeff_->zeroV());
    u64 t = idx;
    for (int i = 0; i < d; ++i) {
      c[i] = coeff_->elemAt(t % q);
      t /= q;
    }
    res.push_back(normalize(std::move(c)));
  }
  return res;
}

std::vector<std::pair<PolyE, int>> PolyRing::factor(PolyE f) const {
  std::vector<std::pair<PolyE, int>> res;
  if (deg(f) < 1) return res;
  f = pMonic(f);
  for (int d = 1; deg(f) >= 1 && d <= deg(f); ++d) {
    for (const PolyE& g : monicOfDegree(d)) {
      if (deg(f) < d) break;
      if (!divides(g, f)) continue;
      // g is irreducible: any factor of smaller degree was removed already
      int e = 0;
      while (divides(g, f)) {
        f = pDiv(f, g);
        ++e;
      }
      res.emplace_back(g, e);
    }
  }
  return res;
}

std::string PolyRing::showP(const PolyE& a) const {
  if (a.c.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = a.c.size(); i-- > 0;) {
    if (isZeroVec(a.c[i])) continue;
    if (!first) os << "+";
    first = false;
    bool one = a.c[i] == coeff_->oneV();
    if (i == 0 || !one) os << coeff_->showV(a.c[i]);
    if (i >= 1) {
      if (!one) os << "*";
      os << var_;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

Elem PolyRing::add(const Elem& a, const Elem& b) const { return pAdd(pe(a), pe(b)); }
Elem PolyRing::neg(const Elem& a) const { return pNeg(pe(a)); }
Elem PolyRing::mul(const Elem& a, const Elem& b) const { return pMul(pe(a), pe(b)); }
bool PolyRing::eq(const Elem& a, const Elem& b) const { return pe(a) == pe(b); }
std::string PolyRing::show(const Elem& a) const { return showP(pe(a)); }

LocalizedPolyRing::LocalizedPolyRing(PolyRingPtr base, PolyE f)
    : Ring(Kind::Localized, "loc(" + base->key() + ";" + base->showP(f) + ")"),
      base_(std::move(base)),
      f_(std::move(f)) {
  if (base_->deg(f_) < 1) fail("BadModulus", "inverted element must be nonconstant");
  f_ = base_->pMonic(f_);
  domain_ = true;
  pid_ = true;
}

LocRingPtr LocalizedPolyRing::make(PolyRingPtr base, PolyE invertedMonic) {
  return LocRingPtr(new LocalizedPolyRing(std::move(base), std::move(invertedMonic)));
}

LocE LocalizedPolyRing::lmake(PolyE num, i64 k) const {
  if (num.c.empty()) return {{}, 0};
  while (base_->divides(f_, num)) {
    num = base_->pDiv(num, f_);
    --k;
  }
  return {std::move(num), k};
}

LocE LocalizedPolyRing::lAdd(const LocE& a, const LocE& b) const {
  if (a.num.c.empty()) return b;
  if (b.num.c.empty()) return a;
  i64 K = std::max(a.k, b.k);
  PolyE na = base_->pMul(a.num, base_->pPow(f_, (u64)(K - a.k)));
  PolyE nb = base_->pMul(b.num, base_->pPow(f_, (u64)(K - b.k)));
  return lmake(base_->pAdd(na, nb), K);
}

LocE LocalizedPolyRing::lNeg(const LocE& a) const { return {base_->pNeg(a.num), a.k}; }

LocE LocalizedPolyRing::lMul(const LocE& a, const LocE& b) const {
  return lmake(base_->pMul(a.num, b.num), a.k + b.k);
}

bool LocalizedPolyRing::isUnitL(const LocE& a) const { return base_->deg(a.num) == 0; }

std::optional<LocE> LocalizedPolyRing::invL(const LocE& a) const {
  if (!isUnitL(a)) return std::nullopt;
  Vec cinv = *base_->coeff()->inverseV(a.num.c[0]);
  return LocE{base_->pConst(cinv), -a.k};
}

PolyE LocalizedPolyRing::idealGen(const LocE& a) const {
  PolyE g = a.num;
  for (;;) {
    PolyE d = base_->pGcd(g, f_);
    if (base_->deg(d) < 1) break;
    g = base_->pDiv(g, d);
  }
  return base_->pMonic(g);
}

std::string LocalizedPolyRing::showL(const LocE& a) const {
  std::ostringstream os;
  os << "(" << base_->showP(a.num) << ")";
  if (a.k != 0) os << "/(" << base_->showP(f_) << ")^" << a.k;
  return os.str();
}

Elem LocalizedPolyRing::one() const { return LocE{base_->pOne(), 0}; }
Elem LocalizedPolyRing::add(const Elem& a, const Elem& b) const { return lAdd(le(a), le(b)); }
Elem LocalizedPolyRing::neg(const Elem& a) const { return lNeg(le(a)); }
Elem LocalizedPolyRing::mul(const Elem& a, const Elem& b) const { return lMul(le(a), le(b)); }
bool LocalizedPolyRing::eq(const Elem& a, const Elem& b) const { return le(a) == le(b); }
std::string LocalizedPolyRing::show(const Elem& a) const { return showL(le(a)); }

RingHom substitutionHom(RingPtr src, RingPtr dst, Elem imageOfVar, std::string name) {
  auto evalPoly = [dst](const PolyE& p, const Elem& u, const FiniteRingPtr& cf) {
    Elem r = dst->zero();
    for (size_t i = p.c.size(); i-- > 0;) {
      Elem ci;
      if (dst->kind() == Ring::Kind::Poly)
        ci = std::static_pointer_cast<const PolyRing>(dst)->pConst(p.c[i]);
      else if (dst->kind() == Ring::Kind::Localized)
        ci = std::static_pointer_cast<const LocalizedPolyRing>(dst)->fromPoly(
            std::static_pointer_cast<const LocalizedPolyRing>(dst)->base()->pConst(p.c[i]));
      else
        ci = p.c[i];
      (void)cf;
      r = dst->add(dst->mul(r, u), ci);
    }
    return r;
  };
  std::function<Elem(const Elem&)> map;
  if (src->kind() == Ring::Kind::Poly) {
    auto pr = std::static_pointer_cast<const PolyRing>(src);
    map = [=](const Elem& x) { return evalPoly(pe(x), imageOfVar, pr->coeff()); };
  } else if (src->kind() == Ring::Kind::Localized) {
    auto lr = std::static_pointer_cast<const LocalizedPolyRing>(src);
    map = [=](const Elem& x) -> Elem {
      const LocE& a = le(x);
      Elem numImg = evalPoly(a.num, imageOfVar, lr->base()->coeff());
      Elem fImg = evalPoly(lr->inverted(), imageOfVar, lr->base()->coeff());
      // multiply by fImg^(-k)
      Elem r = numImg;
      i64 k = a.k;
      Elem factor = fImg;
      if (k > 0) {
        // need the inverse of fImg in dst
        if (dst->kind() != Ring::Kind::Localized)
          fail("BadGluing", "inverted element has no inverse in the target ring");
        auto ld = std::static_pointer_cast<const LocalizedPolyRing>(dst);
        auto inv = ld->invL(le(fImg));
        if (!inv) fail("BadGluing", "image of inverted element is not a unit");
        factor = *inv;
      } else {
        k = -k;
      }
      for (i64 i = 0; i < k; ++i) r = dst->mul(r, factor);
      return r;
    };
  } else {
    fail("BadGluing", "substitution source must be polynomial");
  }
  return RingHom{src, dst, std::move(map), std::move(name)};
}

}  // namespace qspec
