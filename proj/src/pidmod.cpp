#include "qspec/pidmod.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace qspec {

namespace {

PolyRingPtr baseOf(const RingPtr& R) {
  if (R->kind() == Ring::Kind::Poly) return std::static_pointer_cast<const PolyRing>(R);
  if (R->kind() == Ring::Kind::Localized)
    return std::static_pointer_cast<const LocalizedPolyRing>(R)->base();
  fail("NotPid", "module requires a polynomial or localized polynomial ring");
}

// Strip the factors that became units after localization.
PolyE stripUnits(const RingPtr& R, PolyE g) {
  if (R->kind() != Ring::Kind::Localized) return g;
  auto L = std::static_pointer_cast<const LocalizedPolyRing>(R);
  return L->idealGen(LocE{std::move(g), 0});
}

// Rebuild a divisibility chain from the multiset of prime powers.
std::vector<PolyE> chainFromFactors(const PolyRingPtr& P,
                                    const std::vector<std::pair<PolyE, int>>& parts) {
  std::map<std::string, std::pair<PolyE, std::vector<int>>> byPrime;
  for (const auto& [p, e] : parts) byPrime[P->showP(p)].second.push_back(e), byPrime[P->showP(p)].first = p;
  size_t count = 0;
  for (auto& [k, v] : byPrime) {
    std::sort(v.second.rbegin(), v.second.rend());
    count = std::max(count, v.second.size());
  }
  std::vector<PolyE> chain(count, P->pOne());
  for (auto& [k, v] : byPrime)
    for (size_t i = 0; i < v.second.size(); ++i)
      chain[i] = P->pMul(chain[i], P->pPow(v.first, (u64)v.second[i]));
  std::reverse(chain.begin(), chain.end());  // ascending divisibility
  return chain;
}

}  // namespace

std::vector<PolyE> polySmithDiag(const PolyRingPtr& P, std::vector<std::vector<PolyE>> A) {
  std::vector<PolyE> d;
  size_t r = A.size(), c = r ? A[0].size() : 0;
  for (size_t t = 0; t < std::min(r, c); ++t) {
    for (;;) {
      // locate a minimal-degree nonzero entry in the working submatrix
      int bi = -1, bj = -1, bd = -1;
      for (size_t i = t; i < r; ++i)
        for (size_t j = t; j < c; ++j)
          if (!A[i][j].c.empty() && (bd < 0 || P->deg(A[i][j]) < bd)) {
            bi = (int)i;
            bj = (int)j;
            bd = P->deg(A[i][j]);
          }
      if (bd < 0) { bi = -1; break; }
      std::swap(A[t], A[(size_t)bi]);
      for (size_t i = t; i < r; ++i) std::swap(A[i][t], A[i][(size_t)bj]);
      // reduce column and row t against the pivot
      bool again = false;
      for (size_t i = t + 1; i < r; ++i)
        if (!A[i][t].c.empty()) {
          PolyE q = P->pDiv(A[i][t], A[t][t]);
          for (size_t j = t; j < c; ++j) A[i][j] = P->pSub(A[i][j], P->pMul(q, A[t][j]));
          if (!A[i][t].c.empty()) again = true;
        }
      for (size_t j = t + 1; j < c; ++j)
        if (!A[t][j].c.empty()) {
          PolyE q = P->pDiv(A[t][j], A[t][t]);
          for (size_t i = t; i < r; ++i) A[i][j] = P->pSub(A[i][j], P->pMul(q, A[i][t]));
          if (!A[t][j].c.empty()) again = true;
        }
      if (again) continue;
      // pivot must divide the remaining submatrix
      bool fixed = false;
      for (size_t i = t + 1; i < r && !fixed; ++i)
        for (size_t j = t + 1; j < c && !fixed; ++j)
          if (!P->divides(A[t][t], A[i][j])) {
            for (size_t j2 = t; j2 < c; ++j2) A[t][j2] = P->pAdd(A[t][j2], A[i][j2]);
            fixed = true;
          }
      if (!fixed) break;
    }
    if (A[t][t].c.empty()) break;  // the rest of the matrix is zero
    d.push_back(P->pMonic(A[t][t]));
  }
  return d;
}

PidMod::PidMod(RingPtr R, int rank, std::vector<PolyE> inv)
    : ring_(std::move(R)), base_(baseOf(ring_)), rank_(rank), inv_(std::move(inv)) {
  if (rank_ < 0) fail("BadModulus", "negative rank");
  std::vector<std::pair<PolyE, int>> parts;
  for (PolyE& g : inv_) {
    if (g.c.empty()) fail("BadModulus", "zero invariant factor");
    g = stripUnits(ring_, base_->pMonic(g));
    for (auto& pr : base_->factor(g)) parts.push_back(pr);
  }
  inv_ = chainFromFactors(base_, parts);
}

PidModPtr PidMod::make(RingPtr R, int rank, std::vector<PolyE> invariantFactors) {
  return PidModPtr(new PidMod(std::move(R), rank, std::move(invariantFactors)));
}

PidModPtr PidMod::freeModule(RingPtr R, int n) { return make(std::move(R), n, {}); }

PidModPtr PidMod::cyclic(const RingPtr& R, const Ideal& I) {
  if (I.ring()->key() != R->key()) fail("MixedRings", "ideal belongs to a different ring");
  if (I.isUnitIdeal()) return make(R, 0, {});
  if (I.isZeroIdeal()) return make(R, 1, {});
  return make(R, 0, {I.gen()});
}

PidModPtr PidMod::fromMatrix(RingPtr R, int gens,
                             const std::vector<std::vector<Elem>>& rel) {
  PolyRingPtr P = baseOf(R);
  std::vector<std::vector<PolyE>> A;
  for (const auto& row : rel) {
    if ((int)row.size() != gens) fail("BadModulus", "relation arity mismatch");
    std::vector<PolyE> prow;
    if (R->kind() == Ring::Kind::Poly) {
      for (const Elem& x : row) prow.push_back(pe(x));
    } else {
      // clear denominators: multiply the row by a power of the inverted
      // element, a unit
      i64 kmax = 0;
      for (const Elem& x : row) kmax = std::max(kmax, le(x).k);
      auto L = std::static_pointer_cast<const LocalizedPolyRing>(R);
      for (const Elem& x : row)
        prow.push_back(P->pMul(le(x).num, P->pPow(L->inverted(), (u64)(kmax - le(x).k))));
    }
    A.push_back(std::move(prow));
  }
  std::vector<PolyE> d = polySmithDiag(P, std::move(A));
  int rank = gens - (int)d.size();
  std::vector<PolyE> inv;
  for (PolyE& g : d) {
    PolyE s = stripUnits(R, std::move(g));
    if (P->deg(s) >= 1) inv.push_back(std::move(s));
  }
  return make(std::move(R), rank, std::move(inv));
}

int PidMod::torsionDegree() const {
  int n = 0;
  for (const PolyE& g : inv_) n += base_->deg(g);
  return n;
}

std::string PidMod::show() const {
  std::ostringstream os;
  bool first = true;
  if (rank_) {
    os << "R^" << rank_;
    first = false;
  }
  for (const PolyE& g : inv_) {
    if (!first) os << "+";
    first = false;
    os << "R/(" << base_->showP(g) << ")";
  }
  if (first) os << "0";
  return os.str();
}

std::string PidMod::key() const { return ring_->key() + "|" + std::to_string(rank_) + "|" + show(); }

bool pidIsomorphic(const PidModPtr& a, const PidModPtr& b) {
  return a->ring()->key() == b->ring()->key() && a->rank() == b->rank() &&
         a->invariantFactors() == b->invariantFactors();
}

PidModPtr pidDirectSum(const PidModPtr& a, const PidModPtr& b) {
  if (a->ring()->key() != b->ring()->key()) fail("MixedRings", "direct sum across rings");
  std::vector<PolyE> inv = a->invariantFactors();
  for (const PolyE& g : b->invariantFactors()) inv.push_back(g);
  return PidMod::make(a->ring(), a->rank() + b->rank(), std::move(inv));
}

PidModPtr pidDirectPower(const PidModPtr& a, int n) {
  std::vector<PolyE> inv;
  for (int i = 0; i < n; ++i)
    for (const PolyE& g : a->invariantFactors()) inv.push_back(g);
  return PidMod::make(a->ring(), a->rank() * n, std::move(inv));
}

Ideal pidAnnihilator(const PidModPtr& M) {
  if (M->rank() > 0) return Ideal::zeroIdeal(M->ring());
  if (M->invariantFactors().empty()) return Ideal::unitIdeal(M->ring());
  const PolyE& g = M->invariantFactors().back();
  Elem e = M->ring()->kind() == Ring::Kind::Poly ? Elem(g) : Elem(LocE{g, 0});
  return Ideal::principal(M->ring(), e);
}

bool pidInSupport(const PidModPtr& M, const Ideal& P) {
  if (!P.isPrime()) fail("NotPrime", "support test requires a prime");
  if (M->rank() > 0) return true;  // the free part survives everywhere
  if (P.isZeroIdeal()) return false;  // a torsion module dies at the generic point
  if (M->invariantFactors().empty()) return false;
  return M->basePoly()->divides(P.gen(), M->invariantFactors().back());
}

int pidMaxExponent(const PidModPtr& M, const PolyE& p) {
  int e = 0;
  if (M->invariantFactors().empty()) return 0;
  PolyE g = M->invariantFactors().back();
  auto P = M->basePoly();
  while (P->divides(p, g)) {
    g = P->pDiv(g, p);
    ++e;
  }
  return e;
}

bool pidGenerates(const PidModPtr& M, const std::vector<PidElem>& elems) {
  auto P = M->basePoly();
  size_t cols = M->invariantFactors().size() + (size_t)M->rank();
  std::vector<std::vector<PolyE>> A;
  for (const PidElem& e : elems) {
    if (e.size() != cols) fail("BadModulus", "element arity mismatch");
    A.push_back(e);
  }
  for (size_t i = 0; i < M->invariantFactors().size(); ++i) {
    std::vector<PolyE> row(cols);
    row[i] = M->invariantFactors()[i];
    A.push_back(std::move(row));
  }
  std::vector<PolyE> d = polySmithDiag(P, std::move(A));
  if (d.size() < cols) return false;
  // surjective exactly when every diagonal entry is a unit of the ring
  for (const PolyE& g : d)
    if (P->deg(stripUnits(M->ring(), g)) != 0) return false;
  return true;
}

}  // namespace qspec
