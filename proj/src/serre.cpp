#include "qspec/serre.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "qspec/config.hpp"

namespace qspec {

namespace {

// Express an ambient element through the basis of a realized submodule.
Vec coordsIn(const FinModPtr& A, const ModHom& incl, const Vec& y) {
  Vec a;
  if (!solveCongruence(incl.T, A->orders(), incl.dst->orders(), y, a))
    fail("MismatchBug", "element is not in the realized submodule");
  return vecModRed(a, A->orders());
}

}  // namespace

bool ThickSubcat::containsMod(const FinModPtr& M) const {
  return (supportSet(primes, M) & open) == 0;
}

ThickSubcat thickOfOpen(const FiniteRingPtr& R, Closed open) {
  return ThickSubcat{R, primeIdeals(R), open};
}

Submodule largestSubInT(const ThickSubcat& T, const FinModPtr& N) {
  Mat rows;
  for (const Submodule& S : allSubmodules(N)) {
    if (!T.containsMod(subAsModule(S).first)) continue;
    for (const Vec& r : S.hnf) rows.push_back(r);
  }
  return Submodule{N, subgroupBasis(std::move(rows), N->orders())};
}

Submodule smallestSubWithQuotInT(const ThickSubcat& T, const FinModPtr& M) {
  Mat cur = Submodule::fullSub(M).hnf;
  for (const Submodule& K : allSubmodules(M)) {
    if (!T.containsMod(quotientMod(K).first)) continue;
    cur = subgroupIntersect(cur, K.hnf, M->orders());
  }
  std::vector<Vec> rows(cur.begin(), cur.end());
  return Submodule::span(M, rows);
}

namespace {

struct QuotFrame {
  FinModPtr X;
  ModHom xIncl;
  FinModPtr Q;
  ModHom qProj;
};

QuotFrame frameFor(const ThickSubcat& T, const FinModPtr& M, const FinModPtr& N) {
  auto [X, incl] = subAsModule(smallestSubWithQuotInT(T, M));
  auto [Q, proj] = quotientMod(largestSubInT(T, N));
  return QuotFrame{X, incl, Q, proj};
}

}  // namespace

u64 quotHomCount(const ThickSubcat& T, const FinModPtr& M, const FinModPtr& N) {
  QuotFrame fr = frameFor(T, M, N);
  return homCount(fr.X, fr.Q);
}

std::vector<QuotHom> allQuotHoms(const ThickSubcat& T, const FinModPtr& M, const FinModPtr& N,
                                 u64 cap) {
  QuotFrame fr = frameFor(T, M, N);
  std::vector<QuotHom> out;
  for (ModHom& h : allHoms(fr.X, fr.Q, cap))
    out.push_back(QuotHom{M, N, fr.X, fr.xIncl, fr.Q, fr.qProj, std::move(h)});
  return out;
}

QuotHom inducedQuot(const ThickSubcat& T, const ModHom& h) {
  QuotFrame fr = frameFor(T, h.src, h.dst);
  Mat rows;
  for (const Vec& rep : fr.xIncl.T) rows.push_back(fr.qProj.apply(h.apply(rep)));
  return QuotHom{h.src, h.dst, fr.X, fr.xIncl, fr.Q, fr.qProj, ModHom{fr.X, fr.Q, rows}};
}

QuotHom composeQuot(const ThickSubcat& T, const QuotHom& a, const QuotHom& b) {
  if (a.N->key() != b.M->key()) fail("MixedRings", "quotient composition endpoint mismatch");
  const FinModPtr& N = a.N;
  Submodule Nt = largestSubInT(T, N);
  Mat stacked = b.xIncl.T;
  for (const Vec& r : Nt.hnf) stacked.push_back(r);
  i64 big = 1;
  for (i64 s : N->orders()) big = std::lcm(big, s);
  Vec min(stacked.size(), big);
  Mat rows;
  for (const Vec& xrep : a.xIncl.T) {
    // value of a at this basis vector, lifted back to N
    Vec y = a.f.apply(coordsIn(a.X, a.xIncl, xrep));
    Vec n;
    if (!solveCongruence(a.qProj.T, N->orders(), a.Q->orders(), y, n))
      fail("MismatchBug", "quotient projection is not surjective");
    // split the lift across the canonical domain of b and the torsion part
    Vec c;
    if (!solveCongruence(stacked, min, N->orders(), vecModRed(n, N->orders()), c))
      fail("MismatchBug", "lift escapes the canonical domain plus torsion");
    Vec xb(c.begin(), c.begin() + b.X->dim());
    rows.push_back(b.X->dim() ? b.f.apply(vecModRed(xb, b.X->orders()))
                              : Vec(b.Q->dim(), 0));
  }
  QuotHom out{a.M, b.N, a.X, a.xIncl, b.Q, b.qProj, ModHom{a.X, b.Q, rows}};
  if (!out.f.wellDefined()) fail("MismatchBug", "composite is not a module map");
  return out;
}

bool quotIsIso(const ThickSubcat& T, const QuotHom& h) {
  if (!T.containsMod(subAsModule(kernelOf(h.f)).first)) return false;
  return T.containsMod(quotientMod(imageOf(h.f)).first);
}

bool quotIsomorphic(const ThickSubcat& T, const FinModPtr& M, const FinModPtr& N) {
  for (const QuotHom& h : allQuotHoms(T, M, N, caps().elementCap))
    if (quotIsIso(T, h)) return true;
  return false;
}

CenterResult centerOfCategory(const FiniteRingPtr& R, const std::vector<FinModPtr>& probes) {
  // flattened unknowns: one endomorphism matrix per probe
  std::vector<int> offset;
  int vars = 0;
  for (const auto& P : probes) {
    offset.push_back(vars);
    vars += P->dim() * P->dim();
  }
  Vec min(vars);
  for (size_t i = 0; i < probes.size(); ++i)
    for (int a = 0; a < probes[i]->dim(); ++a)
      for (int b = 0; b < probes[i]->dim(); ++b)
        min[offset[i] + a * probes[i]->dim() + b] = probes[i]->orders()[b];
  Mat A(vars);
  Vec mout;
  auto addCol = [&](const std::map<int, i64>& coeffs, i64 modulus) {
    for (int v = 0; v < vars; ++v) A[v].push_back(0);
    for (auto& [v, c] : coeffs) A[v].back() = c;
    mout.push_back(modulus);
  };
  for (size_t i = 0; i < probes.size(); ++i) {
    const auto& P = probes[i];
    int m = P->dim();
    auto at = [&](int a, int b) { return offset[i] + a * m + b; };
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) addCol({{at(a, b), P->orders()[a]}}, P->orders()[b]);
    for (int r = 0; r < R->dim(); ++r)
      for (int a = 0; a < m; ++a)
        for (int c = 0; c < m; ++c) {
          std::map<int, i64> col;
          for (int b = 0; b < m; ++b) col[at(b, c)] += P->basisAction(r)[a][b];
          for (int b = 0; b < m; ++b) col[at(a, b)] -= P->basisAction(r)[b][c];
          addCol(col, P->orders()[c]);
        }
  }
  for (size_t i = 0; i < probes.size(); ++i)
    for (size_t j = 0; j < probes.size(); ++j)
      for (const ModHom& h : allHoms(probes[i], probes[j], caps().elementCap)) {
        int m = probes[i]->dim(), n = probes[j]->dim();
        for (int a = 0; a < m; ++a)
          for (int c = 0; c < n; ++c) {
            std::map<int, i64> col;
            for (int b = 0; b < m; ++b) col[offset[i] + a * m + b] += h.T[b][c];
            for (int b = 0; b < n; ++b) col[offset[j] + b * n + c] -= h.T[a][b];
            addCol(col, probes[j]->orders()[c]);
          }
      }
  Mat ker = kernelSubgroup(A, min, mout);
  CenterResult res{subgroupOrder(ker, min), Ideal::unitIdeal(R), false, false};
  for (const auto& P : probes) res.kernel = idealIntersect(res.kernel, annihilator(P));
  res.scalarOnly = true;
  for (const Vec& sol : subgroupElements(ker, min, caps().elementCap)) {
    bool matched = false;
    for (u64 r = 0; r < R->size() && !matched; ++r) {
      Vec rv = R->elemAt(r);
      bool all = true;
      for (size_t i = 0; i < probes.size() && all; ++i) {
        Mat want = probes[i]->actionMatrix(rv);
        int m = probes[i]->dim();
        for (int a = 0; a < m && all; ++a)
          for (int b = 0; b < m; ++b)
            if (sol[offset[i] + a * m + b] != want[a][b]) {
              all = false;
              break;
            }
      }
      matched = all;
    }
    if (!matched) res.scalarOnly = false;
  }
  res.canonicalIso =
      res.scalarOnly && res.count * res.kernel.order() == (u64)R->size();
  return res;
}

FiniteRingPtr sectionsRing(const FiniteRingPtr& R, Closed open, const PrimeList& primes) {
  std::vector<FiniteRingPtr> factors;
  for (size_t i = 0; i < primes.size(); ++i)
    if (open & (Closed(1) << i)) factors.push_back(localizeAtPrime(R, primes[i]).first);
  if (factors.empty()) return FiniteRing::table({}, {}, {}, "zero");
  if (factors.size() == 1) return factors[0];
  return FiniteRing::product(factors);
}

CenterResult centerOfQuotient(const FiniteRingPtr& R, Closed open) {
  ThickSubcat T = thickOfOpen(R, open);
  FinModPtr M = FinMod::freeModule(R, 1);
  QuotFrame fr = [&] {
    auto [X, incl] = subAsModule(smallestSubWithQuotInT(T, M));
    auto [Q, proj] = quotientMod(largestSubInT(T, M));
    return QuotFrame{X, incl, Q, proj};
  }();
  CenterResult res{homCount(fr.X, fr.Q), Ideal::unitIdeal(R), false, false};
  // kernel of the scalar map: r acts as zero from the domain to the quotient
  std::vector<Elem> kgens;
  for (u64 i = 0; i < R->size(); ++i) {
    Vec r = R->elemAt(i);
    bool zero = true;
    for (const Vec& rep : fr.xIncl.T)
      if (!isZeroVec(fr.qProj.apply(M->actV(r, rep)))) zero = false;
    if (zero) kgens.emplace_back(r);
  }
  res.kernel = Ideal::span(R, kgens);
  // compare against the product of local rings over the open set
  FiniteRingPtr sect = sectionsRing(R, open, T.primes);
  std::vector<RingHom> locs;
  for (size_t i = 0; i < T.primes.size(); ++i)
    if (open & (Closed(1) << i)) locs.push_back(localizeAtPrime(R, T.primes[i]).second);
  std::vector<Elem> k2;
  for (u64 i = 0; i < R->size(); ++i) {
    Vec r = R->elemAt(i);
    bool zero = true;
    for (const RingHom& h : locs)
      if (!isZeroVec(fv(h(Elem(r))))) zero = false;
    if (zero) k2.emplace_back(r);
  }
  bool kernelsMatch = res.kernel == Ideal::span(R, k2);
  u64 imageSize = R->size() / res.kernel.order();
  res.scalarOnly = res.count == imageSize;
  res.canonicalIso = kernelsMatch && res.scalarOnly && res.count == sect->size();
  return res;
}

StructurePresheaf structurePresheaf(const FiniteRingPtr& R) {
  StructurePresheaf sh;
  sh.R = R;
  Topology t = buildTopology(R);
  sh.primes = t.primes;
  Closed all = t.primes.empty() ? 0 : (Closed(1) << t.primes.size()) - 1;
  for (Closed c : t.closedSets) sh.opens.push_back(all & ~c);
  std::sort(sh.opens.begin(), sh.opens.end());
  for (Closed u : sh.opens) sh.sections.push_back(sectionsRing(R, u, sh.primes));
  return sh;
}

bool presheafMatchesCenters(const StructurePresheaf& sh) {
  for (size_t i = 0; i < sh.opens.size(); ++i) {
    CenterResult c = centerOfQuotient(sh.R, sh.opens[i]);
    if (!c.canonicalIso || c.count != sh.sections[i]->size()) return false;
  }
  return true;
}

namespace {

// Drop the coordinates of the factors outside the target mask.
Vec restrictSection(const FiniteRingPtr& ring, const Vec& v, Closed from, Closed to,
                    const FiniteRingPtr& R, const PrimeList& primes) {
  Vec out;
  size_t pos = 0;
  for (size_t i = 0; i < primes.size(); ++i) {
    if (!(from & (Closed(1) << i))) continue;
    size_t w = (size_t)localizeAtPrime(R, primes[i]).first->dim();
    if (to & (Closed(1) << i))
      for (size_t j = 0; j < w; ++j) out.push_back(v[pos + j]);
    pos += w;
  }
  (void)ring;
  return out;
}

}  // namespace

bool presheafGluing(const StructurePresheaf& sh) {
  auto find = [&](Closed u) -> const FiniteRingPtr& {
    for (size_t i = 0; i < sh.opens.size(); ++i)
      if (sh.opens[i] == u) return sh.sections[i];
    fail("MismatchBug", "union or intersection of opens is missing");
  };
  for (Closed u1 : sh.opens)
    for (Closed u2 : sh.opens) {
      Closed u = u1 | u2, w = u1 & u2;
      const FiniteRingPtr& S1 = find(u1);
      const FiniteRingPtr& S2 = find(u2);
      const FiniteRingPtr& SU = find(u);
      u64 agreeing = 0;
      for (u64 i = 0; i < S1->size(); ++i)
        for (u64 j = 0; j < S2->size(); ++j) {
          Vec a = S1->elemAt(i), b = S2->elemAt(j);
          if (restrictSection(S1, a, u1, w, sh.R, sh.primes) ==
              restrictSection(S2, b, u2, w, sh.R, sh.primes))
            ++agreeing;
        }
      if (agreeing != SU->size()) return false;
      // and every glued pair comes from exactly one section over the union
      for (u64 i = 0; i < SU->size(); ++i) {
        Vec s = SU->elemAt(i);
        Vec r1 = restrictSection(SU, s, u, u1, sh.R, sh.primes);
        Vec r2 = restrictSection(SU, s, u, u2, sh.R, sh.primes);
        if (restrictSection(S1, r1, u1, w, sh.R, sh.primes) !=
            restrictSection(S2, r2, u2, w, sh.R, sh.primes))
          return false;
      }
    }
  return true;
}

bool affineReconstruction(const FiniteRingPtr& R) {
  PrimeList primes = primeIdeals(R);
  Closed all = primes.empty() ? 0 : (Closed(1) << primes.size()) - 1;
  CenterResult c = centerOfQuotient(R, all);
  return c.canonicalIso && c.kernel.isZeroIdeal() && c.count == R->size();
}

}  // namespace qspec
