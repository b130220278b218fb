#include "qspec/spectrum.hpp"

#include <algorithm>

#include "qspec/config.hpp"

namespace qspec {

namespace {

Ideal submoduleAnnihilator(const FinModPtr& M, const Mat& hnf) {
  Ideal a = Ideal::unitIdeal(M->ring());
  for (const Vec& row : hnf)
    if (!isZeroVec(vecModRed(row, M->orders())))
      a = idealIntersect(a, annihilatorOfElement(M, row));
  return a;
}

// A small generating set, grown greedily.
std::vector<Vec> greedyGenerators(const FinModPtr& M) {
  std::vector<Vec> gens;
  Submodule cur = Submodule::zeroSub(M);
  while (cur.order() < M->size()) {
    u64 best = cur.order();
    Vec bestV;
    Submodule bestS = cur;
    for (u64 i = 0; i < M->size(); ++i) {
      Vec x = M->elemAt(i);
      if (cur.contains(x)) continue;
      std::vector<Vec> g = gens;
      g.push_back(x);
      Submodule s = Submodule::span(M, g);
      if (s.order() > best) {
        best = s.order();
        bestV = x;
        bestS = s;
      }
    }
    gens.push_back(bestV);
    cur = bestS;
  }
  return gens;
}

}  // namespace

PrecedesVerdict precedes(const FinModPtr& M, const FinModPtr& N) {
  if (M->ring()->key() != N->ring()->key()) fail("MixedRings", "comparison across rings");
  const FiniteRingPtr& R = M->ring();
  PrecedesVerdict v;
  if (M->size() == 1) {
    v.answer = PrecedesVerdict::Answer::Yes;
    v.witness = PrecedesWitness{{}, Ideal::unitIdeal(R), 0,
                                ModHom{FinMod::zeroModule(R), M, Mat{}}};
    v.note = "zero module";
    return v;
  }
  Ideal annN = annihilator(N);
  Ideal annM = annihilator(M);
  if (!annM.contains(annN)) {
    v.answer = PrecedesVerdict::Answer::No;
    PrecedesCertificate c;
    for (const Vec& r : annN.hnf())
      if (!annM.contains(Elem(r))) {
        c.killer = vecModRed(r, R->orders());
        break;
      }
    Mat A = M->actionMatrix(c.killer);
    for (int i = 0; i < M->dim(); ++i)
      if (!isZeroVec(vecModRed(A[i], M->orders()))) {
        c.moved = Vec(M->dim(), 0);
        c.moved[i] = 1;
        break;
      }
    v.certificate = std::move(c);
    v.note = "an element kills every copy of the target but moves the source";
    return v;
  }
  v.answer = PrecedesVerdict::Answer::Yes;
  PrecedesWitness w{{}, annN, 0, {}};
  for (int i = 0; i < N->dim(); ++i) {
    Vec e(N->dim(), 0);
    e[i] = 1;
    w.tuple.push_back(std::move(e));
  }
  w.jointAnn = annN;
  std::vector<Vec> gens = greedyGenerators(M);
  w.copies = (int)gens.size();
  try {
    FinModPtr C = FinMod::cyclic(R, annN);
    FinModPtr F = directPower(C, w.copies);
    QuotientGroup q = quotientGroup(annN.hnf(), R->orders());
    Mat T;
    for (const Vec& g : gens)
      for (const Vec& l : q.lift) T.push_back(M->actV(vecModRed(l, R->orders()), g));
    w.epi = ModHom{F, M, std::move(T)};
    if (!w.epi.wellDefined() || !imageOf(w.epi).isFull())
      fail("MismatchBug", "constructed witness map is not a surjection");
    v.witness = std::move(w);
  } catch (const Error& e) {
    if (e.code() != std::string("TooLarge")) throw;
    v.note = "witness module exceeds the element cap; verdict by annihilators";
  }
  return v;
}

bool replayPrecedes(const PrecedesVerdict& v, const FinModPtr& M, const FinModPtr& N) {
  const FiniteRingPtr& R = M->ring();
  if (v.answer == PrecedesVerdict::Answer::No) {
    if (!v.certificate) return false;
    const auto& c = *v.certificate;
    // the killer annihilates N...
    for (const Vec& row : N->actionMatrix(c.killer))
      if (!isZeroVec(vecModRed(row, N->orders()))) return false;
    // ...but moves something in M
    return !isZeroVec(M->actV(c.killer, c.moved));
  }
  if (v.answer != PrecedesVerdict::Answer::Yes || !v.witness) return false;
  const auto& w = *v.witness;
  if (M->size() == 1) return true;
  Ideal joint = Ideal::unitIdeal(R);
  for (const Vec& t : w.tuple) {
    if ((int)t.size() != N->dim()) return false;
    joint = idealIntersect(joint, annihilatorOfElement(N, t));
  }
  if (!(joint == w.jointAnn)) return false;
  FinModPtr F = directPower(FinMod::cyclic(R, w.jointAnn), w.copies);
  if (w.epi.src->key() != F->key() || w.epi.dst->key() != M->key()) return false;
  return w.epi.wellDefined() && imageOf(w.epi).isFull();
}

bool moduleEquivalent(const FinModPtr& M, const FinModPtr& N) {
  return precedes(M, N).yes() && precedes(N, M).yes();
}

bool isSpectral(const FinModPtr& M) {
  if (M->size() == 1) return false;
  Ideal annM = annihilator(M);
  for (const Submodule& S : allSubmodules(M)) {
    if (S.order() == 1) continue;
    if (!(submoduleAnnihilator(M, S.hnf) == annM)) return false;
  }
  return true;
}

std::vector<SpecPoint> specPoints(const FiniteRingPtr& R) {
  std::vector<SpecPoint> out;
  for (Ideal& p : primeIdeals(R)) {
    FinModPtr rep = FinMod::cyclic(R, p);
    if (!isSpectral(rep)) fail("MismatchBug", "residue module at a prime is not spectral");
    out.push_back(SpecPoint{std::move(p), std::move(rep)});
  }
  return out;
}

std::optional<SubquotientWitness> subquotientSearch(const FinModPtr& M, const FinModPtr& N) {
  for (const Submodule& S : allSubmodules(N)) {
    if (S.order() % M->size() != 0) continue;
    auto [A, incl] = subAsModule(S);
    for (const Submodule& K : allSubmodules(A)) {
      if (S.order() / K.order() != M->size()) continue;
      auto [Q, proj] = quotientMod(K);
      if (isomorphic(Q, M)) {
        Mat inner;
        for (const Vec& row : K.hnf) inner.push_back(incl.apply(row));
        return SubquotientWitness{S.hnf, subgroupBasis(std::move(inner), N->orders())};
      }
    }
  }
  return std::nullopt;
}

PidPrecedesVerdict precedesPid(const PidModPtr& M, const PidModPtr& N) {
  if (M->ring()->key() != N->ring()->key()) fail("MixedRings", "comparison across rings");
  auto P = M->basePoly();
  PidPrecedesVerdict v;
  if (M->isZero()) {
    v.answer = PrecedesVerdict::Answer::Yes;
    v.note = "zero module";
    return v;
  }
  if (N->rank() > 0) {
    v.answer = PrecedesVerdict::Answer::Yes;
    v.note = "target has a free summand, so its annihilator vanishes";
    return v;
  }
  // N is torsion (or zero); its annihilator is the last invariant factor
  PolyE cN = N->invariantFactors().empty() ? P->pOne() : N->invariantFactors().back();
  if (M->rank() > 0) {
    v.answer = PrecedesVerdict::Answer::No;
    v.killer = cN;
    v.note = "a torsion target cannot reach a free summand";
    return v;
  }
  PolyE cM = M->invariantFactors().back();
  if (P->divides(cM, cN)) {
    v.answer = PrecedesVerdict::Answer::Yes;
    v.note = "largest invariant factor of the source divides that of the target";
  } else {
    v.answer = PrecedesVerdict::Answer::No;
    v.killer = cN;
    v.note = "the target annihilator does not kill the source";
  }
  return v;
}

bool pidEquivalent(const PidModPtr& a, const PidModPtr& b) {
  return precedesPid(a, b).yes() && precedesPid(b, a).yes();
}

bool pidIsSpectral(const PidModPtr& M) {
  if (M->isZero()) return false;
  if (M->rank() > 0) return M->invariantFactors().empty();
  return M->basePoly()->irreducible(M->invariantFactors().back());
}

std::vector<std::pair<Ideal, PidModPtr>> pidSpecPoints(const RingPtr& R, int degBound) {
  std::vector<std::pair<Ideal, PidModPtr>> out;
  for (Ideal& p : primeIdeals(R, degBound)) {
    PidModPtr rep = PidMod::cyclic(R, p);
    if (!pidIsSpectral(rep)) fail("MismatchBug", "residue module at a prime is not spectral");
    out.emplace_back(std::move(p), std::move(rep));
  }
  return out;
}

namespace {

// Valid images in M for a target generator of the given order polynomial
// (empty order = free generator), coordinates degree-truncated.
std::vector<PidElem> imagePool(const PidModPtr& M, const PolyE& ord, int bound) {
  auto P = M->basePoly();
  size_t k = M->invariantFactors().size();
  std::vector<std::vector<PolyE>> perCoord;
  for (size_t j = 0; j < k; ++j) {
    const PolyE& d = M->invariantFactors()[j];
    std::vector<PolyE> opts;
    if (ord.c.empty()) {
      for (const PolyE& y : P->polysOfDegreeLess(P->deg(d))) opts.push_back(y);
    } else {
      PolyE m = P->pDiv(d, P->pGcd(ord, d));
      for (const PolyE& y : P->polysOfDegreeLess(P->deg(d) - P->deg(m)))
        opts.push_back(P->pMul(m, y));
    }
    perCoord.push_back(std::move(opts));
  }
  for (int j = 0; j < M->rank(); ++j) {
    if (ord.c.empty())
      perCoord.push_back(P->polysOfDegreeLess(bound));
    else
      perCoord.push_back({P->pZero()});  // torsion cannot reach a free coordinate
  }
  std::vector<PidElem> pool{{}};
  for (const auto& opts : perCoord) {
    std::vector<PidElem> next;
    for (const PidElem& e : pool)
      for (const PolyE& o : opts) {
        PidElem e2 = e;
        e2.push_back(o);
        next.push_back(std::move(e2));
      }
    pool = std::move(next);
  }
  return pool;
}

}  // namespace

PidSearchResult pidSurjectionSearch(const PidModPtr& M, const PidModPtr& N, int bound,
                                    u64 comboCap) {
  PidSearchResult res;
  if (M->isZero()) {
    res.answer = PrecedesVerdict::Answer::Yes;
    return res;
  }
  std::vector<PolyE> gOrders = N->invariantFactors();
  for (int i = 0; i < N->rank(); ++i) gOrders.push_back(PolyE{});
  if (gOrders.empty()) return res;  // nothing maps out of the zero module
  std::vector<std::vector<PidElem>> pools;
  for (const PolyE& o : gOrders) pools.push_back(imagePool(M, o, bound));
  u64 tried = 0;
  int maxCopies = (int)M->invariantFactors().size() + M->rank();
  for (int n = 1; n <= maxCopies; ++n) {
    size_t slots = gOrders.size() * (size_t)n;
    std::vector<size_t> idx(slots, 0);
    for (;;) {
      if (++tried > comboCap) return res;
      std::vector<PidElem> images;
      std::vector<std::vector<PidElem>> byCopy(n);
      for (size_t s = 0; s < slots; ++s) {
        const PidElem& e = pools[s % gOrders.size()][idx[s]];
        images.push_back(e);
        byCopy[s / gOrders.size()].push_back(e);
      }
      if (pidGenerates(M, images)) {
        res.answer = PrecedesVerdict::Answer::Yes;
        res.copies = n;
        res.images = std::move(byCopy);
        return res;
      }
      size_t s = 0;
      while (s < slots && ++idx[s] == pools[s % gOrders.size()].size()) idx[s++] = 0;
      if (s == slots) break;
    }
  }
  return res;
}

}  // namespace qspec
