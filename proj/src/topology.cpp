#include "qspec/topology.hpp"

#include <algorithm>
#include <set>

namespace qspec {

namespace {

// Does the ideal kill the module?
bool killedBy(const Ideal& I, const FinModPtr& M) {
  for (const Elem& g : I.generators())
    for (const Vec& row : M->actionMatrix(fv(g)))
      if (!isZeroVec(vecModRed(row, M->orders()))) return false;
  return true;
}

}  // namespace

bool TopSubcat::containsMod(const FinModPtr& M) const { return killedBy(ideal, M); }

TopSubcat tOfIdeal(Ideal I) { return TopSubcat{std::move(I)}; }

Ideal idealOfT(const TopSubcat& T) {
  auto R = std::static_pointer_cast<const FiniteRing>(T.ideal.ring());
  return annihilator(FinMod::cyclic(R, T.ideal));
}

Submodule idealTimesModule(const Ideal& I, const FinModPtr& M) {
  std::vector<Vec> gens;
  for (const Elem& g : I.generators())
    for (const Vec& row : M->actionMatrix(fv(g))) gens.push_back(row);
  return Submodule::span(M, gens);
}

ReflectorResult reflector(const Ideal& I, const FinModPtr& M, bool certifyMinimal) {
  Submodule K = idealTimesModule(I, M);
  auto [Q, proj] = quotientMod(K);
  ReflectorResult r{Q, proj, K, false};
  if (!killedBy(I, Q)) fail("MismatchBug", "reflector image is not killed by its ideal");
  if (certifyMinimal) {
    r.minimal = true;
    for (const Submodule& K2 : allSubmodules(M)) {
      // quotients landing in the class must contain the reflector kernel
      bool lands = killedBy(I, quotientMod(K2).first);
      if (lands != K2.contains(K)) r.minimal = false;
    }
  }
  return r;
}

std::optional<Submodule> gabrielWitness(const Ideal& I, const Ideal& J, const FinModPtr& M) {
  for (const Submodule& K : allSubmodules(M)) {
    auto [A, incl] = subAsModule(K);
    if (!killedBy(J, A)) continue;
    if (killedBy(I, quotientMod(K).first)) return K;
  }
  return std::nullopt;
}

Closed vanishing(const PrimeList& primes, const Ideal& I) {
  if (primes.size() > 63) fail("TooLarge", "too many points for a bitmask");
  Closed c = 0;
  for (size_t i = 0; i < primes.size(); ++i)
    if (primes[i].contains(I)) c |= (Closed(1) << i);
  return c;
}

Topology buildTopology(const FiniteRingPtr& R) {
  Topology t;
  t.primes = primeIdeals(R);
  std::set<Closed> seen;
  for (const Ideal& I : allIdeals(R)) seen.insert(vanishing(t.primes, I));
  t.closedSets.assign(seen.begin(), seen.end());
  return t;
}

bool topologyLawsHold(const FiniteRingPtr& R) {
  PrimeList primes = primeIdeals(R);
  std::vector<Ideal> ideals = allIdeals(R);
  Closed all = primes.empty() ? 0 : (Closed(1) << primes.size()) - 1;
  if (vanishing(primes, Ideal::zeroIdeal(R)) != all) return false;
  if (vanishing(primes, Ideal::unitIdeal(R)) != 0) return false;
  std::set<Closed> closed;
  for (const Ideal& I : ideals) closed.insert(vanishing(primes, I));
  for (const Ideal& I : ideals)
    for (const Ideal& J : ideals) {
      Closed vi = vanishing(primes, I), vj = vanishing(primes, J);
      if (vanishing(primes, idealProduct(I, J)) != (vi | vj)) return false;
      if (vanishing(primes, idealIntersect(I, J)) != (vi | vj)) return false;
      if (vanishing(primes, idealSum(I, J)) != (vi & vj)) return false;
      if (!closed.count(vi | vj) || !closed.count(vi & vj)) return false;
    }
  return true;
}

Closed supportSet(const PrimeList& primes, const FinModPtr& M) {
  if (primes.size() > 63) fail("TooLarge", "too many points for a bitmask");
  Closed c = 0;
  for (size_t i = 0; i < primes.size(); ++i) {
    auto R = std::static_pointer_cast<const FiniteRing>(primes[i].ring());
    if (precedes(FinMod::cyclic(R, primes[i]), M).yes()) c |= (Closed(1) << i);
  }
  return c;
}

bool affineHomeoCheck(const FiniteRingPtr& R) {
  std::vector<SpecPoint> pts = specPoints(R);
  PrimeList primes;
  for (const SpecPoint& p : pts) primes.push_back(p.prime);
  // distinct points stay distinct in the module category
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = 0; j < pts.size(); ++j)
      if (moduleEquivalent(pts[i].rep, pts[j].rep) != (i == j)) return false;
  // each vanishing set is exactly a support set, and conversely
  for (const Ideal& I : allIdeals(R)) {
    if (I.isUnitIdeal()) continue;
    if (vanishing(primes, I) != supportSet(primes, FinMod::cyclic(R, I))) return false;
  }
  return true;
}

}  // namespace qspec
