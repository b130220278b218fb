#pragma once

#include "qspec/topology.hpp"

namespace qspec {

// Modules whose support misses the given open set of the spectrum. Closed
// under subobjects, quotients and extensions, so the quotient category
// localizes onto the open set.
struct ThickSubcat {
  FiniteRingPtr R;
  PrimeList primes;
  Closed open = 0;
  bool containsMod(const FinModPtr& M) const;
};
ThickSubcat thickOfOpen(const FiniteRingPtr& R, Closed open);

// The largest submodule lying in the class, and the smallest submodule
// whose quotient lies in it. Both computed by full enumeration.
Submodule largestSubInT(const ThickSubcat& T, const FinModPtr& N);
Submodule smallestSubWithQuotInT(const ThickSubcat& T, const FinModPtr& M);

// A morphism M -> N in the quotient category, realized as an honest map
// f : X -> N/N' where X is the smallest submodule of M with quotient in
// the class and N' the largest submodule of N in it.
struct QuotHom {
  FinModPtr M, N;
  FinModPtr X;      // realized domain
  ModHom xIncl;     // X -> M
  FinModPtr Q;      // N/N'
  ModHom qProj;     // N -> Q
  ModHom f;         // X -> Q
};

u64 quotHomCount(const ThickSubcat& T, const FinModPtr& M, const FinModPtr& N);
std::vector<QuotHom> allQuotHoms(const ThickSubcat& T, const FinModPtr& M, const FinModPtr& N,
                                 u64 cap);
QuotHom composeQuot(const ThickSubcat& T, const QuotHom& a, const QuotHom& b);
// The morphism induced by an honest map M -> N.
QuotHom inducedQuot(const ThickSubcat& T, const ModHom& h);
bool quotIsIso(const ThickSubcat& T, const QuotHom& h);
bool quotIsomorphic(const ThickSubcat& T, const FinModPtr& M, const FinModPtr& N);

// Natural endomorphisms of the identity over a probe family, with the
// comparison against scalar actions.
struct CenterResult {
  u64 count = 0;        // how many natural families / endomorphisms
  Ideal kernel;         // of the canonical scalar map out of R
  bool scalarOnly = false;  // every solution is a scalar family
  bool canonicalIso = false;  // R/kernel hits everything
};
CenterResult centerOfCategory(const FiniteRingPtr& R, const std::vector<FinModPtr>& probes);

// Endomorphism ring of the structure object in the quotient category over
// an open set, compared against the product of local rings on that set.
CenterResult centerOfQuotient(const FiniteRingPtr& R, Closed open);
// The product of the local rings at the primes of the open set.
FiniteRingPtr sectionsRing(const FiniteRingPtr& R, Closed open, const PrimeList& primes);

// Section rings over every open set with restriction maps, cross-checked
// against the quotient-category centers.
struct StructurePresheaf {
  FiniteRingPtr R;
  PrimeList primes;
  std::vector<Closed> opens;
  std::vector<FiniteRingPtr> sections;
};
StructurePresheaf structurePresheaf(const FiniteRingPtr& R);
bool presheafMatchesCenters(const StructurePresheaf& sh);
bool presheafGluing(const StructurePresheaf& sh);

// Global sections reproduce the ring through the canonical scalar map.
bool affineReconstruction(const FiniteRingPtr& R);

}  // namespace qspec
