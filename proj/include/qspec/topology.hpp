#pragma once

#include "qspec/spectrum.hpp"

namespace qspec {

// The class of modules killed by a given ideal. These are exactly the
// reflective topologizing subcategories in the finite setting, so the ideal
// is a faithful label for the class.
struct TopSubcat {
  Ideal ideal;
  bool containsMod(const FinModPtr& M) const;
};
TopSubcat tOfIdeal(Ideal I);
// Recover the ideal from the class: the annihilator of its largest cyclic
// member.
Ideal idealOfT(const TopSubcat& T);

// The submodule I*M.
Submodule idealTimesModule(const Ideal& I, const FinModPtr& M);

// Reflector of M into the subcategory of modules killed by I: the quotient
// M -> M/IM, with an enumeration certificate that IM is the smallest kernel
// that lands in the subcategory.
struct ReflectorResult {
  FinModPtr image;
  ModHom proj;
  Submodule kernel;
  bool minimal = false;
};
ReflectorResult reflector(const Ideal& I, const FinModPtr& M, bool certifyMinimal);

// Membership in the composed class: a submodule K killed by J whose
// quotient is killed by I, found by enumeration.
std::optional<Submodule> gabrielWitness(const Ideal& I, const Ideal& J, const FinModPtr& M);

// Closed subsets of the prime list, as bitmasks.
using PrimeList = std::vector<Ideal>;
using Closed = u64;
Closed vanishing(const PrimeList& primes, const Ideal& I);

struct Topology {
  PrimeList primes;
  std::vector<Closed> closedSets;  // every vanishing set, deduplicated
};
Topology buildTopology(const FiniteRingPtr& R);

// The lattice identities of vanishing sets, checked bit-exactly over every
// ideal pair.
bool topologyLawsHold(const FiniteRingPtr& R);

// {p : M survives localization at p}, through the precedence relation.
Closed supportSet(const PrimeList& primes, const FinModPtr& M);

// The point bijection and topology comparison between the ideal-theoretic
// spectrum and the one carved out of the module category.
bool affineHomeoCheck(const FiniteRingPtr& R);

}  // namespace qspec
