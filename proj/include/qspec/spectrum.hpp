#pragma once

#include "qspec/module.hpp"
#include "qspec/pidmod.hpp"

namespace qspec {

// Evidence that M is a subquotient of a direct sum of copies of N, in
// factored form: the tuple generates a cyclic submodule of N^d isomorphic
// to R/A with A the joint annihilator, and the epi maps (R/A)^copies onto
// M. Together these realize M as a subquotient of N^(d*copies).
struct PrecedesWitness {
  std::vector<Vec> tuple;  // elements of N
  Ideal jointAnn;
  int copies = 0;
  ModHom epi;  // (R/jointAnn)^copies -> M, surjective
};

// Evidence that no such subquotient exists: a ring element killing N but
// moving an element of M.
struct PrecedesCertificate {
  Vec killer;  // in Ann(N)
  Vec moved;   // in M, with killer*moved != 0
};

struct PrecedesVerdict {
  enum class Answer { Yes, No, Unknown };
  Answer answer = Answer::Unknown;
  std::optional<PrecedesWitness> witness;
  std::optional<PrecedesCertificate> certificate;
  std::string note;
  bool yes() const { return answer == Answer::Yes; }
};

// Decide whether M precedes N (is a subquotient of some N^n). Exact for
// finite modules.
PrecedesVerdict precedes(const FinModPtr& M, const FinModPtr& N);
// Independent check of the returned evidence.
bool replayPrecedes(const PrecedesVerdict& v, const FinModPtr& M, const FinModPtr& N);

bool moduleEquivalent(const FinModPtr& M, const FinModPtr& N);

// Spectral modules: nonzero and preceding every nonzero submodule.
bool isSpectral(const FinModPtr& M);

// One spectrum point per prime ideal, with its spectral representative R/p.
struct SpecPoint {
  Ideal prime;
  FinModPtr rep;
};
std::vector<SpecPoint> specPoints(const FiniteRingPtr& R);

// Exhaustive single-copy subquotient search: a submodule S of N and a
// submodule K of S with S/K isomorphic to M. Used as an independent route
// in the verification suites.
struct SubquotientWitness {
  Mat sub;     // S inside N
  Mat inner;   // K inside S (ambient coordinates of N)
};
std::optional<SubquotientWitness> subquotientSearch(const FinModPtr& M, const FinModPtr& N);

// The same relation over a polynomial PID, decided through the invariant
// factor structure.
struct PidPrecedesVerdict {
  PrecedesVerdict::Answer answer = PrecedesVerdict::Answer::Unknown;
  std::string note;
  std::optional<PolyE> killer;  // annihilates N, moves M
  bool yes() const { return answer == PrecedesVerdict::Answer::Yes; }
};
PidPrecedesVerdict precedesPid(const PidModPtr& M, const PidModPtr& N);
bool pidEquivalent(const PidModPtr& a, const PidModPtr& b);
bool pidIsSpectral(const PidModPtr& M);
std::vector<std::pair<Ideal, PidModPtr>> pidSpecPoints(const RingPtr& R, int degBound);

// Bounded independent witness search over the PID: look for a surjection
// N^n onto M with coordinate polynomials of degree < bound. Returns Yes
// with the image tuple, or Unknown when the budget runs out.
struct PidSearchResult {
  PrecedesVerdict::Answer answer = PrecedesVerdict::Answer::Unknown;
  int copies = 0;
  std::vector<std::vector<PidElem>> images;  // generator images per copy
};
PidSearchResult pidSurjectionSearch(const PidModPtr& M, const PidModPtr& N, int bound,
                                    u64 comboCap = 200000);

}  // namespace qspec
