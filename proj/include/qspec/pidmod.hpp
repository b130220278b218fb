#pragma once

#include "qspec/ideal.hpp"

namespace qspec {

class PidMod;
using PidModPtr = std::shared_ptr<const PidMod>;

// Finitely generated module over a polynomial PID (plain or localized), in
// canonical form: a free rank plus monic invariant factors d_1 | ... | d_k.
class PidMod final : public std::enable_shared_from_this<PidMod> {
public:
  static PidModPtr make(RingPtr R, int rank, std::vector<PolyE> invariantFactors);
  static PidModPtr freeModule(RingPtr R, int n);
  static PidModPtr cyclic(const RingPtr& R, const Ideal& I);
  // Cokernel of the relation matrix (one row per relation) on `gens`
  // generators, computed by diagonalization over the PID.
  static PidModPtr fromMatrix(RingPtr R, int gens,
                              const std::vector<std::vector<Elem>>& rel);

  const RingPtr& ring() const { return ring_; }
  const PolyRingPtr& basePoly() const { return base_; }
  int rank() const { return rank_; }
  const std::vector<PolyE>& invariantFactors() const { return inv_; }
  bool isZero() const { return rank_ == 0 && inv_.empty(); }
  bool isTorsion() const { return rank_ == 0; }
  // torsion part size as q^n; n returned (degree sum)
  int torsionDegree() const;
  std::string show() const;
  std::string key() const;

private:
  PidMod(RingPtr R, int rank, std::vector<PolyE> inv);
  RingPtr ring_;
  PolyRingPtr base_;
  int rank_;
  std::vector<PolyE> inv_;
};

// Diagonal of the Smith form of a polynomial matrix: monic entries with
// each dividing the next; zero rows/columns dropped.
std::vector<PolyE> polySmithDiag(const PolyRingPtr& P, std::vector<std::vector<PolyE>> A);

bool pidIsomorphic(const PidModPtr& a, const PidModPtr& b);
PidModPtr pidDirectSum(const PidModPtr& a, const PidModPtr& b);
PidModPtr pidDirectPower(const PidModPtr& a, int n);

Ideal pidAnnihilator(const PidModPtr& M);
bool pidInSupport(const PidModPtr& M, const Ideal& P);

// Exponent of the prime p in the annihilator chain, and the number of
// invariant factors it divides; used by the containment tests.
int pidMaxExponent(const PidModPtr& M, const PolyE& p);

// An element of M in summand coordinates: one polynomial per invariant
// factor (taken modulo it) followed by one per free summand.
using PidElem = std::vector<PolyE>;

// Do the given elements generate M?
bool pidGenerates(const PidModPtr& M, const std::vector<PidElem>& elems);

}  // namespace qspec
