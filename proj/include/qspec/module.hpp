#pragma once

#include "qspec/ideal.hpp"

namespace qspec {

class FinMod;
using FinModPtr = std::shared_ptr<const FinMod>;

// Finite module over a finite ring, in additive coordinates: the underlying
// group is Z/s_1 x ... x Z/s_m and each ring basis element acts by an
// integer matrix.
class FinMod final : public std::enable_shared_from_this<FinMod> {
public:
  static FinModPtr make(FiniteRingPtr R, Vec orders, std::vector<Mat> act, std::string label);
  static FinModPtr zeroModule(FiniteRingPtr R);
  static FinModPtr freeModule(FiniteRingPtr R, int n);
  static FinModPtr cyclic(const FiniteRingPtr& R, const Ideal& I);  // R/I

  const FiniteRingPtr& ring() const { return ring_; }
  int dim() const { return (int)orders_.size(); }
  const Vec& orders() const { return orders_; }
  u64 size() const { return size_; }
  const std::string& label() const { return label_; }
  std::string key() const;  // structural identity

  Vec zeroV() const { return Vec(orders_.size(), 0); }
  Vec addV(const Vec& a, const Vec& b) const;
  Vec negV(const Vec& a) const;
  Vec scaleV(i64 n, const Vec& a) const;
  // Action of the ring element r on additive coordinates.
  Mat actionMatrix(const Vec& r) const;
  const Mat& basisAction(int b) const { return act_[b]; }
  const std::vector<Mat>& basisActionAll() const { return act_; }
  Vec actV(const Vec& r, const Vec& x) const;

  Vec elemAt(u64 idx) const;
  u64 indexOf(const Vec& v) const;
  std::string showV(const Vec& v) const;

private:
  FinMod(FiniteRingPtr R, Vec orders, std::vector<Mat> act, std::string label);
  void verifyAxioms() const;

  FiniteRingPtr ring_;
  Vec orders_;
  std::vector<Mat> act_;  // one m x m matrix per ring basis element
  u64 size_ = 1;
  std::string label_;
};

// Submodule in canonical subgroup form.
struct Submodule {
  FinModPtr mod;
  Mat hnf;

  static Submodule span(const FinModPtr& M, const std::vector<Vec>& gens);
  static Submodule zeroSub(const FinModPtr& M);
  static Submodule fullSub(const FinModPtr& M);

  bool contains(const Vec& x) const;
  bool contains(const Submodule& other) const;
  u64 order() const;
  bool isZero() const { return order() == 1; }
  bool isFull() const { return order() == mod->size(); }
  bool operator==(const Submodule& o) const { return hnf == o.hnf; }
  std::string keyStr() const;
  std::vector<Vec> elements() const;
};

// A module map given by its matrix on additive coordinates: x |-> x*T.
struct ModHom {
  FinModPtr src, dst;
  Mat T;  // src.dim x dst.dim
  Vec apply(const Vec& x) const;
  bool wellDefined() const;  // group- and ring-linearity
};

ModHom composeHom(const ModHom& f, const ModHom& g);  // x |-> g(f(x))
Submodule kernelOf(const ModHom& h);
Submodule imageOf(const ModHom& h);
bool isInjective(const ModHom& h);
bool isIso(const ModHom& h);

// The submodule as an abstract module plus the inclusion map.
std::pair<FinModPtr, ModHom> subAsModule(const Submodule& S);
// The quotient by a submodule plus the projection map.
std::pair<FinModPtr, ModHom> quotientMod(const Submodule& S);

FinModPtr directSum(const FinModPtr& a, const FinModPtr& b);
FinModPtr directPower(const FinModPtr& a, int n);

// All module maps M -> N: canonical basis of the solution subgroup over
// flattened matrix entries, plus enumeration helpers.
Mat homBasis(const FinModPtr& M, const FinModPtr& N);
u64 homCount(const FinModPtr& M, const FinModPtr& N);
std::vector<ModHom> allHoms(const FinModPtr& M, const FinModPtr& N, u64 cap);
bool isomorphic(const FinModPtr& M, const FinModPtr& N);

std::vector<Submodule> allSubmodules(const FinModPtr& M);

// Elements r with r*M = 0, as an ideal.
Ideal annihilator(const FinModPtr& M);
Ideal annihilatorOfElement(const FinModPtr& M, const Vec& x);

// The two faces of support at a prime: the annihilator criterion and the
// direct localization test.
bool inSupport(const FinModPtr& M, const Ideal& P);
bool localizedNonzero(const FinModPtr& M, const Ideal& P);
// The localized module over the local factor ring at P.
std::pair<FinModPtr, FiniteRingPtr> localizeModule(const FinModPtr& M, const Ideal& P);

// Cokernel of a matrix of ring elements: the module with `gens` generators
// and one relation row per entry of `rel`.
FinModPtr presentModule(const FiniteRingPtr& R, int gens,
                        const std::vector<std::vector<Elem>>& rel, std::string label);

}  // namespace qspec
