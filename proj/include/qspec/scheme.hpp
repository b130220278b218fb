#pragma once

#include "qspec/serre.hpp"
#include "qspec/spectrum.hpp"

namespace qspec {

class GluedScheme;
using SchemePtr = std::shared_ptr<const GluedScheme>;

// A scheme assembled from affine charts glued along basic opens. Supported
// shapes: empty, one affine chart over a finite ring, the projective line
// over a finite field (two polynomial charts glued by s = 1/t), and finite
// disjoint unions of these.
class GluedScheme final : public std::enable_shared_from_this<GluedScheme> {
public:
  enum class Form { Empty, Affine, P1, Disjoint };

  static SchemePtr emptyScheme();
  static SchemePtr affine(FiniteRingPtr R);
  static SchemePtr p1(i64 q);
  static SchemePtr disjointUnion(const SchemePtr& a, const SchemePtr& b);

  Form form() const { return form_; }
  const std::string& key() const { return key_; }

  // affine form
  const FiniteRingPtr& affineRing() const;

  // projective-line form
  i64 fieldOrder() const;
  const PolyRingPtr& chart(int i) const;  // 0: k[t], 1: k[s]
  const LocRingPtr& overlapRing() const;  // k[t, 1/t]
  // chart i into the overlap; chart 1 goes through s = 1/t
  const RingHom& toOverlap(int i) const;

  // disjoint form
  const std::vector<SchemePtr>& components() const { return comps_; }

private:
  GluedScheme() = default;
  Form form_ = Form::Empty;
  std::string key_;
  FiniteRingPtr affine_;
  i64 q_ = 0;
  PolyRingPtr c0_, c1_;
  LocRingPtr ov_;
  std::vector<RingHom> toOv_;
  std::vector<SchemePtr> comps_;
};

// A point: the least chart containing it plus its prime there. On the
// projective line a closed point is a monic irreducible in the owning
// chart's variable, and the generic point carries the zero ideal.
struct SchemePoint {
  int chart = 0;
  bool generic = false;
  std::optional<Ideal> affinePrime;  // affine charts
  PolyE poly;                        // projective line, owning chart variable
  std::string keyStr() const;
  bool operator==(const SchemePoint& o) const { return keyStr() == o.keyStr(); }
};

// All points, closed ones up to the degree window on infinite charts.
std::vector<SchemePoint> schemePoints(const SchemePtr& X, int degBound);
SchemePoint genericPoint(const SchemePtr& X);
SchemePoint infinityPoint(const SchemePtr& X);
SchemePoint pointFromPoly(const SchemePtr& X, const PolyE& monicIrreducible);

// Generator of the vanishing ideal of the point's closure in the given
// chart: its minimal polynomial there, 1 when the closure misses the chart,
// 0 for the generic point.
PolyE pointIdealInChart(const SchemePtr& X, const SchemePoint& x, int chart);

// Quasi-coherent sheaf in split normal form: a direct sum of line bundles
// O(n_i) and of cyclic torsion pieces O/J_x^e. Affine schemes carry a
// plain module instead. Every finitely generated sheaf on the projective
// line is a direct sum of this shape, so the form is a normal form, not a
// restriction.
struct SkySummand {
  SchemePoint x;
  int exp = 1;
};
struct QcohSheaf {
  SchemePtr X;
  FinModPtr aff;            // affine form
  std::vector<i64> twists;  // line-bundle degrees, sorted
  std::vector<SkySummand> sky;
  int rank() const { return (int)twists.size(); }
  bool isZero() const;
  std::string key() const;
  std::string show() const;
};

QcohSheaf structureSheaf(const SchemePtr& X);
QcohSheaf lineBundle(const SchemePtr& X, i64 n);  // O(n)
QcohSheaf skyscraper(const SchemePtr& X, const SchemePoint& x, int exp = 1);
QcohSheaf sheafSum(const QcohSheaf& a, const QcohSheaf& b);
QcohSheaf twistSheaf(const QcohSheaf& F, i64 n);  // tensor with O(n)
// Tensor product, computed chartwise on the split form: line degrees add,
// torsion pieces meet at common points.
QcohSheaf sheafTensor(const QcohSheaf& a, const QcohSheaf& b);

// The module of the sheaf on one chart, in invariant-factor form.
PidModPtr chartModule(const QcohSheaf& F, int chart);
// Free-part transition over the overlap: diag(t^{n_i}).
std::vector<i64> transitionDegrees(const QcohSheaf& F);
// The transition data really is an isomorphism over the overlap and the
// chart modules localize to matching pieces.
bool sheafTransitionsCompatible(const QcohSheaf& F);

// Global sections, by the equalizer over the overlap with a certified
// degree truncation: a section of O(n) on the t-chart that extends across
// infinity has degree at most n, and torsion sections are untouched by the
// truncation.
struct GlobalSections {
  i64 dim = 0;                   // over the base field
  std::vector<PolyE> freeBasis;  // t-chart side of the free-part basis
  i64 torsionDim = 0;
};
GlobalSections globalSections(const QcohSheaf& F);

std::vector<SchemePoint> sheafSupport(const QcohSheaf& F, int degBound);

struct SheafVerdict {
  PrecedesVerdict::Answer answer = PrecedesVerdict::Answer::Unknown;
  std::string note;
  bool yes() const { return answer == PrecedesVerdict::Answer::Yes; }
};
// Subquotient-of-copies order on sheaves, decided chart-by-chart through
// annihilator containment over the chart PIDs.
SheafVerdict precedesSheaf(const QcohSheaf& M, const QcohSheaf& N);
bool sheafEquivalent(const QcohSheaf& M, const QcohSheaf& N);
bool sheafIsSpectral(const QcohSheaf& F);

// The spectrum model carved out of the sheaf category: spectral classes,
// their order, and section rings over the affine basis.
struct SchemeSpecModel {
  std::vector<SchemePoint> points;
  std::vector<QcohSheaf> reps;  // O_X / J_x
  std::vector<std::string> basisOpens;
  std::vector<std::string> sectionRingKeys;
};
SchemeSpecModel specOfQcoh(const SchemePtr& X, int degBound);

struct ReportEntry {
  std::string name;
  bool ok = true;
  std::string detail;
};
struct ReconReport {
  std::vector<ReportEntry> entries;
  bool ok() const;
};
// Runs the full comparison between the scheme and the spectrum model of its
// sheaf category; any mismatch raises MismatchBug since it can only mean an
// implementation defect.
ReconReport reconstructAndCompare(const SchemePtr& X, int degBound);

// Fractional-linear chart automorphism of the projective line, as a 2x2
// matrix over the base field modulo scalars (canonical representative).
struct MobiusAut {
  Vec a, b, c, d;
  std::string keyStr() const;
  bool operator==(const MobiusAut& o) const { return keyStr() == o.keyStr(); }
};
std::vector<MobiusAut> allAutomorphisms(const SchemePtr& X);
MobiusAut identityAut(const SchemePtr& X);
MobiusAut mobiusCompose(const SchemePtr& X, const MobiusAut& f, const MobiusAut& g);
MobiusAut mobiusInverse(const SchemePtr& X, const MobiusAut& f);
SchemePoint transportPoint(const SchemePtr& X, const MobiusAut& f, const SchemePoint& x);

// An autoequivalence of the sheaf category presented as automorphism plus
// line-bundle twist.
struct TwistData {
  MobiusAut f;
  i64 deg = 0;
  std::string keyStr() const;
  bool operator==(const TwistData& o) const { return keyStr() == o.keyStr(); }
};
QcohSheaf applyTwist(const SchemePtr& X, const TwistData& F, const QcohSheaf& M);
// Functor composition: apply b first, then a.
TwistData composeTwist(const SchemePtr& X, const TwistData& a, const TwistData& b);
// Recover the presentation from the functor's effect on the structure
// sheaf and on skyscrapers, and certify the round trip.
TwistData extractTwist(const SchemePtr& X, const TwistData& F);

}  // namespace qspec
