#include "qspec/scheme.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "qspec/config.hpp"

namespace qspec {

namespace {

void needForm(const GluedScheme* X, GluedScheme::Form f, const char* what) {
  if (X->form() != f) fail("MixedSchemes", std::string(what) + " needs a different scheme shape");
}

int chartCount(const SchemePtr& X) {
  switch (X->form()) {
    case GluedScheme::Form::Empty: return 0;
    case GluedScheme::Form::Affine: return 1;
    case GluedScheme::Form::P1: return 2;
    case GluedScheme::Form::Disjoint: {
      int n = 0;
      for (const auto& c : X->components()) n += chartCount(c);
      return n;
    }
  }
  return 0;
}

}  // namespace

SchemePtr GluedScheme::emptyScheme() {
  auto X = std::shared_ptr<GluedScheme>(new GluedScheme());
  X->form_ = Form::Empty;
  X->key_ = "empty";
  return X;
}

SchemePtr GluedScheme::affine(FiniteRingPtr R) {
  auto X = std::shared_ptr<GluedScheme>(new GluedScheme());
  X->form_ = Form::Affine;
  X->affine_ = std::move(R);
  X->key_ = "affine(" + X->affine_->key() + ")";
  return X;
}

SchemePtr GluedScheme::p1(i64 q) {
  auto X = std::shared_ptr<GluedScheme>(new GluedScheme());
  X->form_ = Form::P1;
  X->q_ = q;
  auto k = FiniteRing::gf(q);
  X->c0_ = PolyRing::make(k, "t");
  X->c1_ = PolyRing::make(k, "s");
  X->ov_ = LocalizedPolyRing::make(X->c0_, X->c0_->pVar());
  X->toOv_.push_back(
      substitutionHom(X->c0_, X->ov_, Elem(X->ov_->fromPoly(X->c0_->pVar())), "t->t"));
  X->toOv_.push_back(substitutionHom(X->c1_, X->ov_, Elem(X->ov_->lmake(X->c0_->pOne(), 1)),
                                     "s->1/t"));
  // the gluing really is invertible: the images of t and s multiply to 1
  Elem ti = X->toOv_[0](Elem(X->c0_->pVar()));
  Elem si = X->toOv_[1](Elem(X->c1_->pVar()));
  if (!X->ov_->isOne(X->ov_->mul(ti, si)))
    fail("BadGluing", "chart transition is not an isomorphism");
  X->key_ = "p1(" + std::to_string(q) + ")";
  return X;
}

SchemePtr GluedScheme::disjointUnion(const SchemePtr& a, const SchemePtr& b) {
  auto X = std::shared_ptr<GluedScheme>(new GluedScheme());
  X->form_ = Form::Disjoint;
  X->comps_ = {a, b};
  X->key_ = "disj(" + a->key() + ";" + b->key() + ")";
  return X;
}

const FiniteRingPtr& GluedScheme::affineRing() const {
  needForm(this, Form::Affine, "affineRing");
  return affine_;
}

i64 GluedScheme::fieldOrder() const {
  needForm(this, Form::P1, "fieldOrder");
  return q_;
}

const PolyRingPtr& GluedScheme::chart(int i) const {
  needForm(this, Form::P1, "chart");
  return i == 0 ? c0_ : c1_;
}

const LocRingPtr& GluedScheme::overlapRing() const {
  needForm(this, Form::P1, "overlapRing");
  return ov_;
}

const RingHom& GluedScheme::toOverlap(int i) const {
  needForm(this, Form::P1, "toOverlap");
  return toOv_[i];
}

// ---------------------------------------------------------------------------
// points

std::string SchemePoint::keyStr() const {
  std::ostringstream os;
  os << "c" << chart;
  if (generic) {
    os << ":gen";
  } else if (affinePrime) {
    os << ":" << affinePrime->keyStr();
  } else {
    os << ":";
    for (const Vec& cf : poly.c) {
      for (i64 x : cf) os << x << ",";
      os << ";";
    }
  }
  return os.str();
}

SchemePoint genericPoint(const SchemePtr& X) {
  needForm(X.get(), GluedScheme::Form::P1, "genericPoint");
  SchemePoint p;
  p.generic = true;
  return p;
}

SchemePoint infinityPoint(const SchemePtr& X) {
  needForm(X.get(), GluedScheme::Form::P1, "infinityPoint");
  SchemePoint p;
  p.chart = 1;
  p.poly = X->chart(1)->pVar();
  return p;
}

SchemePoint pointFromPoly(const SchemePtr& X, const PolyE& monicIrreducible) {
  needForm(X.get(), GluedScheme::Form::P1, "pointFromPoly");
  const auto& P = X->chart(0);
  PolyE p = P->pMonic(monicIrreducible);
  if (!P->irreducible(p)) fail("NotPrime", "point polynomial is not irreducible");
  SchemePoint x;
  x.poly = p;
  return x;
}

std::vector<SchemePoint> schemePoints(const SchemePtr& X, int degBound) {
  std::vector<SchemePoint> out;
  switch (X->form()) {
    case GluedScheme::Form::Empty: break;
    case GluedScheme::Form::Affine:
      for (const Ideal& p : primeIdeals(X->affineRing())) {
        SchemePoint x;
        x.affinePrime = p;
        out.push_back(std::move(x));
      }
      break;
    case GluedScheme::Form::P1: {
      if (degBound < 1) fail("NeedsBound", "closed points of the projective line need a degree window");
      out.push_back(genericPoint(X));
      for (const PolyE& p : X->chart(0)->monicIrreducibles(degBound))
        out.push_back(pointFromPoly(X, p));
      out.push_back(infinityPoint(X));
      break;
    }
    case GluedScheme::Form::Disjoint: {
      int shift = 0;
      for (const auto& c : X->components()) {
        for (SchemePoint x : schemePoints(c, degBound)) {
          x.chart += shift;
          out.push_back(std::move(x));
        }
        shift += chartCount(c);
      }
      break;
    }
  }
  return out;
}

PolyE pointIdealInChart(const SchemePtr& X, const SchemePoint& x, int chart) {
  needForm(X.get(), GluedScheme::Form::P1, "pointIdealInChart");
  const auto& P0 = X->chart(0);
  const auto& P1 = X->chart(1);
  const auto& P = chart == 0 ? P0 : P1;
  if (x.generic) return P->pZero();
  if (x.chart == 1) {
    // the point at infinity
    return chart == 1 ? P1->pVar() : P0->pOne();
  }
  if (chart == 0) return x.poly;
  // reverse of the minimal polynomial, unless the closure misses the chart
  if (x.poly == P0->pVar()) return P1->pOne();
  std::vector<Vec> rev(x.poly.c.rbegin(), x.poly.c.rend());
  return P1->pMonic(P1->normalize(std::move(rev)));
}

// ---------------------------------------------------------------------------
// sheaves

namespace {

QcohSheaf normalizeSheaf(QcohSheaf F) {
  std::sort(F.twists.begin(), F.twists.end());
  std::sort(F.sky.begin(), F.sky.end(), [](const SkySummand& a, const SkySummand& b) {
    auto ka = a.x.keyStr(), kb = b.x.keyStr();
    return ka != kb ? ka < kb : a.exp < b.exp;
  });
  for (const SkySummand& s : F.sky)
    if (s.exp < 1 || s.x.generic) fail("MismatchBug", "torsion summand needs a closed point");
  return F;
}

void sameScheme(const QcohSheaf& a, const QcohSheaf& b) {
  if (a.X->key() != b.X->key()) fail("MixedSchemes", "sheaves live on different schemes");
}

}  // namespace

bool QcohSheaf::isZero() const {
  if (X->form() == GluedScheme::Form::Affine) return aff->size() == 1;
  return twists.empty() && sky.empty();
}

std::string QcohSheaf::key() const {
  std::ostringstream os;
  os << X->key() << "|";
  if (X->form() == GluedScheme::Form::Affine) {
    os << aff->key();
    return os.str();
  }
  for (i64 n : twists) os << "O(" << n << ")";
  os << "|";
  for (const SkySummand& s : sky) os << s.x.keyStr() << "^" << s.exp << ";";
  return os.str();
}

std::string QcohSheaf::show() const {
  if (X->form() == GluedScheme::Form::Affine) return aff->label();
  if (twists.empty() && sky.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (i64 n : twists) {
    if (!first) os << " + ";
    first = false;
    os << "O(" << n << ")";
  }
  for (const SkySummand& s : sky) {
    if (!first) os << " + ";
    first = false;
    os << "O/(" << X->chart(s.x.chart)->showP(s.x.poly) << ")";
    if (s.exp > 1) os << "^" << s.exp;
  }
  return os.str();
}

QcohSheaf structureSheaf(const SchemePtr& X) {
  QcohSheaf F;
  F.X = X;
  switch (X->form()) {
    case GluedScheme::Form::Affine:
      F.aff = FinMod::freeModule(X->affineRing(), 1);
      break;
    case GluedScheme::Form::P1:
      F.twists = {0};
      break;
    default:
      fail("MixedSchemes", "structure sheaf is built per component");
  }
  return F;
}

QcohSheaf lineBundle(const SchemePtr& X, i64 n) {
  needForm(X.get(), GluedScheme::Form::P1, "lineBundle");
  QcohSheaf F;
  F.X = X;
  F.twists = {n};
  return F;
}

QcohSheaf skyscraper(const SchemePtr& X, const SchemePoint& x, int exp) {
  needForm(X.get(), GluedScheme::Form::P1, "skyscraper");
  if (x.generic) fail("MismatchBug", "skyscrapers sit at closed points");
  QcohSheaf F;
  F.X = X;
  F.sky.push_back(SkySummand{x, exp});
  return normalizeSheaf(F);
}

QcohSheaf sheafSum(const QcohSheaf& a, const QcohSheaf& b) {
  sameScheme(a, b);
  if (a.X->form() == GluedScheme::Form::Affine) {
    QcohSheaf F;
    F.X = a.X;
    F.aff = directSum(a.aff, b.aff);
    return F;
  }
  QcohSheaf F = a;
  F.twists.insert(F.twists.end(), b.twists.begin(), b.twists.end());
  F.sky.insert(F.sky.end(), b.sky.begin(), b.sky.end());
  return normalizeSheaf(F);
}

QcohSheaf twistSheaf(const QcohSheaf& F, i64 n) {
  needForm(F.X.get(), GluedScheme::Form::P1, "twistSheaf");
  QcohSheaf G = F;
  for (i64& d : G.twists) d += n;
  return normalizeSheaf(G);
}

QcohSheaf sheafTensor(const QcohSheaf& a, const QcohSheaf& b) {
  sameScheme(a, b);
  needForm(a.X.get(), GluedScheme::Form::P1, "sheafTensor");
  QcohSheaf F;
  F.X = a.X;
  for (i64 n : a.twists)
    for (i64 m : b.twists) F.twists.push_back(n + m);
  for (i64 n : a.twists) {
    (void)n;  // invertible factor: torsion piece unchanged
    for (const SkySummand& s : b.sky) F.sky.push_back(s);
  }
  for (i64 m : b.twists) {
    (void)m;
    for (const SkySummand& s : a.sky) F.sky.push_back(s);
  }
  for (const SkySummand& s : a.sky)
    for (const SkySummand& u : b.sky)
      if (s.x == u.x) F.sky.push_back(SkySummand{s.x, std::min(s.exp, u.exp)});
  return normalizeSheaf(F);
}

PidModPtr chartModule(const QcohSheaf& F, int chart) {
  needForm(F.X.get(), GluedScheme::Form::P1, "chartModule");
  const auto& P = F.X->chart(chart);
  PidModPtr M = PidMod::make(P, (int)F.twists.size(), {});
  for (const SkySummand& s : F.sky) {
    PolyE p = pointIdealInChart(F.X, s.x, chart);
    if (P->deg(p) == 0) continue;  // closure misses the chart
    M = pidDirectSum(M, PidMod::make(P, 0, {P->pPow(p, s.exp)}));
  }
  return M;
}

std::vector<i64> transitionDegrees(const QcohSheaf& F) {
  needForm(F.X.get(), GluedScheme::Form::P1, "transitionDegrees");
  return F.twists;
}

bool sheafTransitionsCompatible(const QcohSheaf& F) {
  if (F.X->form() == GluedScheme::Form::Affine) return true;
  needForm(F.X.get(), GluedScheme::Form::P1, "sheafTransitionsCompatible");
  const auto& ov = F.X->overlapRing();
  const auto& P0 = F.X->chart(0);
  // free-part transitions t^n must be invertible over the overlap
  for (i64 n : F.twists) {
    LocE tr = n >= 0 ? ov->lmake(P0->pPow(P0->pVar(), (u64)n), 0) : ov->lmake(P0->pOne(), -n);
    if (!ov->invL(tr)) return false;
  }
  // both chart ideals of each torsion point must generate the same overlap
  // ideal after transport through the gluing
  for (const SkySummand& s : F.sky) {
    PolyE p0 = pointIdealInChart(F.X, s.x, 0);
    PolyE p1 = pointIdealInChart(F.X, s.x, 1);
    PolyE g0 = ov->idealGen(le(F.X->toOverlap(0)(Elem(p0))));
    PolyE g1 = ov->idealGen(le(F.X->toOverlap(1)(Elem(p1))));
    if (!(g0 == g1)) return false;
  }
  return true;
}

GlobalSections globalSections(const QcohSheaf& F) {
  GlobalSections out;
  if (F.X->form() == GluedScheme::Form::Affine) {
    out.dim = (i64)F.aff->size();  // element count on an affine chart
    return out;
  }
  needForm(F.X.get(), GluedScheme::Form::P1, "globalSections");
  const auto& ov = F.X->overlapRing();
  const auto& P0 = F.X->chart(0);
  for (i64 n : F.twists) {
    // sections are pairs (a(t), b(s)) with a = t^n * b(1/t) in the overlap;
    // matching forces deg a <= max(n,0), so the truncation loses nothing
    i64 D = std::max<i64>(n, 0);
    LocE tn = n >= 0 ? ov->lmake(P0->pPow(P0->pVar(), (u64)n), 0) : ov->lmake(P0->pOne(), -n);
    for (i64 k = 0; k <= D; ++k)
      for (i64 j = 0; j <= D; ++j) {
        LocE lhs = ov->lmake(P0->pPow(P0->pVar(), (u64)k), 0);
        LocE rhs = ov->lMul(tn, ov->lmake(P0->pOne(), j));
        if (ov->eq(Elem(lhs), Elem(rhs))) {
          out.freeBasis.push_back(P0->pPow(P0->pVar(), (u64)k));
          ++out.dim;
        }
      }
  }
  for (const SkySummand& s : F.sky) {
    const auto& P = F.X->chart(s.x.chart);
    out.torsionDim += (i64)s.exp * P->deg(s.x.poly);
  }
  out.dim += out.torsionDim;
  return out;
}

std::vector<SchemePoint> sheafSupport(const QcohSheaf& F, int degBound) {
  needForm(F.X.get(), GluedScheme::Form::P1, "sheafSupport");
  std::vector<SchemePoint> out;
  auto push = [&](const SchemePoint& x) {
    for (const SchemePoint& y : out)
      if (y == x) return;
    out.push_back(x);
  };
  if (!F.twists.empty()) {
    for (const SchemePoint& x : schemePoints(F.X, degBound)) push(x);
    return out;
  }
  for (const SkySummand& s : F.sky) push(s.x);
  std::sort(out.begin(), out.end(),
            [](const SchemePoint& a, const SchemePoint& b) { return a.keyStr() < b.keyStr(); });
  return out;
}

namespace {

// largest exponent at each closed point; the chartwise annihilator is the
// product of these prime powers
std::map<std::string, std::pair<SchemePoint, int>> expProfile(const QcohSheaf& F) {
  std::map<std::string, std::pair<SchemePoint, int>> prof;
  for (const SkySummand& s : F.sky) {
    auto& slot = prof[s.x.keyStr()];
    slot.first = s.x;
    slot.second = std::max(slot.second, s.exp);
  }
  return prof;
}

}  // namespace

SheafVerdict precedesSheaf(const QcohSheaf& M, const QcohSheaf& N) {
  sameScheme(M, N);
  if (M.X->form() == GluedScheme::Form::Affine) {
    PrecedesVerdict v = precedes(M.aff, N.aff);
    return SheafVerdict{v.answer, v.note};
  }
  needForm(M.X.get(), GluedScheme::Form::P1, "precedesSheaf");
  if (M.isZero()) return {PrecedesVerdict::Answer::Yes, "zero sheaf"};
  if (N.isZero()) return {PrecedesVerdict::Answer::No, "nonzero against zero"};
  if (N.rank() > 0)
    return {PrecedesVerdict::Answer::Yes,
            "chartwise annihilator containment: Ann N = 0 on every chart"};
  if (M.rank() > 0)
    return {PrecedesVerdict::Answer::No,
            "rank obstruction: restriction to a chart avoiding supp N keeps M nonzero"};
  auto pm = expProfile(M), pn = expProfile(N);
  for (const auto& [k, sm] : pm) {
    auto it = pn.find(k);
    int have = it == pn.end() ? 0 : it->second.second;
    if (sm.second > have) {
      std::ostringstream os;
      os << "annihilator certificate at " << sm.first.keyStr() << ": exponent " << sm.second
         << " > " << have;
      return {PrecedesVerdict::Answer::No, os.str()};
    }
  }
  return {PrecedesVerdict::Answer::Yes, "pointwise exponent containment on both charts"};
}

bool sheafEquivalent(const QcohSheaf& M, const QcohSheaf& N) {
  return precedesSheaf(M, N).yes() && precedesSheaf(N, M).yes();
}

bool sheafIsSpectral(const QcohSheaf& F) {
  if (F.X->form() == GluedScheme::Form::Affine) return isSpectral(F.aff);
  needForm(F.X.get(), GluedScheme::Form::P1, "sheafIsSpectral");
  if (F.isZero()) return false;
  if (F.rank() > 0) return F.sky.empty();  // torsion-free: all of one class
  for (const SkySummand& s : F.sky)
    if (s.exp != 1 || !(s.x == F.sky[0].x)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// spectrum model and reconstruction

SchemeSpecModel specOfQcoh(const SchemePtr& X, int degBound) {
  SchemeSpecModel m;
  switch (X->form()) {
    case GluedScheme::Form::Empty: break;
    case GluedScheme::Form::Affine: {
      auto R = X->affineRing();
      m.points = schemePoints(X, degBound);
      for (const SchemePoint& x : m.points) {
        QcohSheaf F;
        F.X = X;
        F.aff = FinMod::cyclic(R, *x.affinePrime);
        if (!sheafIsSpectral(F)) fail("MismatchBug", "prime representative is not spectral");
        m.reps.push_back(std::move(F));
      }
      StructurePresheaf sh = structurePresheaf(R);
      for (size_t i = 0; i < sh.opens.size(); ++i) {
        m.basisOpens.push_back("open:" + std::to_string(sh.opens[i]));
        m.sectionRingKeys.push_back(sh.sections[i]->key());
      }
      break;
    }
    case GluedScheme::Form::P1: {
      m.points = schemePoints(X, degBound);
      for (const SchemePoint& x : m.points) {
        QcohSheaf rep = x.generic ? structureSheaf(X) : skyscraper(X, x, 1);
        if (!sheafIsSpectral(rep)) fail("MismatchBug", "point representative is not spectral");
        m.reps.push_back(std::move(rep));
      }
      m.basisOpens = {"chart0", "chart1", "overlap"};
      m.sectionRingKeys = {X->chart(0)->key(), X->chart(1)->key(), X->overlapRing()->key()};
      break;
    }
    case GluedScheme::Form::Disjoint: {
      int shift = 0;
      int ci = 0;
      for (const auto& c : X->components()) {
        SchemeSpecModel sub = specOfQcoh(c, degBound);
        for (SchemePoint x : sub.points) {
          x.chart += shift;
          m.points.push_back(std::move(x));
        }
        std::string pre = "component" + std::to_string(ci++) + ":";
        for (const std::string& o : sub.basisOpens) m.basisOpens.push_back(pre + o);
        for (const std::string& k : sub.sectionRingKeys) m.sectionRingKeys.push_back(k);
        shift += chartCount(c);
      }
      break;
    }
  }
  return m;
}

bool ReconReport::ok() const {
  for (const ReportEntry& e : entries)
    if (!e.ok) return false;
  return true;
}

namespace {

void addEntry(ReconReport& rep, std::string name, bool ok, std::string detail = "") {
  if (!ok) fail("MismatchBug", "reconstruction comparison failed: " + name);
  rep.entries.push_back(ReportEntry{std::move(name), ok, std::move(detail)});
}

ReconReport reconAffine(const SchemePtr& X) {
  ReconReport rep;
  auto R = X->affineRing();
  addEntry(rep, "point bijection and topology match", affineHomeoCheck(R));
  addEntry(rep, "vanishing-set lattice laws", topologyLawsHold(R));
  PrimeList primes = primeIdeals(R);
  for (size_t i = 0; i < primes.size(); ++i) {
    CenterResult c = centerOfQuotient(R, Closed(1) << i);
    auto Rp = localizeAtPrime(R, primes[i]).first;
    addEntry(rep, "local ring at " + primes[i].show(), c.canonicalIso && c.count == Rp->size(),
             "sections: " + Rp->key());
  }
  StructurePresheaf sh = structurePresheaf(R);
  addEntry(rep, "section rings match quotient-category centers", presheafMatchesCenters(sh));
  addEntry(rep, "sections glue over unions", presheafGluing(sh));
  addEntry(rep, "global sections recover the ring", affineReconstruction(R),
           "ring: " + R->key());
  return rep;
}

ReconReport reconP1(const SchemePtr& X, int degBound) {
  ReconReport rep;
  SchemeSpecModel m = specOfQcoh(X, degBound);
  size_t expect = 2 + X->chart(0)->monicIrreducibles(degBound).size();  // + generic, infinity
  addEntry(rep, "point window size", m.points.size() == expect,
           "points: " + std::to_string(m.points.size()));
  bool distinct = true;
  for (size_t i = 0; i < m.reps.size(); ++i)
    for (size_t j = i + 1; j < m.reps.size(); ++j)
      if (sheafEquivalent(m.reps[i], m.reps[j])) distinct = false;
  addEntry(rep, "points pairwise distinct", distinct);
  QcohSheaf O = structureSheaf(X);
  bool order = true;
  for (size_t i = 0; i < m.points.size(); ++i) {
    if (m.points[i].generic) continue;
    // closed points specialize the generic point and not conversely
    if (!precedesSheaf(m.reps[i], O).yes()) order = false;
    if (precedesSheaf(O, m.reps[i]).yes()) order = false;
  }
  addEntry(rep, "specialization order", order);
  bool supp = true;
  for (size_t i = 0; i < m.points.size(); ++i) {
    if (m.points[i].generic) continue;
    auto s = sheafSupport(m.reps[i], degBound);
    if (s.size() != 1 || !(s[0] == m.points[i])) supp = false;
    if (!sheafTransitionsCompatible(m.reps[i])) supp = false;
  }
  addEntry(rep, "supports are the matching singletons", supp);
  addEntry(rep, "support of the structure sheaf is everything",
           sheafSupport(O, degBound).size() == m.points.size());
  addEntry(rep, "chart section rings", m.sectionRingKeys[0] == X->chart(0)->key() &&
                                           m.sectionRingKeys[1] == X->chart(1)->key(),
           m.sectionRingKeys[0] + " ; " + m.sectionRingKeys[1]);
  addEntry(rep, "overlap section ring", m.sectionRingKeys[2] == X->overlapRing()->key(),
           m.sectionRingKeys[2]);
  addEntry(rep, "constants are the only global sections of O", globalSections(O).dim == 1);
  return rep;
}

}  // namespace

ReconReport reconstructAndCompare(const SchemePtr& X, int degBound) {
  ReconReport rep;
  switch (X->form()) {
    case GluedScheme::Form::Empty:
      addEntry(rep, "empty scheme: nothing to compare", true);
      break;
    case GluedScheme::Form::Affine:
      rep = reconAffine(X);
      break;
    case GluedScheme::Form::P1:
      rep = reconP1(X, degBound);
      break;
    case GluedScheme::Form::Disjoint: {
      int ci = 0;
      for (const auto& c : X->components()) {
        ReconReport sub = reconstructAndCompare(c, degBound);
        std::string pre = "component" + std::to_string(ci++) + ": ";
        for (ReportEntry e : sub.entries) {
          e.name = pre + e.name;
          rep.entries.push_back(std::move(e));
        }
      }
      break;
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// automorphisms and twists

std::string MobiusAut::keyStr() const {
  std::ostringstream os;
  for (const Vec* v : {&a, &b, &c, &d}) {
    for (i64 x : *v) os << x << ",";
    os << ";";
  }
  return os.str();
}

namespace {

const FiniteRingPtr& baseField(const SchemePtr& X) {
  needForm(X.get(), GluedScheme::Form::P1, "automorphisms");
  return X->chart(0)->coeff();
}

// scale so the first nonzero entry is 1; matrices equal up to scalar get
// equal representatives
MobiusAut canonAut(const SchemePtr& X, MobiusAut f) {
  const auto& k = baseField(X);
  for (Vec* v : {&f.a, &f.b, &f.c, &f.d}) {
    if (isZeroVec(*v)) continue;
    Vec inv = *k->inverseV(*v);
    MobiusAut g;
    g.a = k->mulV(inv, f.a);
    g.b = k->mulV(inv, f.b);
    g.c = k->mulV(inv, f.c);
    g.d = k->mulV(inv, f.d);
    return g;
  }
  fail("NotInvertible", "zero matrix is not an automorphism");
}

Vec det2(const FiniteRingPtr& k, const MobiusAut& f) {
  return k->addV(k->mulV(f.a, f.d), k->negV(k->mulV(f.b, f.c)));
}

}  // namespace

MobiusAut identityAut(const SchemePtr& X) {
  const auto& k = baseField(X);
  return MobiusAut{k->oneV(), k->zeroV(), k->zeroV(), k->oneV()};
}

std::vector<MobiusAut> allAutomorphisms(const SchemePtr& X) {
  const auto& k = baseField(X);
  std::vector<MobiusAut> out;
  std::vector<std::string> seen;
  for (u64 ia = 0; ia < k->size(); ++ia)
    for (u64 ib = 0; ib < k->size(); ++ib)
      for (u64 ic = 0; ic < k->size(); ++ic)
        for (u64 id = 0; id < k->size(); ++id) {
          MobiusAut f{k->elemAt(ia), k->elemAt(ib), k->elemAt(ic), k->elemAt(id)};
          if (isZeroVec(det2(k, f))) continue;
          MobiusAut g = canonAut(X, f);
          std::string key = g.keyStr();
          if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
          seen.push_back(key);
          out.push_back(std::move(g));
        }
  return out;
}

MobiusAut mobiusCompose(const SchemePtr& X, const MobiusAut& f, const MobiusAut& g) {
  const auto& k = baseField(X);
  MobiusAut h;
  h.a = k->addV(k->mulV(f.a, g.a), k->mulV(f.b, g.c));
  h.b = k->addV(k->mulV(f.a, g.b), k->mulV(f.b, g.d));
  h.c = k->addV(k->mulV(f.c, g.a), k->mulV(f.d, g.c));
  h.d = k->addV(k->mulV(f.c, g.b), k->mulV(f.d, g.d));
  return canonAut(X, h);
}

MobiusAut mobiusInverse(const SchemePtr& X, const MobiusAut& f) {
  const auto& k = baseField(X);
  return canonAut(X, MobiusAut{f.d, k->negV(f.b), k->negV(f.c), f.a});
}

SchemePoint transportPoint(const SchemePtr& X, const MobiusAut& f, const SchemePoint& x) {
  needForm(X.get(), GluedScheme::Form::P1, "transportPoint");
  const auto& k = baseField(X);
  const auto& P0 = X->chart(0);
  if (x.generic) return x;
  if (x.chart == 1) {
    // infinity goes to a/c
    if (isZeroVec(f.c)) return infinityPoint(X);
    Vec root = k->mulV(f.a, *k->inverseV(f.c));
    return pointFromPoly(X, P0->normalize({k->negV(root), k->oneV()}));
  }
  int d = P0->deg(x.poly);
  // image minimal polynomial via the inverse fractional-linear substitution
  PolyE dtb = P0->normalize({k->negV(f.b), f.d});  // d*tau - b
  PolyE amc = P0->normalize({f.a, k->negV(f.c)});  // a - c*tau
  PolyE q = P0->pZero();
  for (int i = 0; i <= d; ++i) {
    PolyE term = P0->pMul(P0->pPow(dtb, (u64)i), P0->pPow(amc, (u64)(d - i)));
    q = P0->pAdd(q, P0->pScale(x.poly.c[(size_t)i], term));
  }
  if (P0->deg(q) < d) {
    // the single root went to infinity
    if (d != 1) fail("MismatchBug", "degree drop on a non-rational point");
    return infinityPoint(X);
  }
  q = P0->pMonic(q);
  if (!P0->irreducible(q)) fail("MismatchBug", "point transport broke irreducibility");
  return pointFromPoly(X, q);
}

std::string TwistData::keyStr() const { return f.keyStr() + "|" + std::to_string(deg); }

QcohSheaf applyTwist(const SchemePtr& X, const TwistData& F, const QcohSheaf& M) {
  needForm(X.get(), GluedScheme::Form::P1, "applyTwist");
  QcohSheaf out;
  out.X = X;
  for (i64 n : M.twists) out.twists.push_back(n + F.deg);
  for (const SkySummand& s : M.sky)
    out.sky.push_back(SkySummand{transportPoint(X, F.f, s.x), s.exp});
  return normalizeSheaf(out);
}

TwistData composeTwist(const SchemePtr& X, const TwistData& a, const TwistData& b) {
  // the line-bundle parts multiply to O(a.deg + b.deg) because the
  // automorphism pullback preserves degree
  return TwistData{mobiusCompose(X, a.f, b.f), a.deg + b.deg};
}

TwistData extractTwist(const SchemePtr& X, const TwistData& F) {
  needForm(X.get(), GluedScheme::Form::P1, "extractTwist");
  const auto& k = baseField(X);
  const auto& P0 = X->chart(0);
  // the line bundle is the image of the structure sheaf
  QcohSheaf L = applyTwist(X, F, structureSheaf(X));
  if (L.rank() != 1 || !L.sky.empty()) fail("NotInvertible", "image of O is not a line bundle");
  i64 deg = L.twists[0];
  if (!sheafEquivalent(sheafTensor(L, lineBundle(X, -deg)), structureSheaf(X)))
    fail("NotInvertible", "line bundle fails its inverse certificate");
  // probe points: all rational ones plus infinity pin down the automorphism
  std::vector<SchemePoint> probes;
  for (u64 i = 0; i < k->size(); ++i)
    probes.push_back(pointFromPoly(X, P0->normalize({k->negV(k->elemAt(i)), k->oneV()})));
  probes.push_back(infinityPoint(X));
  std::vector<SchemePoint> images;
  for (const SchemePoint& x : probes) {
    auto s = sheafSupport(applyTwist(X, F, skyscraper(X, x, 1)), 1);
    if (s.size() != 1) fail("MismatchBug", "skyscraper image is not a single point");
    images.push_back(s[0]);
  }
  std::optional<MobiusAut> found;
  for (const MobiusAut& g : allAutomorphisms(X)) {
    bool all = true;
    for (size_t i = 0; i < probes.size(); ++i)
      if (!(transportPoint(X, g, probes[i]) == images[i])) all = false;
    if (all) {
      if (found) fail("MismatchBug", "automorphism not pinned down by rational points");
      found = g;
    }
  }
  if (!found) fail("MismatchBug", "no automorphism matches the point map");
  TwistData out{*found, deg};
  if (!(out == F)) fail("MismatchBug", "twist extraction does not round trip");
  return out;
}

}  // namespace qspec
