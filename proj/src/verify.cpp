#include "qspec/verify.hpp"

#include <chrono>
#include <json.hpp>
#include <set>
#include <sstream>

#include "qspec/config.hpp"

namespace qspec {

bool VerifyReport::anyFail() const {
  for (const CheckResult& c : checks)
    if (c.status == "fail") return true;
  return false;
}

bool VerifyReport::anyUnknown() const {
  for (const CheckResult& c : checks)
    if (c.status == "unknown") return true;
  return false;
}

u64 VerifyReport::countStatus(const std::string& s) const {
  u64 n = 0;
  for (const CheckResult& c : checks)
    if (c.status == s) ++n;
  return n;
}

namespace {

void chk(VerifyReport& rep, std::string name, bool ok, std::string detail = "") {
  rep.checks.push_back(CheckResult{std::move(name), ok ? "pass" : "fail", std::move(detail)});
}

FiniteRingPtr ringOr(const SuiteOptions& opt, const char* dflt) {
  return parseFiniteRingDescriptor(opt.ring.empty() ? dflt : opt.ring);
}

SchemePtr schemeOr(const SuiteOptions& opt, const char* dflt) {
  return parseSchemeDescriptor(opt.scheme.empty() ? dflt : opt.scheme);
}

// cyclic modules plus a few direct sums, capped in size
std::vector<FinModPtr> moduleFamily(const FiniteRingPtr& R, u64 sizeCap) {
  std::vector<FinModPtr> fam;
  std::vector<FinModPtr> cyc;
  for (const Ideal& I : allIdeals(R)) cyc.push_back(FinMod::cyclic(R, I));
  for (const auto& M : cyc) fam.push_back(M);
  for (size_t i = 0; i < cyc.size(); ++i)
    for (size_t j = i; j < cyc.size(); ++j)
      if (cyc[i]->size() * cyc[j]->size() <= sizeCap) fam.push_back(directSum(cyc[i], cyc[j]));
  return fam;
}

Closed allMaskFor(const PrimeList& primes) {
  return primes.empty() ? 0 : (Closed(1) << primes.size()) - 1;
}

// ---------------------------------------------------------------------------

void suiteSupp(VerifyReport& rep, const SuiteOptions& opt) {
  auto R = ringOr(opt, "zmod:12");
  auto fam = moduleFamily(R, 144);
  for (const Ideal& p : primeIdeals(R)) {
    u64 agree = 0, replayed = 0;
    bool ok = true;
    FinModPtr rp = FinMod::cyclic(R, p);
    for (const auto& M : fam) {
      PrecedesVerdict v = precedes(rp, M);
      bool a = v.yes();
      bool b = localizedNonzero(M, p);
      if (a != b) ok = false;
      if (!replayPrecedes(v, rp, M)) ok = false;
      ++agree, ++replayed;
    }
    chk(rep, "support criterion at " + p.show(), ok,
        std::to_string(agree) + " modules, both routes");
  }
}

void suiteSpecaff(VerifyReport& rep, const SuiteOptions& opt) {
  auto R = ringOr(opt, "zmod:12");
  auto primes = primeIdeals(R);
  auto pts = specPoints(R);
  chk(rep, "one point per prime", pts.size() == primes.size(),
      std::to_string(pts.size()) + " points");
  bool cls = true;
  for (const Ideal& I : allIdeals(R)) {
    FinModPtr M = FinMod::cyclic(R, I);
    if (isSpectral(M) != (I.isPrime() && !I.isUnitIdeal())) cls = false;
  }
  chk(rep, "cyclic module is spectral exactly at primes", cls);
  bool ord = true;
  for (const SpecPoint& a : pts)
    for (const SpecPoint& b : pts) {
      PrecedesVerdict v = precedes(a.rep, b.rep);
      if (v.yes() != b.prime.contains(a.prime)) ord = false;
      if (!replayPrecedes(v, a.rep, b.rep)) ord = false;
    }
  chk(rep, "containment order matches reverse inclusion of primes", ord);
}

void suiteSpecsupp(VerifyReport& rep, const SuiteOptions& opt) {
  auto X = schemeOr(opt, "p1:2");
  for (const SchemePoint& x : schemePoints(X, opt.bound)) {
    QcohSheaf rep_ = x.generic ? structureSheaf(X) : skyscraper(X, x, 1);
    bool ok = sheafIsSpectral(rep_) && sheafTransitionsCompatible(rep_);
    if (x.generic) {
      ok = ok && sheafSupport(rep_, opt.bound).size() == schemePoints(X, opt.bound).size();
    } else {
      auto s = sheafSupport(rep_, opt.bound);
      ok = ok && s.size() == 1 && s[0] == x;
      // annihilator data: each visible chart carries exactly the point prime
      for (int c = 0; c < 2; ++c) {
        PolyE p = pointIdealInChart(X, x, c);
        auto M = chartModule(rep_, c);
        if (X->chart(c)->deg(p) == 0) {
          ok = ok && M->isZero();
        } else {
          ok = ok && M->invariantFactors().size() == 1 && M->invariantFactors()[0] == p;
          ok = ok && pidIsSpectral(M);
        }
      }
    }
    chk(rep, "spectral representative at " + x.keyStr(), ok);
  }
}

void suiteToreq(VerifyReport& rep, const SuiteOptions& opt) {
  auto X = schemeOr(opt, "p1:2");
  QcohSheaf O = structureSheaf(X);
  std::vector<QcohSheaf> fam{O, lineBundle(X, 1), lineBundle(X, -2),
                             sheafSum(O, lineBundle(X, 3)),
                             sheafSum(lineBundle(X, 1), lineBundle(X, 1))};
  for (const QcohSheaf& M : fam)
    chk(rep, "torsion-free sheaf in the class of O: " + M.show(), sheafEquivalent(M, O));
}

void suiteRekonMenge(VerifyReport& rep, const SuiteOptions& opt) {
  auto X = schemeOr(opt, "p1:2");
  SchemeSpecModel m = specOfQcoh(X, opt.bound);
  bool distinct = true;
  for (size_t i = 0; i < m.reps.size(); ++i)
    for (size_t j = i + 1; j < m.reps.size(); ++j)
      if (sheafEquivalent(m.reps[i], m.reps[j])) distinct = false;
  chk(rep, "point map is injective on the window", distinct,
      std::to_string(m.points.size()) + " points");
  bool match = true;
  for (size_t i = 0; i < m.reps.size(); ++i) {
    if (m.points[i].generic) continue;
    auto s = sheafSupport(m.reps[i], opt.bound);
    if (s.size() != 1 || !(s[0] == m.points[i])) match = false;
  }
  chk(rep, "representatives sit over their points", match);
}

void suiteSuppsch(VerifyReport& rep, const SuiteOptions& opt) {
  auto X = schemeOr(opt, "p1:2");
  auto pts = schemePoints(X, opt.bound);
  std::vector<QcohSheaf> fam{lineBundle(X, 5), structureSheaf(X)};
  for (const SchemePoint& x : pts)
    if (!x.generic) fam.push_back(skyscraper(X, x, 1 + (int)(fam.size() % 2)));
  fam.push_back(sheafSum(fam[2], fam.back()));
  for (const QcohSheaf& M : fam) {
    bool ok = true;
    auto supp = sheafSupport(M, opt.bound);
    for (const SchemePoint& x : pts) {
      if (x.generic) continue;
      bool in = false;
      for (const SchemePoint& y : supp)
        if (y == x) in = true;
      if (precedesSheaf(skyscraper(X, x, 1), M).yes() != in) ok = false;
    }
    chk(rep, "skyscraper precedence = support membership: " + M.show(), ok);
  }
}

void suiteReflchar(VerifyReport& rep, const SuiteOptions& opt) {
  auto R = ringOr(opt, "zmod:12");
  auto ideals = allIdeals(R);
  bool ok = true;
  u64 count = 0;
  for (const Ideal& I : ideals)
    for (const Ideal& J : ideals) {
      if (J.isUnitIdeal()) continue;
      ReflectorResult r = reflector(I, FinMod::cyclic(R, J), true);
      if (!r.minimal) ok = false;
      ++count;
    }
  chk(rep, "reflector kernel is minimal by enumeration", ok,
      std::to_string(count) + " (ideal, module) pairs");
}

void suiteIdealBijection(VerifyReport& rep, const SuiteOptions& opt) {
  auto R = ringOr(opt, "zmod:36");
  auto ideals = allIdeals(R);
  bool round = true, order = true;
  for (const Ideal& I : ideals) {
    if (!(idealOfT(tOfIdeal(I)) == I)) round = false;
    for (const Ideal& J : ideals) {
      // class containment (tested on all cyclic probes) reverses inclusion
      bool sub = true;
      for (const Ideal& K : ideals) {
        FinModPtr M = FinMod::cyclic(R, K);
        if (tOfIdeal(I).containsMod(M) && !tOfIdeal(J).containsMod(M)) sub = false;
      }
      if (sub != I.contains(J)) order = false;
    }
  }
  chk(rep, "ideal recovered from its subcategory", round,
      std::to_string(ideals.size()) + " ideals");
  chk(rep, "class containment reverses ideal inclusion", order);
}

void suiteIntersec(VerifyReport& rep, const SuiteOptions& opt) {
  auto R = ringOr(opt, "zmod:36");
  auto ideals = allIdeals(R);
  auto primes = primeIdeals(R);
  bool meet = true, vsum = true;
  for (const Ideal& I : ideals)
    for (const Ideal& J : ideals) {
      Ideal S = idealSum(I, J);
      for (const Ideal& K : ideals) {
        FinModPtr M = FinMod::cyclic(R, K);
        bool both = tOfIdeal(I).containsMod(M) && tOfIdeal(J).containsMod(M);
        if (both != tOfIdeal(S).containsMod(M)) meet = false;
      }
      if (vanishing(primes, S) != (vanishing(primes, I) & vanishing(primes, J))) vsum = false;
    }
  chk(rep, "intersection of classes is the class of the sum", meet);
  chk(rep, "vanishing of the sum is the intersection", vsum);
}

void suiteGabriel(VerifyReport& rep, const SuiteOptions& opt) {
  auto R = ringOr(opt, "zmod:36");
  auto ideals = allIdeals(R);
  auto primes = primeIdeals(R);
  bool prod = true, vprod = true;
  u64 pairs = 0;
  for (const Ideal& I : ideals)
    for (const Ideal& J : ideals) {
      ++pairs;
      Ideal IJ = idealProduct(I, J);
      for (const Ideal& K : ideals) {
        if (K.isUnitIdeal()) continue;
        FinModPtr M = FinMod::cyclic(R, K);
        auto w = gabrielWitness(I, J, M);
        if (w.has_value() != tOfIdeal(IJ).containsMod(M)) prod = false;
        if (w) {
          // replay: the witness is a two-step kill
          if (!tOfIdeal(J).containsMod(subAsModule(*w).first)) prod = false;
          if (!tOfIdeal(I).containsMod(quotientMod(*w).first)) prod = false;
        }
      }
      Closed vi = vanishing(primes, I), vj = vanishing(primes, J);
      if (vanishing(primes, IJ) != (vi | vj)) vprod = false;
      if (vanishing(primes, idealSum(I, J)) != (vi & vj)) vprod = false;
    }
  chk(rep, "composed class is the product-ideal class", prod, std::to_string(pairs) + " pairs");
  chk(rep, "vanishing-set identities", vprod);
}

void suiteZartop(VerifyReport& rep, const SuiteOptions& opt) {
  auto R = ringOr(opt, "zmod:12");
  chk(rep, "vanishing sets form a topology", topologyLawsHold(R));
  Topology t = buildTopology(R);
  chk(rep, "closed-set family", true,
      std::to_string(t.closedSets.size()) + " closed sets over " +
          std::to_string(t.primes.size()) + " points");
}

void suiteRekonTop(VerifyReport& rep, const SuiteOptions& opt) {
  auto R = ringOr(opt, "zmod:12");
  chk(rep, "spectrum homeomorphism through supports", affineHomeoCheck(R));
}

void suiteSep(VerifyReport& rep, const SuiteOptions& opt) {
  auto X = schemeOr(opt, "p1:2");
  const auto& ov = X->overlapRing();
  const auto& P0 = X->chart(0);
  bool ok = true;
  for (i64 k = -opt.bound; k <= opt.bound; ++k) {
    // every overlap monomial is a product of one section from each chart
    Elem a = k >= 0 ? Elem(ov->fromPoly(P0->pPow(P0->pVar(), (u64)k))) : ov->one();
    Elem b = k < 0 ? X->toOverlap(1)(Elem(X->chart(1)->pPow(X->chart(1)->pVar(), (u64)(-k))))
                   : ov->one();
    LocE want = k >= 0 ? ov->lmake(P0->pPow(P0->pVar(), (u64)k), 0) : ov->lmake(P0->pOne(), -k);
    if (!ov->eq(ov->mul(a, b), Elem(want))) ok = false;
  }
  chk(rep, "overlap sections are spanned by chart products", ok,
      "monomials up to |" + std::to_string(opt.bound) + "|");
}

void suiteReflprod(VerifyReport& rep, const SuiteOptions& opt) {
  auto R = ringOr(opt, "zmod:36");
  auto ideals = allIdeals(R);
  bool steps = true, comp = true;
  for (const Ideal& I : ideals)
    for (const Ideal& J : ideals)
      for (const Ideal& K : ideals) {
        if (K.isUnitIdeal()) continue;
        FinModPtr M = FinMod::cyclic(R, K);
        // quotient by (IJ)M lies in the composed class
        Ideal IJ = idealProduct(I, J);
        auto q = reflector(IJ, M, false);
        if (!gabrielWitness(I, J, q.image).has_value() && q.image->size() > 1) steps = false;
        // iterated reflectors agree with the sum reflector
        auto r1 = reflector(I, reflector(J, M, false).image, false);
        auto r2 = reflector(idealSum(I, J), M, false);
        if (!isomorphic(r1.image, r2.image)) comp = false;
      }
  chk(rep, "composed-class reflector lands correctly", steps);
  chk(rep, "iterated reflectors realize the sum ideal", comp);
}

void suiteModzen(VerifyReport& rep, const SuiteOptions& opt) {
  auto R = ringOr(opt, "zmod:6");
  std::vector<FinModPtr> probes{FinMod::freeModule(R, 1)};
  for (const Ideal& I : allIdeals(R))
    if (!I.isUnitIdeal() && !I.isZeroIdeal()) probes.push_back(FinMod::cyclic(R, I));
  if (probes.size() >= 2) probes.push_back(directSum(probes[0], probes[1]));
  CenterResult c = centerOfCategory(R, probes);
  chk(rep, "evaluation from the ring to the center is bijective",
      c.canonicalIso && c.scalarOnly && c.kernel.isZeroIdeal() && c.count == R->size(),
      std::to_string(c.count) + " natural families");
}

void suiteLok(VerifyReport& rep, const SuiteOptions& opt) {
  auto R = ringOr(opt, "zmod:6");
  auto primes = primeIdeals(R);
  std::vector<FinModPtr> fam{FinMod::freeModule(R, 1)};
  for (const Ideal& I : allIdeals(R))
    if (!I.isUnitIdeal()) fam.push_back(FinMod::cyclic(R, I));
  for (size_t pi = 0; pi < primes.size(); ++pi) {
    ThickSubcat T = thickOfOpen(R, Closed(1) << pi);
    bool ok = true;
    for (const auto& M : fam)
      for (const auto& N : fam) {
        u64 lhs = quotHomCount(T, M, N);
        u64 rhs = homCount(localizeModule(M, primes[pi]).first,
                           localizeModule(N, primes[pi]).first);
        if (lhs != rhs) ok = false;
      }
    chk(rep, "quotient category at " + primes[pi].show() + " is the localization", ok,
        std::to_string(fam.size() * fam.size()) + " hom groups");
  }
}

void suiteZentrumlokal(VerifyReport& rep, const SuiteOptions& opt) {
  auto R = ringOr(opt, "zmod:6");
  auto primes = primeIdeals(R);
  for (Closed open = 0; open <= allMaskFor(primes); ++open) {
    CenterResult c = centerOfQuotient(R, open);
    auto S = sectionsRing(R, open, primes);
    chk(rep, "center over open " + std::to_string(open),
        c.canonicalIso && c.count == S->size(), "sections: " + S->key());
  }
}

void suiteIsthick(VerifyReport& rep, const SuiteOptions& opt) {
  auto R = ringOr(opt, "zmod:6");
  auto primes = primeIdeals(R);
  auto fam = moduleFamily(R, 72);
  for (Closed open = 0; open <= allMaskFor(primes); ++open) {
    ThickSubcat T = thickOfOpen(R, open);
    bool ok = true;
    for (const auto& M : fam) {
      bool inT = T.containsMod(M);
      for (const Submodule& K : allSubmodules(M)) {
        bool subIn = T.containsMod(subAsModule(K).first);
        bool quotIn = T.containsMod(quotientMod(K).first);
        if (inT && !(subIn && quotIn)) ok = false;   // subquotient closure
        if (subIn && quotIn && !inT) ok = false;     // extension closure
      }
    }
    chk(rep, "class of open " + std::to_string(open) + " is thick", ok);
  }
}

void suiteRekonSch(VerifyReport& rep, const SuiteOptions& opt) {
  auto X = schemeOr(opt, "affine:zmod:6");
  ReconReport r = reconstructAndCompare(X, opt.bound);
  for (const ReportEntry& e : r.entries) chk(rep, e.name, e.ok, e.detail);
}

void suiteFine(VerifyReport& rep, const SuiteOptions& opt) {
  auto X = schemeOr(opt, "p1:2");
  auto auts = allAutomorphisms(X);
  bool round = true;
  for (const MobiusAut& f : auts)
    for (i64 n = -1; n <= 2; ++n) {
      TwistData F{f, n};
      if (!(extractTwist(X, F) == F)) round = false;
    }
  chk(rep, "twist data round trips through the functor", round,
      std::to_string(auts.size() * 4) + " functors");
  // distinct data act distinctly on the probes
  std::set<std::string> actions;
  QcohSheaf probe =
      sheafSum(structureSheaf(X), skyscraper(X, pointFromPoly(X, X->chart(0)->pVar()), 1));
  for (const MobiusAut& f : auts)
    for (i64 n = 0; n <= 1; ++n)
      actions.insert(applyTwist(X, TwistData{f, n}, probe).key() + "|" +
                     applyTwist(X, TwistData{f, n}, skyscraper(X, infinityPoint(X), 1)).key());
  chk(rep, "distinct twist data give distinct actions", actions.size() == auts.size() * 2,
      std::to_string(actions.size()) + " distinct actions");
}

void suiteAutGroup(VerifyReport& rep, const SuiteOptions& opt) {
  auto X = schemeOr(opt, "p1:2");
  i64 q = X->fieldOrder();
  auto auts = allAutomorphisms(X);
  chk(rep, "automorphism count is q^3 - q", (i64)auts.size() == q * q * q - q,
      std::to_string(auts.size()) + " automorphisms");
  bool grp = true;
  for (const MobiusAut& f : auts) {
    if (!(mobiusCompose(X, f, mobiusInverse(X, f)) == identityAut(X))) grp = false;
    for (const MobiusAut& g : auts) {
      MobiusAut h = mobiusCompose(X, f, g);
      bool found = false;
      for (const MobiusAut& e : auts)
        if (e == h) found = true;
      if (!found) grp = false;
    }
  }
  chk(rep, "closure, inverses and identity", grp);
}

}  // namespace

std::vector<std::string> suiteNames() {
  return {"supp",       "specaff",         "specsupp", "toreq",   "rekon-menge",
          "suppsch",    "reflchar",        "ideal-bijection",     "intersec",
          "gabriel-product",               "zartop",   "rekon-top",
          "sep",        "reflprod-finite", "modzen",   "lok",     "zentrumlokal",
          "isthick",    "rekon-sch",       "fine",     "aut-group"};
}

VerifyReport runSuite(const std::string& suite, const SuiteOptions& opt) {
  VerifyReport rep;
  rep.suite = suite;
  rep.instance = (opt.ring.empty() ? "" : "ring=" + opt.ring) +
                 (opt.scheme.empty() ? "" : " scheme=" + opt.scheme) +
                 " bound=" + std::to_string(opt.bound);
  auto t0 = std::chrono::steady_clock::now();
  if (suite == "supp") suiteSupp(rep, opt);
  else if (suite == "specaff") suiteSpecaff(rep, opt);
  else if (suite == "specsupp") suiteSpecsupp(rep, opt);
  else if (suite == "toreq") suiteToreq(rep, opt);
  else if (suite == "rekon-menge") suiteRekonMenge(rep, opt);
  else if (suite == "suppsch") suiteSuppsch(rep, opt);
  else if (suite == "reflchar") suiteReflchar(rep, opt);
  else if (suite == "ideal-bijection") suiteIdealBijection(rep, opt);
  else if (suite == "intersec") suiteIntersec(rep, opt);
  else if (suite == "gabriel-product") suiteGabriel(rep, opt);
  else if (suite == "zartop") suiteZartop(rep, opt);
  else if (suite == "rekon-top") suiteRekonTop(rep, opt);
  else if (suite == "sep") suiteSep(rep, opt);
  else if (suite == "reflprod-finite") suiteReflprod(rep, opt);
  else if (suite == "modzen") suiteModzen(rep, opt);
  else if (suite == "lok") suiteLok(rep, opt);
  else if (suite == "zentrumlokal") suiteZentrumlokal(rep, opt);
  else if (suite == "isthick") suiteIsthick(rep, opt);
  else if (suite == "rekon-sch") suiteRekonSch(rep, opt);
  else if (suite == "fine") suiteFine(rep, opt);
  else if (suite == "aut-group") suiteAutGroup(rep, opt);
  else fail("UnknownSuite", "no suite named " + suite);
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

std::string reportToJson(const VerifyReport& r) {
  nlohmann::ordered_json j;
  j["suite"] = r.suite;
  j["instance"] = r.instance;
  j["checks"] = nlohmann::ordered_json::array();
  for (const CheckResult& c : r.checks) {
    nlohmann::ordered_json e;
    e["name"] = c.name;
    e["status"] = c.status;
    e["detail"] = c.detail;
    j["checks"].push_back(std::move(e));
  }
  j["pass"] = r.countStatus("pass");
  j["fail"] = r.countStatus("fail");
  j["unknown"] = r.countStatus("unknown");
  return j.dump(2);
}

}  // namespace qspec
