#include "qspec/module.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "qspec/config.hpp"

namespace qspec {

namespace {

i64 lcmOf(const Vec& v) {
  i64 l = 1;
  for (i64 x : v) l = std::lcm(l, x);
  return l;
}

void requireSameModule(const FinModPtr& a, const FinModPtr& b) {
  if (a->key() != b->key()) fail("MixedRings", "operation across different modules");
}

// Invariant factors of the additive group, for quick isomorphism rejection.
Vec groupInvariants(const Vec& orders) {
  Mat diag(orders.size(), Vec(orders.size(), 0));
  for (size_t i = 0; i < orders.size(); ++i) diag[i][i] = orders[i];
  return quotientGroup(diag, orders).orders;
}

}  // namespace

FinMod::FinMod(FiniteRingPtr R, Vec orders, std::vector<Mat> act, std::string label)
    : ring_(std::move(R)), orders_(std::move(orders)), act_(std::move(act)),
      label_(std::move(label)) {
  for (i64 s : orders_) {
    if (s < 2) fail("BadModulus", "module coordinate orders must be at least 2");
    size_ = mulChecked(size_, s);
    if (size_ > (u64)caps().elementCap) fail("TooLarge", "module exceeds the element cap");
  }
  for (auto& m : act_)
    for (auto& row : m)
      for (size_t j = 0; j < row.size(); ++j) row[j] = modpos(row[j], orders_[j]);
  verifyAxioms();
}

void FinMod::verifyAxioms() const {
  int m = dim(), k = ring_->dim();
  if ((int)act_.size() != k) fail("BadModulus", "one action matrix per ring basis element");
  for (const Mat& c : act_)
    if ((int)c.size() != m || (m && (int)c[0].size() != m))
      fail("BadModulus", "action matrix shape mismatch");
  for (int b = 0; b < k; ++b)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        if (modpos(mulChecked(orders_[i], act_[b][i][j]), orders_[j]) != 0)
          fail("BadModulus", "action not compatible with coordinate orders");
        if (modpos(mulChecked(ring_->orders()[b], act_[b][i][j]), orders_[j]) != 0)
          fail("BadModulus", "action not compatible with ring coefficient orders");
      }
  Mat unit = actionMatrix(ring_->oneV());
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (unit[i][j] != (i == j ? 1 % orders_[j] : 0))
        fail("BadModulus", "ring unit must act as the identity");
  for (int b = 0; b < k; ++b)
    for (int c = 0; c < k; ++c) {
      Vec eb(k, 0), ec(k, 0);
      eb[b] = 1;
      ec[c] = 1;
      Mat lhs = matMul(act_[b], act_[c]);
      Mat rhs = actionMatrix(ring_->mulV(eb, ec));
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
          if (modpos(lhs[i][j], orders_[j]) != rhs[i][j])
            fail("BadModulus", "action not multiplicative on ring basis products");
    }
}

FinModPtr FinMod::make(FiniteRingPtr R, Vec orders, std::vector<Mat> act, std::string label) {
  return FinModPtr(
      new FinMod(std::move(R), std::move(orders), std::move(act), std::move(label)));
}

FinModPtr FinMod::zeroModule(FiniteRingPtr R) {
  std::vector<Mat> act(R->dim());
  return make(std::move(R), {}, std::move(act), "0");
}

FinModPtr FinMod::freeModule(FiniteRingPtr R, int n) {
  int k = R->dim();
  Vec orders;
  std::vector<Mat> act(k, Mat(n * k, Vec(n * k, 0)));
  for (int c = 0; c < n; ++c)
    for (i64 s : R->orders()) orders.push_back(s);
  for (int b = 0; b < k; ++b)
    for (int c = 0; c < n; ++c) {
      const Mat& bm = R->basisMult(b);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) act[b][c * k + i][c * k + j] = bm[i][j];
    }
  std::ostringstream label;
  label << "R^" << n;
  return make(std::move(R), std::move(orders), std::move(act), label.str());
}

FinModPtr FinMod::cyclic(const FiniteRingPtr& R, const Ideal& I) {
  if (I.ring()->key() != R->key()) fail("MixedRings", "ideal belongs to a different ring");
  FinModPtr F = freeModule(R, 1);
  Submodule S{F, I.hnf()};
  auto [Q, proj] = quotientMod(S);
  std::ostringstream label;
  label << "R/" << I.show();
  return make(R, Q->orders(), std::vector<Mat>(Q->basisActionAll()), label.str());
}

std::string FinMod::key() const {
  std::ostringstream os;
  os << ring_->key() << "|";
  for (i64 s : orders_) os << s << ",";
  os << "|";
  for (const Mat& c : act_) {
    for (const Vec& r : c)
      for (i64 x : r) os << x << ",";
    os << ";";
  }
  return os.str();
}

Vec FinMod::addV(const Vec& a, const Vec& b) const { return vecModRed(vecAdd(a, b), orders_); }
Vec FinMod::negV(const Vec& a) const { return vecModRed(vecScale(-1, a), orders_); }
Vec FinMod::scaleV(i64 n, const Vec& a) const { return vecModRed(vecScale(n, a), orders_); }

Mat FinMod::actionMatrix(const Vec& r) const {
  int m = dim();
  Mat A(m, Vec(m, 0));
  for (int b = 0; b < (int)act_.size(); ++b) {
    if (r[b] == 0) continue;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) A[i][j] = addChecked(A[i][j], mulChecked(r[b], act_[b][i][j]));
  }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) A[i][j] = modpos(A[i][j], orders_[j]);
  return A;
}

Vec FinMod::actV(const Vec& r, const Vec& x) const {
  return vecModRed(vecMat(x, actionMatrix(r)), orders_);
}

Vec FinMod::elemAt(u64 idx) const {
  Vec v(orders_.size());
  for (size_t i = 0; i < orders_.size(); ++i) {
    v[i] = (i64)(idx % (u64)orders_[i]);
    idx /= (u64)orders_[i];
  }
  return v;
}

u64 FinMod::indexOf(const Vec& v) const {
  u64 idx = 0;
  for (size_t i = orders_.size(); i-- > 0;) idx = idx * (u64)orders_[i] + (u64)v[i];
  return idx;
}

std::string FinMod::showV(const Vec& v) const {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ")";
  return os.str();
}

Submodule Submodule::span(const FinModPtr& M, const std::vector<Vec>& gens) {
  Mat rows;
  for (const Vec& g : gens) {
    rows.push_back(vecModRed(g, M->orders()));
    for (int b = 0; b < M->ring()->dim(); ++b)
      rows.push_back(vecModRed(vecMat(g, M->basisAction(b)), M->orders()));
  }
  return Submodule{M, subgroupBasis(std::move(rows), M->orders())};
}

Submodule Submodule::zeroSub(const FinModPtr& M) { return span(M, {}); }

Submodule Submodule::fullSub(const FinModPtr& M) {
  std::vector<Vec> gens;
  for (int i = 0; i < M->dim(); ++i) {
    Vec e(M->dim(), 0);
    e[i] = 1;
    gens.push_back(std::move(e));
  }
  return span(M, gens);
}

bool Submodule::contains(const Vec& x) const { return inSubgroup(hnf, mod->orders(), x); }

bool Submodule::contains(const Submodule& other) const {
  for (const Vec& r : other.hnf)
    if (!contains(r)) return false;
  return true;
}

u64 Submodule::order() const { return subgroupOrder(hnf, mod->orders()); }

std::string Submodule::keyStr() const {
  std::ostringstream os;
  for (const Vec& r : hnf) {
    for (i64 x : r) os << x << ",";
    os << ";";
  }
  return os.str();
}

std::vector<Vec> Submodule::elements() const {
  return subgroupElements(hnf, mod->orders(), caps().elementCap);
}

Vec ModHom::apply(const Vec& x) const { return vecModRed(vecMat(x, T), dst->orders()); }

bool ModHom::wellDefined() const {
  int m = src->dim(), n = dst->dim();
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j)
      if (modpos(mulChecked(src->orders()[i], T[i][j]), dst->orders()[j]) != 0) return false;
  for (int b = 0; b < src->ring()->dim(); ++b) {
    Mat lhs = matMul(src->basisAction(b), T);
    Mat rhs = matMul(T, dst->basisAction(b));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j)
        if (modpos(lhs[i][j] - rhs[i][j], dst->orders()[j]) != 0) return false;
  }
  return true;
}

ModHom composeHom(const ModHom& f, const ModHom& g) {
  if (f.dst->key() != g.src->key()) fail("MixedRings", "map composition endpoint mismatch");
  Mat T = matMul(f.T, g.T);
  for (auto& row : T)
    for (size_t j = 0; j < row.size(); ++j) row[j] = modpos(row[j], g.dst->orders()[j]);
  return ModHom{f.src, g.dst, std::move(T)};
}

Submodule kernelOf(const ModHom& h) {
  Mat k = kernelSubgroup(h.T, h.src->orders(), h.dst->orders());
  std::vector<Vec> gens(k.begin(), k.end());
  return Submodule::span(h.src, gens);
}

Submodule imageOf(const ModHom& h) {
  std::vector<Vec> gens(h.T.begin(), h.T.end());
  return Submodule::span(h.dst, gens);
}

bool isInjective(const ModHom& h) { return kernelOf(h).order() == 1; }

bool isIso(const ModHom& h) {
  return h.src->size() == h.dst->size() && isInjective(h) && h.wellDefined();
}

std::pair<FinModPtr, ModHom> subAsModule(const Submodule& S) {
  const FinModPtr& M = S.mod;
  int n = M->dim();
  const Vec& s = M->orders();
  const Mat& G = S.hnf;
  // relation lattice of the generator rows, via the left kernel of [G; diag]
  Mat B = G;
  for (int i = 0; i < n; ++i) {
    Vec d(n, 0);
    d[i] = s[i];
    B.push_back(std::move(d));
  }
  HnfT ht = hermiteTransform(B);
  Mat rel;
  for (size_t r = 0; r < ht.H.size(); ++r)
    if (isZeroVec(ht.H[r])) rel.emplace_back(ht.U[r].begin(), ht.U[r].begin() + n);
  HnfT rh = hermiteTransform(rel);
  Mat L;
  for (const Vec& row : rh.H)
    if (!isZeroVec(row)) L.push_back(row);
  if ((int)L.size() != n) fail("MismatchBug", "relation lattice is not full rank");
  Snf snf = smithZ(L);
  std::vector<int> kept;
  for (int i = 0; i < n; ++i) {
    if (snf.d[i] <= 0) fail("MismatchBug", "degenerate invariant factor");
    if (snf.d[i] > 1) kept.push_back(i);
  }
  Vec ordersN;
  for (int i : kept) ordersN.push_back(snf.d[i]);
  Mat reps;  // ambient coordinates of the new basis
  for (int i : kept) reps.push_back(vecModRed(vecMat(snf.Vinv[i], G), s));
  i64 big = lcmOf(s);
  Vec min(n, big ? big : 1);
  auto toCoords = [&](const Vec& target) {
    Vec a;
    if (!solveCongruence(G, min, s, target, a))
      fail("MismatchBug", "element escaped its own submodule");
    Vec y = vecMat(a, snf.V);
    Vec out;
    for (size_t t = 0; t < kept.size(); ++t) out.push_back(modpos(y[kept[t]], ordersN[t]));
    return out;
  };
  std::vector<Mat> act(M->ring()->dim());
  for (int b = 0; b < M->ring()->dim(); ++b)
    for (const Vec& u : reps)
      act[b].push_back(toCoords(vecModRed(vecMat(u, M->basisAction(b)), s)));
  FinModPtr N =
      FinMod::make(M->ring(), ordersN, std::move(act), "sub(" + M->label() + ")");
  return {N, ModHom{N, M, reps}};
}

std::pair<FinModPtr, ModHom> quotientMod(const Submodule& S) {
  const FinModPtr& M = S.mod;
  QuotientGroup q = quotientGroup(S.hnf, M->orders());
  std::vector<Mat> act(M->ring()->dim());
  for (int b = 0; b < M->ring()->dim(); ++b)
    for (const Vec& l : q.lift)
      act[b].push_back(
          vecModRed(vecMat(vecMat(l, M->basisAction(b)), q.proj), q.orders));
  FinModPtr N = FinMod::make(M->ring(), q.orders, std::move(act), M->label() + "/sub");
  return {N, ModHom{M, N, q.proj}};
}

FinModPtr directSum(const FinModPtr& a, const FinModPtr& b) {
  if (a->ring()->key() != b->ring()->key()) fail("MixedRings", "direct sum across rings");
  int m = a->dim(), n = b->dim();
  Vec orders = a->orders();
  for (i64 s : b->orders()) orders.push_back(s);
  std::vector<Mat> act(a->ring()->dim(), Mat(m + n, Vec(m + n, 0)));
  for (int t = 0; t < a->ring()->dim(); ++t) {
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) act[t][i][j] = a->basisAction(t)[i][j];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) act[t][m + i][m + j] = b->basisAction(t)[i][j];
  }
  return FinMod::make(a->ring(), std::move(orders), std::move(act),
                      a->label() + "+" + b->label());
}

FinModPtr directPower(const FinModPtr& a, int n) {
  FinModPtr r = FinMod::zeroModule(a->ring());
  for (int i = 0; i < n; ++i) r = directSum(r, a);
  return r;
}

Mat homBasis(const FinModPtr& M, const FinModPtr& N) {
  if (M->ring()->key() != N->ring()->key()) fail("MixedRings", "maps across rings");
  int m = M->dim(), n = N->dim(), k = M->ring()->dim();
  int vars = m * n;
  Vec min(vars), mout;
  Mat A(vars);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) min[i * n + j] = N->orders()[j];
  auto addCol = [&](const std::map<int, i64>& coeffs, i64 modulus) {
    for (int v = 0; v < vars; ++v) A[v].push_back(0);
    for (auto& [v, c] : coeffs) A[v].back() = c;
    mout.push_back(modulus);
  };
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j)
      addCol({{i * n + j, M->orders()[i]}}, N->orders()[j]);
  for (int b = 0; b < k; ++b)
    for (int i = 0; i < m; ++i)
      for (int t = 0; t < n; ++t) {
        std::map<int, i64> col;
        for (int j = 0; j < m; ++j) col[j * n + t] += M->basisAction(b)[i][j];
        for (int j = 0; j < n; ++j) col[i * n + j] -= N->basisAction(b)[j][t];
        addCol(col, N->orders()[t]);
      }
  return kernelSubgroup(A, min, mout);
}

static Vec homModuli(const FinModPtr& M, const FinModPtr& N) {
  Vec min(M->dim() * N->dim());
  for (int i = 0; i < M->dim(); ++i)
    for (int j = 0; j < N->dim(); ++j) min[i * N->dim() + j] = N->orders()[j];
  return min;
}

u64 homCount(const FinModPtr& M, const FinModPtr& N) {
  return subgroupOrder(homBasis(M, N), homModuli(M, N));
}

std::vector<ModHom> allHoms(const FinModPtr& M, const FinModPtr& N, u64 cap) {
  Mat basis = homBasis(M, N);
  std::vector<ModHom> out;
  for (const Vec& flat : subgroupElements(basis, homModuli(M, N), cap)) {
    Mat T(M->dim(), Vec(N->dim()));
    for (int i = 0; i < M->dim(); ++i)
      for (int j = 0; j < N->dim(); ++j) T[i][j] = flat[i * N->dim() + j];
    out.push_back(ModHom{M, N, std::move(T)});
  }
  return out;
}

bool isomorphic(const FinModPtr& M, const FinModPtr& N) {
  if (M->ring()->key() != N->ring()->key()) fail("MixedRings", "comparison across rings");
  if (M->size() != N->size()) return false;
  if (groupInvariants(M->orders()) != groupInvariants(N->orders())) return false;
  for (const ModHom& h : allHoms(M, N, caps().elementCap))
    if (isIso(h)) return true;
  return false;
}

std::vector<Submodule> allSubmodules(const FinModPtr& M) {
  std::map<std::string, Submodule> seen;
  std::vector<Submodule> principal;
  for (u64 i = 0; i < M->size(); ++i) {
    Submodule S = Submodule::span(M, {M->elemAt(i)});
    if (seen.emplace(S.keyStr(), S).second) principal.push_back(S);
  }
  std::vector<Submodule> work(principal.begin(), principal.end());
  while (!work.empty()) {
    Submodule cur = std::move(work.back());
    work.pop_back();
    for (const Submodule& p : principal) {
      Mat rows = cur.hnf;
      for (const Vec& r : p.hnf) rows.push_back(r);
      Submodule s{M, subgroupBasis(std::move(rows), M->orders())};
      if (seen.size() >= caps().submoduleCap) fail("TooLarge", "submodule lattice exceeds cap");
      if (seen.emplace(s.keyStr(), s).second) work.push_back(s);
    }
  }
  std::vector<Submodule> out;
  for (auto& [k, v] : seen) out.push_back(std::move(v));
  return out;
}

Ideal annihilator(const FinModPtr& M) {
  int m = M->dim(), k = M->ring()->dim();
  Mat A(k);
  Vec mout;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      for (int b = 0; b < k; ++b) A[b].push_back(M->basisAction(b)[i][j]);
      mout.push_back(M->orders()[j]);
    }
  Mat ker = kernelSubgroup(A, M->ring()->orders(), mout);
  std::vector<Elem> gens;
  for (const Vec& r : ker) gens.emplace_back(r);
  return Ideal::span(M->ring(), gens);
}

Ideal annihilatorOfElement(const FinModPtr& M, const Vec& x) {
  int m = M->dim(), k = M->ring()->dim();
  Mat A(k);
  Vec mout;
  for (int j = 0; j < m; ++j) {
    for (int b = 0; b < k; ++b) A[b].push_back(vecMat(x, M->basisAction(b))[j]);
    mout.push_back(M->orders()[j]);
  }
  Mat ker = kernelSubgroup(A, M->ring()->orders(), mout);
  std::vector<Elem> gens;
  for (const Vec& r : ker) gens.emplace_back(r);
  return Ideal::span(M->ring(), gens);
}

bool inSupport(const FinModPtr& M, const Ideal& P) { return P.contains(annihilator(M)); }

bool localizedNonzero(const FinModPtr& M, const Ideal& P) {
  Vec e = primitiveIdempotentOutside(M->ring(), P);
  Mat A = M->actionMatrix(e);
  for (const Vec& row : A)
    if (!isZeroVec(vecModRed(row, M->orders()))) return true;
  return false;
}

std::pair<FinModPtr, FiniteRingPtr> localizeModule(const FinModPtr& M, const Ideal& P) {
  const FiniteRingPtr& R = M->ring();
  Vec e = primitiveIdempotentOutside(R, P);
  auto [Q, hom] = localizeAtPrime(R, P);
  Mat A = M->actionMatrix(e);
  std::vector<Vec> gens(A.begin(), A.end());
  auto [N, incl] = subAsModule(Submodule::span(M, gens));
  // lift each basis element of the local ring back to R
  std::vector<Mat> act;
  for (int b = 0; b < Q->dim(); ++b) {
    Vec eb(Q->dim(), 0);
    eb[b] = 1;
    bool found = false;
    for (u64 i = 0; i < R->size() && !found; ++i) {
      Vec r = R->elemAt(i);
      if (fv(hom(Elem(r))) == eb) {
        act.push_back(N->actionMatrix(R->mulV(r, e)));
        found = true;
      }
    }
    if (!found) fail("MismatchBug", "residue map is not surjective");
  }
  FinModPtr L = FinMod::make(Q, N->orders(), std::move(act), M->label() + "@" + P.show());
  return {L, Q};
}

FinModPtr presentModule(const FiniteRingPtr& R, int gens,
                        const std::vector<std::vector<Elem>>& rel, std::string label) {
  FinModPtr F = FinMod::freeModule(R, gens);
  std::vector<Vec> rows;
  for (const auto& r : rel) {
    if ((int)r.size() != gens) fail("BadModulus", "relation arity mismatch");
    Vec row;
    for (const Elem& x : r)
      for (i64 c : fv(x)) row.push_back(c);
    rows.push_back(std::move(row));
  }
  auto [Q, proj] = quotientMod(Submodule::span(F, rows));
  return FinMod::make(R, Q->orders(), std::vector<Mat>(Q->basisActionAll()),
                      std::move(label));
}

}  // namespace qspec
