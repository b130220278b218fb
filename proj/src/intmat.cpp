#include "qspec/intmat.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

#include "qspec/config.hpp"

namespace qspec {

Caps& caps() {
  static Caps c;
  return c;
}

i64 mulChecked(i64 a, i64 b) {
  i64 r;
  if (__builtin_mul_overflow(a, b, &r)) fail("TooLarge", "integer overflow in lattice arithmetic");
  return r;
}

i64 addChecked(i64 a, i64 b) {
  i64 r;
  if (__builtin_add_overflow(a, b, &r)) fail("TooLarge", "integer overflow in lattice arithmetic");
  return r;
}

i64 floordiv(i64 a, i64 b) {
  i64 q = a / b, r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

i64 modpos(i64 a, i64 m) {
  if (m <= 0) fail("TooLarge", "nonpositive modulus");
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

i64 gcdPos(i64 a, i64 b) { return std::gcd(std::llabs(a), std::llabs(b)); }

Mat identityMat(int n) {
  Mat m(n, Vec(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Mat matMul(const Mat& a, const Mat& b) {
  if (a.empty()) return {};
  size_t n = a.size(), k = a[0].size(), p = b.empty() ? 0 : b[0].size();
  Mat r(n, Vec(p, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t t = 0; t < k; ++t) {
      if (a[i][t] == 0) continue;
      for (size_t j = 0; j < p; ++j)
        r[i][j] = addChecked(r[i][j], mulChecked(a[i][t], b[t][j]));
    }
  return r;
}

Vec vecMat(const Vec& v, const Mat& m) {
  size_t p = m.empty() ? 0 : m[0].size();
  Vec r(p, 0);
  for (size_t t = 0; t < v.size(); ++t) {
    if (v[t] == 0) continue;
    for (size_t j = 0; j < p; ++j) r[j] = addChecked(r[j], mulChecked(v[t], m[t][j]));
  }
  return r;
}

Vec vecAdd(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = addChecked(a[i], b[i]);
  return r;
}

Vec vecScale(i64 c, const Vec& a) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = mulChecked(c, a[i]);
  return r;
}

Vec vecModRed(Vec v, const Vec& moduli) {
  for (size_t i = 0; i < v.size(); ++i) v[i] = modpos(v[i], moduli[i]);
  return v;
}

bool isZeroVec(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](i64 x) { return x == 0; });
}

namespace {

void subRowMultiple(Vec& target, const Vec& src, i64 q) {
  for (size_t j = 0; j < target.size(); ++j)
    target[j] = addChecked(target[j], -mulChecked(q, src[j]));
}

// In-place row Hermite form; optionally tracks U with U*A_orig = H.
void hermiteInPlace(Mat& rows, Mat* U) {
  size_t m = rows.size();
  size_t n = m == 0 ? 0 : rows[0].size();
  size_t top = 0;
  for (size_t col = 0; col < n && top < m; ++col) {
    while (true) {
      size_t best = m;
      for (size_t r = top; r < m; ++r)
        if (rows[r][col] != 0 &&
            (best == m || std::llabs(rows[r][col]) < std::llabs(rows[best][col])))
          best = r;
      if (best == m) break;  // column is zero below top
      std::swap(rows[top], rows[best]);
      if (U) std::swap((*U)[top], (*U)[best]);
      bool clean = true;
      for (size_t r = top + 1; r < m; ++r) {
        if (rows[r][col] == 0) continue;
        i64 q = floordiv(rows[r][col], rows[top][col]);
        subRowMultiple(rows[r], rows[top], q);
        if (U) subRowMultiple((*U)[r], (*U)[top], q);
        if (rows[r][col] != 0) clean = false;
      }
      if (clean) break;
    }
    if (rows[top][col] == 0) continue;
    if (rows[top][col] < 0) {
      for (auto& x : rows[top]) x = -x;
      if (U)
        for (auto& x : (*U)[top]) x = -x;
    }
    // reduce entries above the pivot
    for (size_t r = 0; r < top; ++r) {
      i64 q = floordiv(rows[r][col], rows[top][col]);
      if (q != 0) {
        subRowMultiple(rows[r], rows[top], q);
        if (U) subRowMultiple((*U)[r], (*U)[top], q);
      }
    }
    ++top;
  }
}

}  // namespace

Mat subgroupBasis(Mat rows, const Vec& moduli) {
  size_t k = moduli.size();
  Mat work;
  work.reserve(rows.size() + k);
  for (auto& r : rows) {
    if (r.size() != k) fail("TooLarge", "generator row has wrong length");
    Vec red = vecModRed(std::move(r), moduli);
    if (!isZeroVec(red)) work.push_back(std::move(red));
  }
  for (size_t j = 0; j < k; ++j) {
    Vec d(k, 0);
    d[j] = moduli[j];
    work.push_back(std::move(d));
  }
  hermiteInPlace(work, nullptr);
  work.resize(k);  // full rank: exactly k nonzero rows
  for (size_t i = 0; i < k; ++i)
    if (work[i][i] == 0) fail("TooLarge", "subgroup basis lost rank");
  return work;
}

Vec cosetReduce(const Mat& hnf, const Vec& moduli, Vec v) {
  v = vecModRed(std::move(v), moduli);
  for (size_t i = 0; i < hnf.size(); ++i) {
    i64 q = floordiv(v[i], hnf[i][i]);
    if (q != 0) subRowMultiple(v, hnf[i], q);
  }
  return v;
}

bool inSubgroup(const Mat& hnf, const Vec& moduli, Vec v) {
  return isZeroVec(cosetReduce(hnf, moduli, std::move(v)));
}

u64 subgroupOrder(const Mat& hnf, const Vec& moduli) {
  u64 num = 1;
  for (i64 m : moduli) {
    u64 r;
    if (__builtin_mul_overflow(num, (u64)m, &r)) fail("TooLarge", "ambient group too large");
    num = r;
  }
  u64 den = 1;
  for (size_t i = 0; i < hnf.size(); ++i) den *= (u64)hnf[i][i];
  return num / den;
}

bool trySolveUpper(const Mat& H, const Vec& v, Vec& out) {
  size_t k = H.size();
  out.assign(k, 0);
  Vec rem = v;
  for (size_t j = 0; j < k; ++j) {
    i64 p = H[j][j];
    if (rem[j] % p != 0) return false;
    i64 a = rem[j] / p;
    out[j] = a;
    if (a != 0) subRowMultiple(rem, H[j], a);
  }
  return isZeroVec(rem);
}

Vec solveUpper(const Mat& H, const Vec& v) {
  Vec out;
  if (!trySolveUpper(H, v, out)) fail("TooLarge", "vector not in lattice");
  return out;
}

HnfT hermiteTransform(Mat A) {
  Mat U = identityMat((int)A.size());
  hermiteInPlace(A, &U);
  return {std::move(A), std::move(U)};
}

Snf smithZ(Mat A) {
  size_t m = A.size(), n = m == 0 ? 0 : A[0].size();
  Mat U = identityMat((int)m), V = identityMat((int)n), Vinv = identityMat((int)n);
  auto colOp = [&](size_t dst, size_t src, i64 q) {  // C_dst -= q*C_src
    for (size_t i = 0; i < m; ++i) A[i][dst] = addChecked(A[i][dst], -mulChecked(q, A[i][src]));
    for (size_t i = 0; i < n; ++i) V[i][dst] = addChecked(V[i][dst], -mulChecked(q, V[i][src]));
    for (size_t j = 0; j < n; ++j) Vinv[src][j] = addChecked(Vinv[src][j], mulChecked(q, Vinv[dst][j]));
  };
  auto colSwap = [&](size_t a, size_t b) {
    for (size_t i = 0; i < m; ++i) std::swap(A[i][a], A[i][b]);
    for (size_t i = 0; i < n; ++i) std::swap(V[i][a], V[i][b]);
    std::swap(Vinv[a], Vinv[b]);
  };
  auto colNeg = [&](size_t a) {
    for (size_t i = 0; i < m; ++i) A[i][a] = -A[i][a];
    for (size_t i = 0; i < n; ++i) V[i][a] = -V[i][a];
    for (size_t j = 0; j < n; ++j) Vinv[a][j] = -Vinv[a][j];
  };

  size_t t = 0;
  while (t < m && t < n) {
    // locate smallest nonzero entry in the remaining block
    size_t pi = m, pj = n;
    for (size_t i = t; i < m; ++i)
      for (size_t j = t; j < n; ++j)
        if (A[i][j] != 0 && (pi == m || std::llabs(A[i][j]) < std::llabs(A[pi][pj]))) {
          pi = i;
          pj = j;
        }
    if (pi == m) break;  // rest is zero
    if (pi != t) {
      std::swap(A[pi], A[t]);
      std::swap(U[pi], U[t]);
    }
    if (pj != t) colSwap(pj, t);
    bool again = false;
    for (size_t i = t + 1; i < m; ++i) {
      if (A[i][t] == 0) continue;
      i64 q = floordiv(A[i][t], A[t][t]);
      subRowMultiple(A[i], A[t], q);
      subRowMultiple(U[i], U[t], q);
      if (A[i][t] != 0) again = true;
    }
    for (size_t j = t + 1; j < n; ++j) {
      if (A[t][j] == 0) continue;
      i64 q = floordiv(A[t][j], A[t][t]);
      colOp(j, t, q);
      if (A[t][j] != 0) again = true;
    }
    if (again) continue;
    if (A[t][t] < 0) colNeg(t);
    // enforce divisibility of the remaining block by the pivot
    bool redo = false;
    for (size_t i = t + 1; i < m && !redo; ++i)
      for (size_t j = t + 1; j < n && !redo; ++j)
        if (A[i][j] % A[t][t] != 0) {
          // add row i to row t, then restart the pivot step
          for (size_t c = 0; c < n; ++c) A[t][c] = addChecked(A[t][c], A[i][c]);
          for (size_t c = 0; c < m; ++c) U[t][c] = addChecked(U[t][c], U[i][c]);
          redo = true;
        }
    if (redo) continue;
    ++t;
  }
  Vec d(std::min(m, n), 0);
  for (size_t i = 0; i < d.size(); ++i) d[i] = A[i][i];
  return {std::move(d), std::move(U), std::move(V), std::move(Vinv)};
}

Mat kernelSubgroup(const Mat& A, const Vec& min, const Vec& mout) {
  size_t nin = min.size(), nout = mout.size();
  Mat B;
  B.reserve(nin + nout);
  for (size_t i = 0; i < nin; ++i) {
    if (A[i].size() != nout) fail("TooLarge", "kernel map has wrong shape");
    B.push_back(A[i]);
  }
  for (size_t j = 0; j < nout; ++j) {
    Vec d(nout, 0);
    d[j] = mout[j];
    B.push_back(std::move(d));
  }
  HnfT ht = hermiteTransform(std::move(B));
  Mat gens;
  for (size_t r = 0; r < ht.H.size(); ++r)
    if (isZeroVec(ht.H[r])) gens.push_back(Vec(ht.U[r].begin(), ht.U[r].begin() + nin));
  return subgroupBasis(std::move(gens), min);
}

bool solveCongruence(const Mat& A, const Vec& min, const Vec& mout, const Vec& target, Vec& out) {
  size_t nin = min.size(), nout = mout.size();
  Mat B;
  B.reserve(nin + nout);
  for (size_t i = 0; i < nin; ++i) B.push_back(A[i]);
  for (size_t j = 0; j < nout; ++j) {
    Vec d(nout, 0);
    d[j] = mout[j];
    B.push_back(std::move(d));
  }
  HnfT ht = hermiteTransform(std::move(B));
  // forward-eliminate target against the echelon rows
  Vec rem = target;
  Vec coeff(ht.H.size(), 0);
  for (size_t r = 0; r < ht.H.size(); ++r) {
    size_t piv = nout;
    for (size_t c = 0; c < nout; ++c)
      if (ht.H[r][c] != 0) {
        piv = c;
        break;
      }
    if (piv == nout) break;
    i64 q = floordiv(rem[piv], ht.H[r][piv]);
    if (rem[piv] % ht.H[r][piv] != 0) return false;
    q = rem[piv] / ht.H[r][piv];
    coeff[r] = q;
    if (q != 0) subRowMultiple(rem, ht.H[r], q);
  }
  if (!isZeroVec(rem)) return false;
  Vec x(nin, 0);
  for (size_t r = 0; r < coeff.size(); ++r) {
    if (coeff[r] == 0) continue;
    for (size_t j = 0; j < nin; ++j) x[j] = addChecked(x[j], mulChecked(coeff[r], ht.U[r][j]));
  }
  out = vecModRed(std::move(x), min);
  return true;
}

Mat subgroupIntersect(const Mat& H1, const Mat& H2, const Vec& moduli) {
  size_t k = moduli.size();
  Mat B;
  B.reserve(2 * k);
  for (size_t i = 0; i < k; ++i) B.push_back(H1[i]);
  for (size_t i = 0; i < k; ++i) {
    Vec neg(k);
    for (size_t j = 0; j < k; ++j) neg[j] = -H2[i][j];
    B.push_back(std::move(neg));
  }
  HnfT ht = hermiteTransform(std::move(B));
  Mat gens;
  for (size_t r = 0; r < ht.H.size(); ++r)
    if (isZeroVec(ht.H[r])) {
      Vec a(ht.U[r].begin(), ht.U[r].begin() + k);
      gens.push_back(vecMat(a, H1));
    }
  return subgroupBasis(std::move(gens), moduli);
}

std::vector<Vec> subgroupElements(const Mat& hnf, const Vec& moduli, u64 cap) {
  u64 n = subgroupOrder(hnf, moduli);
  if (n > cap) fail("TooLarge", "subgroup enumeration exceeds cap");
  size_t k = moduli.size();
  Vec counts(k);
  for (size_t i = 0; i < k; ++i) counts[i] = moduli[i] / hnf[i][i];
  std::vector<Vec> out;
  out.reserve(n);
  Vec c(k, 0);
  for (;;) {
    Vec v(k, 0);
    for (size_t i = 0; i < k; ++i)
      if (c[i]) v = vecAdd(v, vecScale(c[i], hnf[i]));
    out.push_back(vecModRed(std::move(v), moduli));
    size_t i = 0;
    while (i < k && ++c[i] == counts[i]) c[i++] = 0;
    if (i == k) break;
  }
  return out;
}

QuotientGroup quotientGroup(const Mat& hnf, const Vec& moduli) {
  size_t k = moduli.size();
  Snf s = smithZ(hnf);
  QuotientGroup q;
  for (size_t i = 0; i < k; ++i) {
    if (s.d[i] <= 0) fail("TooLarge", "quotient of non-full-rank lattice");
    if (s.d[i] == 1) continue;
    q.orders.push_back(s.d[i]);
  }
  size_t mdim = q.orders.size();
  q.proj.assign(k, Vec(mdim, 0));
  q.lift.assign(mdim, Vec(k, 0));
  size_t c = 0;
  for (size_t i = 0; i < k; ++i) {
    if (s.d[i] == 1) continue;
    for (size_t r = 0; r < k; ++r) q.proj[r][c] = s.V[r][i];
    for (size_t j = 0; j < k; ++j) q.lift[c][j] = s.Vinv[i][j];
    ++c;
  }
  return q;
}

}  // namespace qspec
