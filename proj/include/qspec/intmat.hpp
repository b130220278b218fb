#pragma once

#include <vector>

#include "qspec/error.hpp"

namespace qspec {

using i64 = long long;
using u64 = unsigned long long;
using Vec = std::vector<i64>;
using Mat = std::vector<Vec>;

i64 mulChecked(i64 a, i64 b);
i64 addChecked(i64 a, i64 b);
i64 floordiv(i64 a, i64 b);
i64 modpos(i64 a, i64 m);
i64 gcdPos(i64 a, i64 b);

Mat identityMat(int n);
Mat matMul(const Mat& a, const Mat& b);
Vec vecMat(const Vec& v, const Mat& m);
Vec vecAdd(const Vec& a, const Vec& b);
Vec vecScale(i64 c, const Vec& a);
Vec vecModRed(Vec v, const Vec& moduli);
bool isZeroVec(const Vec& v);

// Canonical basis of the subgroup of Z/s_1 x ... x Z/s_k generated by `rows`:
// the Hermite form of the integer lattice spanned by the rows together with
// diag(moduli). Result is a k x k upper triangular matrix whose pivots divide
// the moduli; entries above a pivot are reduced modulo that pivot. Two
// subgroups are equal iff their canonical bases are identical.
Mat subgroupBasis(Mat rows, const Vec& moduli);

bool inSubgroup(const Mat& hnf, const Vec& moduli, Vec v);
// Canonical coset representative (0 <= v_i < pivot_i after reduction).
Vec cosetReduce(const Mat& hnf, const Vec& moduli, Vec v);
u64 subgroupOrder(const Mat& hnf, const Vec& moduli);

// Solve a*H = v over Z for upper triangular full-rank H.
bool trySolveUpper(const Mat& H, const Vec& v, Vec& out);
Vec solveUpper(const Mat& H, const Vec& v);

// Smith normal form with transforms: U*A*V = diag(d).
struct Snf {
  Vec d;  // diagonal, d_i | d_{i+1}, nonnegative
  Mat U, V, Vinv;
};
Snf smithZ(Mat A);

// Row Hermite form with transform: U*A = H, U unimodular, H row echelon
// (zero rows last).
struct HnfT {
  Mat H, U;
};
HnfT hermiteTransform(Mat A);

// Subgroup {x in ⊕Z/min_i : x*A == 0 in ⊕Z/mout_j}, as canonical basis.
Mat kernelSubgroup(const Mat& A, const Vec& min, const Vec& mout);

// One solution of x*A == target in ⊕Z/mout (x over ⊕Z/min); false if none.
bool solveCongruence(const Mat& A, const Vec& min, const Vec& mout, const Vec& target, Vec& out);

// All elements of the subgroup with the given canonical basis; throws
// TooLarge past `cap`.
std::vector<Vec> subgroupElements(const Mat& hnf, const Vec& moduli, u64 cap);

// Intersection of two subgroups of ⊕Z/moduli given by canonical bases.
Mat subgroupIntersect(const Mat& H1, const Mat& H2, const Vec& moduli);

// Structure of the quotient (⊕Z/moduli) / subgroup as ⊕Z/orders with
// explicit coordinate maps: y = (x*proj) mod orders, x = y*lift (a
// representative). Orders of 1 are dropped.
struct QuotientGroup {
  Vec orders;
  Mat proj;  // k x m
  Mat lift;  // m x k
};
QuotientGroup quotientGroup(const Mat& hnf, const Vec& moduli);

}  // namespace qspec
