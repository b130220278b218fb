#include "qspec/ring.hpp"

#include <numeric>
#include <sstream>

#include "qspec/config.hpp"

namespace qspec {

const Vec& fv(const Elem& e) { return std::get<Vec>(e); }

namespace {

bool isPrime(i64 n) {
  if (n < 2) return false;
  for (i64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Minimal F_p polynomial arithmetic for finding an irreducible modulus.
using Fp = std::vector<i64>;  // low to high, normalized

Fp fpTrim(Fp a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

Fp fpMod(Fp a, const Fp& m, i64 p) {
  a = fpTrim(std::move(a));
  while (a.size() >= m.size()) {
    i64 lead = a.back();  // m is monic
    size_t shift = a.size() - m.size();
    for (size_t i = 0; i < m.size(); ++i) a[i + shift] = modpos(a[i + shift] - lead * m[i], p);
    a = fpTrim(std::move(a));
  }
  return a;
}

Fp fpMul(const Fp& a, const Fp& b, i64 p) {
  if (a.empty() || b.empty()) return {};
  Fp r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = modpos(r[i + j] + a[i] * b[j], p);
  return fpTrim(std::move(r));
}

// Enumerate monic degree-d polynomials in lexicographic coefficient order.
bool nextCoeffs(std::vector<i64>& c, i64 p) {
  for (size_t i = 0; i < c.size(); ++i) {
    if (++c[i] < p) return true;
    c[i] = 0;
  }
  return false;
}

bool fpIrreducible(const Fp& f, i64 p) {
  size_t d = f.size() - 1;
  if (d == 0) return false;
  for (size_t e = 1; 2 * e <= d; ++e) {
    std::vector<i64> c(e, 0);
    do {
      Fp g = c;
      g.push_back(1);  // monic divisor candidate
      // trial division: f mod g == 0 ?
      if (fpMod(f, g, p).empty()) return false;
    } while (nextCoeffs(c, p));
  }
  return true;
}

Fp findIrreducible(i64 p, size_t m) {
  std::vector<i64> c(m, 0);
  do {
    Fp f = c;
    f.push_back(1);
    if (fpIrreducible(f, p)) return f;
  } while (nextCoeffs(c, p));
  fail("BadModulus", "no irreducible polynomial found");
}

}  // namespace

FiniteRing::FiniteRing(Vec orders, std::vector<std::vector<Vec>> mul, Vec unit, std::string key)
    : Ring(Kind::Finite, std::move(key)),
      orders_(std::move(orders)),
      mul_(std::move(mul)),
      one_(std::move(unit)) {
  for (i64 d : orders_) {
    if (d < 1) fail("BadModulus", "additive orders must be positive");
    u64 s;
    if (__builtin_mul_overflow(size_, (u64)d, &s) || s > caps().elementCap)
      fail("TooLarge", "finite ring exceeds the element cap");
    size_ = s;
  }
  one_ = vecModRed(std::move(one_), orders_);
  for (auto& row : mul_)
    for (auto& e : row) e = vecModRed(std::move(e), orders_);
  verifyAxioms();
  basisMult_.reserve(orders_.size());
  for (size_t b = 0; b < orders_.size(); ++b) basisMult_.push_back(Mat(mul_[b]));
  computeFlags();
}

void FiniteRing::verifyAxioms() const {
  size_t k = orders_.size();
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j) {
      if (mul_[i][j] != mul_[j][i]) fail("NonCommutative", "basis products are not symmetric");
      // structure constants must respect the additive orders
      Vec t = mul_[i][j];
      for (size_t c = 0; c < k; ++c)
        if (modpos(orders_[i] * t[c], orders_[c]) != 0)
          fail("NonAssociative", "structure constants ignore additive orders");
    }
  Vec ei(k, 0);
  for (size_t i = 0; i < k; ++i) {
    std::fill(ei.begin(), ei.end(), 0);
    ei[i] = 1;
    if (mulV(one_, ei) != ei) fail("NonAssociative", "unit element fails on basis");
  }
  Vec ej(k, 0), el(k, 0);
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j)
      for (size_t l = 0; l < k; ++l) {
        std::fill(ei.begin(), ei.end(), 0);
        ei[i] = 1;
        std::fill(ej.begin(), ej.end(), 0);
        ej[j] = 1;
        std::fill(el.begin(), el.end(), 0);
        el[l] = 1;
        if (mulV(mulV(ei, ej), el) != mulV(ei, mulV(ej, el)))
          fail("NonAssociative", "basis products are not associative");
      }
}

void FiniteRing::computeFlags() {
  domain_ = false;
  field_ = false;
  pid_ = false;
  if (size_ < 2) return;
  // finite commutative: domain <=> field <=> every nonzero element is a unit
  for (u64 i = 1; i < size_; ++i)
    if (!isUnitV(elemAt(i))) return;
  domain_ = field_ = pid_ = true;
}

Vec FiniteRing::addV(const Vec& a, const Vec& b) const {
  Vec r(orders_.size());
  for (size_t i = 0; i < r.size(); ++i) r[i] = modpos(a[i] + b[i], orders_[i]);
  return r;
}

Vec FiniteRing::negV(const Vec& a) const {
  Vec r(orders_.size());
  for (size_t i = 0; i < r.size(); ++i) r[i] = modpos(-a[i], orders_[i]);
  return r;
}

Vec FiniteRing::scaleV(i64 n, const Vec& a) const {
  Vec r(orders_.size());
  for (size_t i = 0; i < r.size(); ++i) r[i] = modpos(modpos(n, orders_[i]) * a[i], orders_[i]);
  return r;
}

Vec FiniteRing::mulV(const Vec& a, const Vec& b) const {
  size_t k = orders_.size();
  Vec r(k, 0);
  for (size_t i = 0; i < k; ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < k; ++j) {
      if (b[j] == 0) continue;
      i64 s = a[i] * b[j];
      const Vec& sc = mul_[i][j];
      for (size_t t = 0; t < k; ++t)
        r[t] = modpos(r[t] + (s % orders_[t]) * sc[t], orders_[t]);
    }
  }
  return r;
}

Vec FiniteRing::powV(const Vec& a, u64 e) const {
  Vec r = one_, base = a;
  while (e) {
    if (e & 1) r = mulV(r, base);
    base = mulV(base, base);
    e >>= 1;
  }
  return r;
}

Vec FiniteRing::elemAt(u64 idx) const {
  Vec v(orders_.size());
  for (size_t i = 0; i < v.size(); ++i) {
    v[i] = (i64)(idx % (u64)orders_[i]);
    idx /= (u64)orders_[i];
  }
  return v;
}

u64 FiniteRing::indexOf(const Vec& v) const {
  u64 idx = 0, stride = 1;
  for (size_t i = 0; i < v.size(); ++i) {
    idx += (u64)modpos(v[i], orders_[i]) * stride;
    stride *= (u64)orders_[i];
  }
  return idx;
}

Mat FiniteRing::multMatrix(const Vec& r) const {
  size_t k = orders_.size();
  Mat m(k, Vec(k, 0));
  Vec ec(k, 0);
  for (size_t c = 0; c < k; ++c) {
    std::fill(ec.begin(), ec.end(), 0);
    ec[c] = 1;
    m[c] = mulV(r, ec);
  }
  return m;
}

std::optional<Vec> FiniteRing::inverseV(const Vec& v) const {
  Vec out;
  if (solveCongruence(multMatrix(v), orders_, orders_, one_, out)) return out;
  return std::nullopt;
}

std::vector<Vec> FiniteRing::idempotents() const {
  std::vector<Vec> res;
  for (u64 i = 0; i < size_; ++i) {
    Vec v = elemAt(i);
    if (mulV(v, v) == v) res.push_back(std::move(v));
  }
  return res;
}

i64 FiniteRing::characteristic() const {
  i64 ch = 1;
  for (size_t i = 0; i < orders_.size(); ++i) {
    if (one_[i] == 0) continue;
    i64 ord = orders_[i] / gcdPos(orders_[i], one_[i]);
    ch = ch / gcdPos(ch, ord) * ord;
  }
  return ch;
}

std::string FiniteRing::showV(const Vec& v) const {
  if (v.size() == 1) return std::to_string(v[0]);
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ")";
  return os.str();
}

Elem FiniteRing::add(const Elem& a, const Elem& b) const { return addV(fv(a), fv(b)); }
Elem FiniteRing::neg(const Elem& a) const { return negV(fv(a)); }
Elem FiniteRing::mul(const Elem& a, const Elem& b) const { return mulV(fv(a), fv(b)); }
bool FiniteRing::eq(const Elem& a, const Elem& b) const { return fv(a) == fv(b); }
std::string FiniteRing::show(const Elem& a) const { return showV(fv(a)); }

FiniteRingPtr FiniteRing::zmod(i64 n) {
  if (n < 1) fail("BadModulus", "zmod modulus must be >= 1");
  std::vector<std::vector<Vec>> mul{{Vec{n > 1 ? 1 : 0}}};
  return FiniteRingPtr(new FiniteRing({n}, std::move(mul), {1}, "zmod:" + std::to_string(n)));
}

FiniteRingPtr FiniteRing::gf(i64 q) {
  if (q < 2) fail("BadModulus", "gf order must be >= 2");
  i64 p = 2;
  while (q % p != 0) {
    ++p;
    if (p * p > q) {
      p = q;
      break;
    }
  }
  if (!isPrime(p)) fail("BadModulus", "gf order is not a prime power");
  size_t m = 0;
  i64 t = q;
  while (t > 1) {
    if (t % p != 0) fail("BadModulus", "gf order is not a prime power");
    t /= p;
    ++m;
  }
  Fp mod = findIrreducible(p, m);
  // power table x^0 .. x^{2m-2} mod the modulus
  std::vector<Fp> pw(2 * m - 1);
  pw[0] = {1};
  for (size_t e = 1; e < pw.size(); ++e) pw[e] = fpMod(fpMul(pw[e - 1], {0, 1}, p), mod, p);
  Vec orders(m, p);
  std::vector<std::vector<Vec>> mul(m, std::vector<Vec>(m));
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < m; ++j) {
      Vec c(m, 0);
      const Fp& v = pw[i + j];
      for (size_t d = 0; d < v.size(); ++d) c[d] = v[d];
      mul[i][j] = c;
    }
  Vec unit(m, 0);
  unit[0] = 1;
  return FiniteRingPtr(
      new FiniteRing(std::move(orders), std::move(mul), std::move(unit), "gf:" + std::to_string(q)));
}

FiniteRingPtr FiniteRing::table(Vec orders, std::vector<std::vector<Vec>> mul, Vec unit,
                                std::string label) {
  return FiniteRingPtr(
      new FiniteRing(std::move(orders), std::move(mul), std::move(unit), "table:" + label));
}

FiniteRingPtr FiniteRing::product(std::vector<FiniteRingPtr> factors) {
  Vec orders;
  std::vector<std::pair<int, int>> spans;
  std::string key = "prod(";
  for (size_t f = 0; f < factors.size(); ++f) {
    spans.emplace_back((int)orders.size(), factors[f]->dim());
    for (i64 d : factors[f]->orders()) orders.push_back(d);
    key += (f ? "|" : "") + factors[f]->key();
  }
  key += ")";
  size_t k = orders.size();
  std::vector<std::vector<Vec>> mul(k, std::vector<Vec>(k, Vec(k, 0)));
  Vec unit(k, 0);
  for (size_t f = 0; f < factors.size(); ++f) {
    int off = spans[f].first, d = spans[f].second;
    for (int i = 0; i < d; ++i) {
      unit[off + i] = factors[f]->oneV()[i];
      for (int j = 0; j < d; ++j) {
        Vec ei(d, 0), ej(d, 0);
        ei[i] = 1;
        ej[j] = 1;
        Vec pr = factors[f]->mulV(ei, ej);
        for (int t = 0; t < d; ++t) mul[off + i][off + j][off + t] = pr[t];
      }
    }
  }
  auto r = FiniteRingPtr(new FiniteRing(std::move(orders), std::move(mul), std::move(unit), key));
  const_cast<FiniteRing*>(r.get())->spans_ = spans;
  const_cast<FiniteRing*>(r.get())->factors_ = std::move(factors);
  return r;
}

}  // namespace qspec
