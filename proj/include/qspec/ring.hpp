#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qspec/intmat.hpp"

namespace qspec {

// Ring elements. Finite kinds use additive coordinates over Z/d_1 x ... x
// Z/d_k; polynomial kinds use coefficient sequences over the base field;
// localized kinds are num / f^k with f not dividing num.
struct PolyE {
  std::vector<Vec> c;  // low to high, no trailing zero coefficients
  bool operator==(const PolyE&) const = default;
};
struct LocE {
  PolyE num;
  i64 k = 0;
  bool operator==(const LocE&) const = default;
};
using Elem = std::variant<Vec, PolyE, LocE>;

class Ring;
class FiniteRing;
using RingPtr = std::shared_ptr<const Ring>;
using FiniteRingPtr = std::shared_ptr<const FiniteRing>;

class Ring {
public:
  enum class Kind { Finite, Poly, Localized };

  virtual ~Ring() = default;

  Kind kind() const { return kind_; }
  bool finite() const { return kind_ == Kind::Finite; }
  bool isDomain() const { return domain_; }
  bool isPid() const { return pid_; }
  bool isField() const { return field_; }
  // Canonical descriptor string; rings are "the same" iff keys match.
  const std::string& key() const { return key_; }

  virtual Elem zero() const = 0;
  virtual Elem one() const = 0;
  virtual Elem add(const Elem&, const Elem&) const = 0;
  virtual Elem neg(const Elem&) const = 0;
  virtual Elem mul(const Elem&, const Elem&) const = 0;
  virtual bool eq(const Elem&, const Elem&) const = 0;
  virtual std::string show(const Elem&) const = 0;

  Elem sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }
  bool isZero(const Elem& a) const { return eq(a, zero()); }
  bool isOne(const Elem& a) const { return eq(a, one()); }

protected:
  Ring(Kind k, std::string key) : kind_(k), key_(std::move(key)) {}
  Kind kind_;
  std::string key_;
  bool domain_ = false, pid_ = false, field_ = false;
};

// A ring homomorphism value: source, target and the underlying map.
struct RingHom {
  RingPtr src, dst;
  std::function<Elem(const Elem&)> map;
  std::string name;
  Elem operator()(const Elem& x) const { return map(x); }
};

// Finite commutative ring in structure-constant presentation.
class FiniteRing final : public Ring, public std::enable_shared_from_this<FiniteRing> {
public:
  static FiniteRingPtr zmod(i64 n);
  static FiniteRingPtr gf(i64 q);
  // Raw presentation: additive cyclic orders, basis products, unit coords.
  static FiniteRingPtr table(Vec orders, std::vector<std::vector<Vec>> mul, Vec unit,
                             std::string label);
  static FiniteRingPtr product(std::vector<FiniteRingPtr> factors);

  int dim() const { return (int)orders_.size(); }
  const Vec& orders() const { return orders_; }
  u64 size() const { return size_; }
  i64 characteristic() const;

  Vec zeroV() const { return Vec(orders_.size(), 0); }
  const Vec& oneV() const { return one_; }
  Vec addV(const Vec& a, const Vec& b) const;
  Vec negV(const Vec& a) const;
  Vec mulV(const Vec& a, const Vec& b) const;
  Vec scaleV(i64 n, const Vec& a) const;
  Vec powV(const Vec& a, u64 e) const;
  Vec fromInt(i64 n) const { return scaleV(n, one_); }

  Vec elemAt(u64 idx) const;
  u64 indexOf(const Vec& v) const;

  // k x k integer matrix of multiplication by r on additive coordinates.
  Mat multMatrix(const Vec& r) const;
  const Mat& basisMult(int b) const { return basisMult_[b]; }

  bool isUnitV(const Vec& v) const { return inverseV(v).has_value(); }
  std::optional<Vec> inverseV(const Vec& v) const;
  std::vector<Vec> idempotents() const;

  // For product rings: factor boundaries (coordinate offsets), else empty.
  const std::vector<std::pair<int, int>>& factorSpans() const { return spans_; }
  const std::vector<FiniteRingPtr>& factors() const { return factors_; }

  std::string showV(const Vec& v) const;

  // Ring interface
  Elem zero() const override { return zeroV(); }
  Elem one() const override { return one_; }
  Elem add(const Elem& a, const Elem& b) const override;
  Elem neg(const Elem& a) const override;
  Elem mul(const Elem& a, const Elem& b) const override;
  bool eq(const Elem& a, const Elem& b) const override;
  std::string show(const Elem& a) const override;

private:
  FiniteRing(Vec orders, std::vector<std::vector<Vec>> mul, Vec unit, std::string key);
  void verifyAxioms() const;
  void computeFlags();

  Vec orders_;
  std::vector<std::vector<Vec>> mul_;  // mul_[i][j] = e_i * e_j
  Vec one_;
  u64 size_ = 1;
  std::vector<Mat> basisMult_;
  std::vector<std::pair<int, int>> spans_;
  std::vector<FiniteRingPtr> factors_;
};

const Vec& fv(const Elem& e);

}  // namespace qspec
