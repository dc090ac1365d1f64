#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <iosfwd>

namespace msr {

/// Element of the prime field F_q.
///
/// An element either carries its modulus q, or is an unbound integer
/// literal (q == 0). Literals exist so that Eigen can build Scalar(0) and
/// Scalar(1) internally; they adopt the modulus of the first bound operand
/// they meet. Library functions only ever hand out bound elements.
class Fq {
 public:
  Fq() = default;
  explicit Fq(int literal) : value_(literal) {}
  Fq(std::int64_t value, std::uint32_t q);

  std::uint32_t modulus() const { return q_; }
  bool bound() const { return q_ != 0; }
  /// Canonical representative in [0, q); for literals, the literal itself.
  std::int64_t value() const { return value_; }

  friend Fq operator+(const Fq& a, const Fq& b);
  friend Fq operator-(const Fq& a, const Fq& b);
  friend Fq operator*(const Fq& a, const Fq& b);
  friend Fq operator/(const Fq& a, const Fq& b);
  Fq operator-() const;
  Fq& operator+=(const Fq& b) { return *this = *this + b; }
  Fq& operator-=(const Fq& b) { return *this = *this - b; }
  Fq& operator*=(const Fq& b) { return *this = *this * b; }
  Fq& operator/=(const Fq& b) { return *this = *this / b; }

  friend bool operator==(const Fq& a, const Fq& b);
  friend bool operator!=(const Fq& a, const Fq& b) { return !(a == b); }

  friend std::ostream& operator<<(std::ostream& os, const Fq& a);

 private:
  std::int64_t value_ = 0;
  std::uint32_t q_ = 0;
};

bool is_zero(const Fq& a);
Fq inverse(const Fq& a);

}  // namespace msr

namespace Eigen {

template <>
struct NumTraits<msr::Fq> : GenericNumTraits<msr::Fq> {
  using Real = msr::Fq;
  using NonInteger = msr::Fq;
  using Literal = msr::Fq;
  using Nested = msr::Fq;
  enum {
    IsComplex = 0,
    IsInteger = 1,
    IsSigned = 0,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 2,
    MulCost = 3
  };
};

}  // namespace Eigen

namespace msr {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using RowVectorX = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;

using GroundMatrix = MatrixX<Fq>;
using GroundVector = VectorX<Fq>;

}  // namespace msr
