#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "msr/fq.hpp"

namespace msr {

/// Polynomial over F_q, coefficients low-degree-first.
using Poly = std::vector<std::uint32_t>;

/// Defines F_{q^M} = F_q[X] / (modulus).
struct FieldSpec {
  std::uint32_t q = 2;
  int degree = 1;  // M
  Poly modulus;    // monic, length M + 1

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

/// Throws DomainError unless q is prime and the modulus is monic, of degree
/// exactly M, and irreducible over F_q.
void validate(const FieldSpec& spec);

/// Rabin's irreducibility test.
bool is_irreducible(std::uint32_t q, const Poly& f);

/// First monic irreducible of degree M in lexicographic order of the
/// lower coefficients (constant term fastest-varying).
Poly find_irreducible(std::uint32_t q, int degree);

/// First irreducible trinomial X^M + X^a + 1 (smallest a), else the first
/// pentanomial X^M + X^a + X^b + X^c + 1 (a > b > c, ordered by a, b, c),
/// else find_irreducible. Sparse moduli keep reduction cheap for large M.
Poly find_sparse_irreducible(std::uint32_t q, int degree);

/// Parses "X^11+X^2+1" / "2x^3 + x + 4" into a coefficient list mod q.
Poly parse_poly(const std::string& text, std::uint32_t q);
std::string format_poly(const Poly& p);

class Gf;

/// Arithmetic context for one extension field. Always held by shared_ptr;
/// every bound element keeps its field alive.
class ExtensionField : public std::enable_shared_from_this<ExtensionField> {
 public:
  static std::shared_ptr<const ExtensionField> create(FieldSpec spec);

  const FieldSpec& spec() const { return spec_; }
  std::uint32_t q() const { return spec_.q; }
  int degree() const { return spec_.degree; }
  /// q^M, when it fits in 64 bits.
  std::optional<std::uint64_t> size() const;

  Gf zero() const;
  Gf one() const;
  Gf constant(std::int64_t c) const;
  Gf x() const;
  Gf element(Poly coords) const;
  /// Element whose coordinates are the base-q digits of index,
  /// constant coefficient least significant.
  Gf from_index(std::uint64_t index) const;

  // Coordinate-level kernels used by Gf.
  Poly add(const Poly& a, const Poly& b) const;
  Poly sub(const Poly& a, const Poly& b) const;
  Poly neg(const Poly& a) const;
  Poly mul(const Poly& a, const Poly& b) const;
  Poly scale(const Poly& a, std::uint32_t c) const;
  Poly inv(const Poly& a) const;
  Poly pow(const Poly& a, std::uint64_t e) const;
  /// a^q via a(X)^q = a(X^q) followed by reduction.
  Poly frobenius_step(const Poly& a) const;

 private:
  explicit ExtensionField(FieldSpec spec);
  Poly reduce(Poly wide) const;

  FieldSpec spec_;
  std::vector<int> modulus_support_;  // indices j < M with modulus[j] != 0
};

using FieldPtr = std::shared_ptr<const ExtensionField>;

/// Element of F_{q^M} in polynomial-basis coordinates.
///
/// Like Fq, a default-constructed or integer-constructed Gf is an unbound
/// literal for Eigen's internal use.
class Gf {
 public:
  Gf() = default;
  explicit Gf(int literal) : literal_(literal) {}
  Gf(FieldPtr field, Poly coords);

  bool bound() const { return field_ != nullptr; }
  const FieldPtr& field() const { return field_; }
  /// Length-M coordinate vector; requires a bound element.
  const Poly& coords() const;
  std::int64_t literal() const { return literal_; }

  friend Gf operator+(const Gf& a, const Gf& b);
  friend Gf operator-(const Gf& a, const Gf& b);
  friend Gf operator*(const Gf& a, const Gf& b);
  friend Gf operator/(const Gf& a, const Gf& b);
  friend Gf operator*(const Gf& a, const Fq& c);
  friend Gf operator*(const Fq& c, const Gf& a) { return a * c; }
  Gf operator-() const;
  Gf& operator+=(const Gf& b) { return *this = *this + b; }
  Gf& operator-=(const Gf& b) { return *this = *this - b; }
  Gf& operator*=(const Gf& b) { return *this = *this * b; }
  Gf& operator/=(const Gf& b) { return *this = *this / b; }

  friend bool operator==(const Gf& a, const Gf& b);
  friend bool operator!=(const Gf& a, const Gf& b) { return !(a == b); }

  friend std::ostream& operator<<(std::ostream& os, const Gf& a);

 private:
  FieldPtr field_;
  Poly coords_;
  std::int64_t literal_ = 0;
};

bool is_zero(const Gf& a);
Gf inverse(const Gf& a);
Gf pow(const Gf& a, std::uint64_t e);
/// a^{q^s}; composition adds exponents and s is taken mod M.
Gf frobenius(const Gf& a, std::uint64_t s);
/// Lift a bound-or-literal element into a field.
Gf lift(const Gf& a, const FieldPtr& field);
Gf embed(const Fq& c, const FieldPtr& field);
std::string to_string(const Gf& a);

using ExtMatrix = MatrixX<Gf>;
using ExtVector = RowVectorX<Gf>;

ExtMatrix embed(const GroundMatrix& a, const FieldPtr& field);
ExtMatrix zeros(Eigen::Index rows, Eigen::Index cols, const FieldPtr& field);
ExtVector zero_vector(Eigen::Index n, const FieldPtr& field);

}  // namespace msr

namespace Eigen {

template <>
struct NumTraits<msr::Gf> : GenericNumTraits<msr::Gf> {
  using Real = msr::Gf;
  using NonInteger = msr::Gf;
  using Literal = msr::Gf;
  using Nested = msr::Gf;
  enum {
    IsComplex = 0,
    IsInteger = 1,
    IsSigned = 0,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 8,
    MulCost = 32
  };
};

template <typename BinaryOp>
struct ScalarBinaryOpTraits<msr::Gf, msr::Fq, BinaryOp> {
  using ReturnType = msr::Gf;
};

}  // namespace Eigen
