#include <ostream>
#include <string>
#include <tuple>
#include <utility>

#include "msr/errors.hpp"
#include "msr/fq.hpp"

namespace msr {

namespace {

std::int64_t reduce(std::int64_t v, std::uint32_t q) {
  const auto m = static_cast<std::int64_t>(q);
  v %= m;
  return v < 0 ? v + m : v;
}

std::uint32_t common_modulus(const Fq& a, const Fq& b) {
  if (a.bound() && b.bound() && a.modulus() != b.modulus()) {
    throw FieldMismatch("F_" + std::to_string(a.modulus()) + " vs F_" + std::to_string(b.modulus()));
  }
  return a.bound() ? a.modulus() : b.modulus();
}

}  // namespace

Fq::Fq(std::int64_t value, std::uint32_t q) : value_(reduce(value, q)), q_(q) {
  if (q < 2) throw DomainError("ground field modulus must be at least 2");
}

Fq operator+(const Fq& a, const Fq& b) {
  const std::uint32_t q = common_modulus(a, b);
  if (!q) return Fq(static_cast<int>(a.value_ + b.value_));
  return Fq(reduce(a.value_, q) + reduce(b.value_, q), q);
}

Fq operator-(const Fq& a, const Fq& b) {
  const std::uint32_t q = common_modulus(a, b);
  if (!q) return Fq(static_cast<int>(a.value_ - b.value_));
  return Fq(reduce(a.value_, q) - reduce(b.value_, q), q);
}

Fq operator*(const Fq& a, const Fq& b) {
  const std::uint32_t q = common_modulus(a, b);
  if (!q) return Fq(static_cast<int>(a.value_ * b.value_));
  return Fq(reduce(a.value_, q) * reduce(b.value_, q), q);
}

Fq operator/(const Fq& a, const Fq& b) { return a * inverse(b); }

Fq Fq::operator-() const { return Fq(0) - *this; }

bool operator==(const Fq& a, const Fq& b) {
  const std::uint32_t q = common_modulus(a, b);
  if (!q) return a.value_ == b.value_;
  return reduce(a.value_, q) == reduce(b.value_, q);
}

std::ostream& operator<<(std::ostream& os, const Fq& a) { return os << a.value(); }

bool is_zero(const Fq& a) { return a.value() == 0; }

Fq inverse(const Fq& a) {
  if (is_zero(a)) throw DivisionByZero();
  if (!a.bound()) {
    if (a.value() == 1 || a.value() == -1) return a;
    throw DomainError("cannot invert an unbound literal other than +-1");
  }
  // Extended Euclid on (value, q).
  std::int64_t r0 = a.modulus(), r1 = a.value(), t0 = 0, t1 = 1;
  while (r1 != 0) {
    const std::int64_t quot = r0 / r1;
    std::tie(r0, r1) = std::pair{r1, r0 - quot * r1};
    std::tie(t0, t1) = std::pair{t1, t0 - quot * t1};
  }
  if (r0 != 1) throw DomainError("element is not invertible modulo " + std::to_string(a.modulus()));
  return Fq(t0, a.modulus());
}

}  // namespace msr
