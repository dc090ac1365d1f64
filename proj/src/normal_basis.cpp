#include "msr/normal_basis.hpp"

#include "msr/errors.hpp"
#include "msr/linalg.hpp"

namespace msr {

PrimeFactorization group_order_factorization(const ExtensionField& field) {
  const auto size = field.size();
  if (!size) {
    throw FactorizationInfeasible("q^M - 1 exceeds 64 bits (q = " + std::to_string(field.q()) +
                                  ", M = " + std::to_string(field.degree()) + ")");
  }
  if (*size - 1 == 1) return {};
  return factorize(*size - 1);
}

bool is_primitive(const Gf& a, const PrimeFactorization& order_factors) {
  if (!a.bound()) throw DomainError("is_primitive needs a bound element");
  if (is_zero(a)) throw DomainError("zero is never primitive");
  const std::uint64_t order = *a.field()->size() - 1;
  const Gf one = a.field()->one();
  for (const auto& [p, e] : order_factors) {
    (void)e;
    if (pow(a, order / p) == one) return false;
  }
  return true;
}

bool is_primitive(const Gf& a) {
  if (!a.bound()) throw DomainError("is_primitive needs a bound element");
  if (is_zero(a)) throw DomainError("zero is never primitive");
  return is_primitive(a, group_order_factorization(*a.field()));
}

namespace {

GroundMatrix conjugate_matrix(const Gf& a, std::vector<Gf>* conjugates) {
  const auto& f = a.field();
  const int m = f->degree();
  GroundMatrix b(m, m);
  Gf c = a;
  for (int i = 0; i < m; ++i) {
    for (int r = 0; r < m; ++r) b(r, i) = Fq(c.coords()[r], f->q());
    if (conjugates) conjugates->push_back(c);
    c = frobenius(c, 1);
  }
  return b;
}

}  // namespace

bool is_normal(const Gf& a) {
  if (!a.bound()) throw DomainError("is_normal needs a bound element");
  if (is_zero(a)) return false;
  return rank(conjugate_matrix(a, nullptr)) == a.field()->degree();
}

Gf find_primitive_normal(const FieldPtr& field, bool assume_primitive) {
  std::optional<PrimeFactorization> factors;
  if (!assume_primitive) factors = group_order_factorization(*field);
  const auto size = field->size();
  if (!size) throw FactorizationInfeasible("field too large to enumerate");
  for (std::uint64_t index = 1; index < *size; ++index) {
    const Gf a = field->from_index(index);
    if (!is_normal(a)) continue;
    if (factors && !is_primitive(a, *factors)) continue;
    return a;
  }
  throw ConstructionError("no primitive normal element found");
}

GroundVector poly_coords(const Gf& a) {
  const auto& c = a.coords();
  GroundVector v(static_cast<Eigen::Index>(c.size()));
  for (std::size_t i = 0; i < c.size(); ++i) v(static_cast<Eigen::Index>(i)) = Fq(c[i], a.field()->q());
  return v;
}

GroundMatrix poly_coordinate_matrix(const ExtVector& x) {
  if (x.size() == 0) return GroundMatrix(0, 0);
  FieldPtr field;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    if (x(j).bound()) field = x(j).field();
  }
  if (!field) throw DomainError("cannot infer the field of an all-literal vector");
  GroundMatrix m(field->degree(), x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) m.col(j) = poly_coords(lift(x(j), field));
  return m;
}

int ground_span_rank(const ExtVector& x) {
  if (x.size() == 0) return 0;
  return static_cast<int>(rank(poly_coordinate_matrix(x)));
}

NormalBasis::NormalBasis(Gf alpha) : alpha_(std::move(alpha)) {
  if (!alpha_.bound()) throw DomainError("normal basis needs a bound element");
  basis_ = conjugate_matrix(alpha_, &conjugates_);
  auto inv = msr::inverse_matrix(basis_);
  if (!inv) throw DomainError(to_string(alpha_) + " is not a normal element");
  inverse_ = std::move(*inv);
}

GroundVector NormalBasis::coords(const Gf& a) const {
  const Gf b = lift(a, field());
  return inverse_ * poly_coords(b);
}

Gf NormalBasis::element(const GroundVector& c) const {
  if (c.size() != field()->degree()) throw DimensionError("normal coordinate vector must have length M");
  const GroundVector p = basis_ * c;
  Poly coords(p.size());
  for (Eigen::Index i = 0; i < p.size(); ++i) coords[i] = static_cast<std::uint32_t>(p(i).value());
  return Gf(field(), std::move(coords));
}

GroundVector normal_coords(const Gf& a, const NormalBasis& basis) { return basis.coords(a); }

std::optional<int> qdeg(const Gf& a, const NormalBasis& basis) {
  const GroundVector c = basis.coords(a);
  for (Eigen::Index i = c.size() - 1; i >= 0; --i) {
    if (!is_zero(c(i))) return static_cast<int>(i);
  }
  return std::nullopt;
}

GroundMatrix phi_n(const ExtVector& x, const NormalBasis& basis) {
  GroundMatrix m(basis.field()->degree(), x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) m.col(j) = basis.coords(x(j));
  return m;
}

int packet_rank(const ExtVector& x, const NormalBasis& basis) {
  if (x.size() == 0) return 0;
  return static_cast<int>(rank(phi_n(x, basis)));
}

int hamming_weight(const ExtVector& x) {
  int w = 0;
  for (Eigen::Index j = 0; j < x.size(); ++j) w += is_zero(x(j)) ? 0 : 1;
  return w;
}

}  // namespace msr
