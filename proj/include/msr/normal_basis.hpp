#pragma once

#include <optional>

#include "msr/gf.hpp"
#include "msr/integer.hpp"

namespace msr {

/// Prime factorization of q^M - 1. Throws FactorizationInfeasible when
/// q^M - 1 does not fit in 64 bits or the cofactor resists Pollard rho.
PrimeFactorization group_order_factorization(const ExtensionField& field);

/// Order of a equals q^M - 1. Throws DomainError for a = 0.
bool is_primitive(const Gf& a);
bool is_primitive(const Gf& a, const PrimeFactorization& order_factors);

/// Conjugates a^[0..M-1] are linearly independent over F_q.
bool is_normal(const Gf& a);

/// First element (constant coefficient fastest-varying) that is both
/// primitive and normal. With assume_primitive, only normality is tested.
Gf find_primitive_normal(const FieldPtr& field, bool assume_primitive = false);

/// Polynomial-basis coordinates as a ground column vector.
GroundVector poly_coords(const Gf& a);
/// M x n matrix of polynomial-basis coordinates, one column per entry.
GroundMatrix poly_coordinate_matrix(const ExtVector& x);
/// Dimension of the F_q-span of the entries of x.
int ground_span_rank(const ExtVector& x);

/// Normal basis {alpha^[0], ..., alpha^[M-1]} with its change-of-basis
/// matrices. Column i of basis_matrix holds the polynomial coordinates of
/// alpha^[i]; inverse_matrix * basis_matrix = I.
class NormalBasis {
 public:
  /// Throws DomainError if alpha is not normal.
  explicit NormalBasis(Gf alpha);

  const Gf& alpha() const { return alpha_; }
  const FieldPtr& field() const { return alpha_.field(); }
  const GroundMatrix& basis_matrix() const { return basis_; }
  const GroundMatrix& inverse_matrix() const { return inverse_; }

  /// alpha^[i] for 0 <= i < M.
  const Gf& conjugate(int i) const { return conjugates_.at(i); }

  GroundVector coords(const Gf& a) const;
  Gf element(const GroundVector& c) const;

 private:
  Gf alpha_;
  std::vector<Gf> conjugates_;
  GroundMatrix basis_;
  GroundMatrix inverse_;
};

/// c with a = sum_i c_i alpha^[i].
GroundVector normal_coords(const Gf& a, const NormalBasis& basis);

/// Largest Frobenius power present in the normal-basis expansion of a;
/// nullopt for a = 0.
std::optional<int> qdeg(const Gf& a, const NormalBasis& basis);

/// M x n ground matrix whose column j holds normal_coords(x_j).
GroundMatrix phi_n(const ExtVector& x, const NormalBasis& basis);

/// Rank of phi_n(x) over F_q.
int packet_rank(const ExtVector& x, const NormalBasis& basis);

/// Number of non-zero entries.
int hamming_weight(const ExtVector& x);

}  // namespace msr
