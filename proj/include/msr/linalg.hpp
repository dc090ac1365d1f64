#pragma once

// Dense linear algebra over an exact field, generic in the scalar type.
// Works for any Scalar providing field operators plus ADL-visible
// is_zero(Scalar) and inverse(Scalar) (Fq and Gf both do).

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <vector>

#include "msr/errors.hpp"
#include "msr/fq.hpp"
#include "msr/parallel.hpp"

namespace msr {

template <typename Scalar>
struct Echelon {
  MatrixX<Scalar> matrix;
  std::vector<Eigen::Index> pivot_cols;  // pivot column of each leading row
  int swaps = 0;
};

/// Row echelon form by Gaussian elimination, pivoting on the first non-zero
/// entry. With reduced = true, pivots are normalized to 1 and cleared above.
template <typename Derived>
Echelon<typename Derived::Scalar> row_echelon(const Eigen::MatrixBase<Derived>& input, bool reduced = false) {
  using Scalar = typename Derived::Scalar;
  Echelon<Scalar> e{input.eval(), {}, 0};
  MatrixX<Scalar>& a = e.matrix;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < a.cols() && row < a.rows(); ++col) {
    Eigen::Index pivot = row;
    while (pivot < a.rows() && is_zero(a(pivot, col))) ++pivot;
    if (pivot == a.rows()) continue;
    if (pivot != row) {
      a.row(pivot).swap(a.row(row));
      ++e.swaps;
    }
    const Scalar inv = inverse(a(row, col));
    if (reduced) {
      for (Eigen::Index c = col; c < a.cols(); ++c) a(row, c) = a(row, c) * inv;
    }
    const Eigen::Index first = reduced ? 0 : row + 1;
    for (Eigen::Index r = first; r < a.rows(); ++r) {
      if (r == row || is_zero(a(r, col))) continue;
      const Scalar factor = reduced ? a(r, col) : a(r, col) * inv;
      for (Eigen::Index c = col; c < a.cols(); ++c) a(r, c) = a(r, c) - factor * a(row, c);
    }
    e.pivot_cols.push_back(col);
    ++row;
  }
  return e;
}

template <typename Derived>
Eigen::Index rank(const Eigen::MatrixBase<Derived>& a) {
  return static_cast<Eigen::Index>(row_echelon(a).pivot_cols.size());
}

/// Leftmost maximal set of linearly independent columns.
template <typename Derived>
std::vector<Eigen::Index> independent_columns(const Eigen::MatrixBase<Derived>& a) {
  return row_echelon(a).pivot_cols;
}

/// Determinant by elimination. Throws DimensionError for non-square input.
template <typename Derived>
typename Derived::Scalar determinant(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  if (input.rows() != input.cols()) throw DimensionError("determinant of a non-square matrix");
  if (input.rows() == 0) return Scalar(1);
  auto e = row_echelon(input);
  if (static_cast<Eigen::Index>(e.pivot_cols.size()) < input.rows()) return Scalar(0) * input(0, 0);
  Scalar det = e.matrix(0, 0);
  for (Eigen::Index i = 1; i < input.rows(); ++i) det = det * e.matrix(i, i);
  return (e.swaps % 2) ? -det : det;
}

/// Inverse, or nullopt if singular.
template <typename Derived>
std::optional<MatrixX<typename Derived::Scalar>> inverse_matrix(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  if (a.rows() != a.cols()) throw DimensionError("inverse of a non-square matrix");
  const Eigen::Index n = a.rows();
  MatrixX<Scalar> aug(n, 2 * n);
  aug.leftCols(n) = a;
  const Scalar zero = n ? Scalar(0) * a(0, 0) : Scalar(0);
  const Scalar one = zero + Scalar(1);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) aug(i, n + j) = (i == j) ? one : zero;
  }
  auto e = row_echelon(aug, true);
  if (e.pivot_cols.size() < static_cast<std::size_t>(n) || (n && e.pivot_cols[n - 1] != n - 1)) return std::nullopt;
  return e.matrix.rightCols(n);
}

/// Basis of the right null space {v : a v = 0} as matrix columns.
template <typename Derived>
MatrixX<typename Derived::Scalar> null_space(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  auto e = row_echelon(a, true);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : e.pivot_cols) is_pivot[c] = true;
  std::vector<Eigen::Index> free;
  for (Eigen::Index c = 0; c < a.cols(); ++c) {
    if (!is_pivot[c]) free.push_back(c);
  }
  MatrixX<Scalar> basis(a.cols(), static_cast<Eigen::Index>(free.size()));
  const Scalar zero = a.size() ? Scalar(0) * a(0, 0) : Scalar(0);
  const Scalar one = zero + Scalar(1);
  for (std::size_t k = 0; k < free.size(); ++k) {
    for (Eigen::Index r = 0; r < a.cols(); ++r) basis(r, k) = zero;
    basis(free[k], k) = one;
    for (std::size_t p = 0; p < e.pivot_cols.size(); ++p) {
      basis(e.pivot_cols[p], k) = -e.matrix(static_cast<Eigen::Index>(p), free[k]);
    }
  }
  return basis;
}

/// Unique s with s * a = b, or nullopt when a lacks full row rank or the
/// system is inconsistent.
template <typename Scalar>
std::optional<RowVectorX<Scalar>> solve_left(const MatrixX<Scalar>& a, const RowVectorX<Scalar>& b) {
  if (b.size() != a.cols()) throw DimensionError("solve_left: right-hand side length mismatch");
  // s a = b  <=>  a^T s^T = b^T
  const Eigen::Index unknowns = a.rows();
  MatrixX<Scalar> aug(a.cols(), unknowns + 1);
  aug.leftCols(unknowns) = a.transpose();
  aug.col(unknowns) = b.transpose();
  auto e = row_echelon(aug, true);
  if (static_cast<Eigen::Index>(e.pivot_cols.size()) > unknowns ||
      (!e.pivot_cols.empty() && e.pivot_cols.back() == unknowns)) {
    return std::nullopt;  // inconsistent
  }
  if (static_cast<Eigen::Index>(e.pivot_cols.size()) < unknowns) return std::nullopt;
  RowVectorX<Scalar> s(unknowns);
  for (Eigen::Index i = 0; i < unknowns; ++i) s(i) = e.matrix(i, unknowns);
  return s;
}

/// True iff some Leibniz term is a product of non-zero entries, i.e. the
/// bipartite graph of non-zero positions has a perfect matching.
template <typename Derived>
bool has_nontrivial_det(const Eigen::MatrixBase<Derived>& a) {
  if (a.rows() != a.cols()) throw DimensionError("non-trivial determinant test needs a square matrix");
  const Eigen::Index n = a.rows();
  std::vector<std::vector<Eigen::Index>> adj(n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      if (!is_zero(a(r, c))) adj[r].push_back(c);
    }
  }
  std::vector<Eigen::Index> match_col(n, -1);
  std::vector<char> seen;
  // Kuhn's augmenting paths; n is tiny.
  auto augment = [&](auto&& self, Eigen::Index r) -> bool {
    for (Eigen::Index c : adj[r]) {
      if (seen[c]) continue;
      seen[c] = 1;
      if (match_col[c] < 0 || self(self, match_col[c])) {
        match_col[c] = r;
        return true;
      }
    }
    return false;
  };
  for (Eigen::Index r = 0; r < n; ++r) {
    seen.assign(n, 0);
    if (!augment(augment, r)) return false;
  }
  return true;
}

enum class SuperRegularity { certified, refuted, truncated };

struct MinorWitness {
  std::vector<Eigen::Index> rows;
  std::vector<Eigen::Index> cols;
};

struct SuperRegularityReport {
  SuperRegularity verdict = SuperRegularity::truncated;
  std::optional<MinorWitness> witness;
  int max_minor = 0;
};

inline constexpr int kDefaultMaxMinor = 10;

namespace detail {

inline std::vector<std::vector<Eigen::Index>> combinations(Eigen::Index n, Eigen::Index k) {
  std::vector<std::vector<Eigen::Index>> out;
  if (k > n) return out;
  std::vector<Eigen::Index> c(k);
  for (Eigen::Index i = 0; i < k; ++i) c[i] = i;
  for (;;) {
    out.push_back(c);
    Eigen::Index i = k - 1;
    while (i >= 0 && c[i] == n - k + i) --i;
    if (i < 0) break;
    ++c[i];
    for (Eigen::Index j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  }
  return out;
}

}  // namespace detail

/// Checks every l x l minor for l = 1..max_minor (increasing l, then
/// lexicographic rows, then columns) and reports the first minor with a
/// non-trivial determinant that vanishes.
///
/// max_minor defaults to min(side, kDefaultMaxMinor); a result is only
/// `certified` when every size up to the full side was examined.
template <typename Derived>
SuperRegularityReport is_superregular(const Eigen::MatrixBase<Derived>& input, std::optional<int> max_minor = {}) {
  using Scalar = typename Derived::Scalar;
  if (input.rows() != input.cols()) throw DimensionError("super-regularity is checked on square matrices");
  const MatrixX<Scalar> a = input;
  const int side = static_cast<int>(a.rows());
  const int limit = max_minor ? *max_minor : std::min(side, kDefaultMaxMinor);
  if (limit < 0 || limit > side) throw DomainError("max_minor must lie in [0, side]");

  SuperRegularityReport report;
  report.max_minor = limit;
  for (int l = 1; l <= limit; ++l) {
    const auto combos = detail::combinations(side, l);
    auto hit = parallel_find_first<MinorWitness>(combos.size(), [&](std::size_t ri) -> std::optional<MinorWitness> {
      const auto& rows = combos[ri];
      for (const auto& cols : combos) {
        const MatrixX<Scalar> d = a(rows, cols);
        if (has_nontrivial_det(d) && is_zero(determinant(d))) return MinorWitness{rows, cols};
      }
      return std::nullopt;
    });
    if (hit) {
      report.verdict = SuperRegularity::refuted;
      report.witness = std::move(hit->second);
      return report;
    }
  }
  report.verdict = limit == side ? SuperRegularity::certified : SuperRegularity::truncated;
  return report;
}

}  // namespace msr
