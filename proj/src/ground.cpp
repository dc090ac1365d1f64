#include "msr/ground.hpp"

#include <limits>

#include "msr/errors.hpp"
#include "msr/linalg.hpp"

namespace msr {

std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound == 0) throw DomainError("uniform_below: empty range");
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - (max % bound + 1) % bound;
  for (;;) {
    const std::uint64_t v = rng();
    if (v <= limit) return v % bound;
  }
}

GroundMatrix ground_zeros(Eigen::Index rows, Eigen::Index cols, std::uint32_t q) {
  return GroundMatrix::Constant(rows, cols, Fq(0, q));
}

GroundMatrix ground_identity(Eigen::Index n, std::uint32_t q) {
  GroundMatrix a = ground_zeros(n, n, q);
  for (Eigen::Index i = 0; i < n; ++i) a(i, i) = Fq(1, q);
  return a;
}

GroundMatrix random_ground_matrix(Eigen::Index rows, Eigen::Index cols, std::uint32_t q, Rng& rng) {
  GroundMatrix a(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) a(i, j) = Fq(static_cast<std::int64_t>(uniform_below(rng, q)), q);
  }
  return a;
}

std::vector<GroundMatrix> enumerate_subspaces(int n, int rho, std::uint32_t q) {
  if (rho < 0 || rho > n) throw DomainError("enumerate_subspaces needs 0 <= rho <= n");
  std::vector<GroundMatrix> out;
  if (rho == 0) {
    out.push_back(ground_zeros(n, 0, q));
    return out;
  }
  // Column c has a 1 in its pivot row p_c, zeros in every other pivot row and
  // above p_c; rows below p_c that are not pivots are free.
  for (const auto& pivots : detail::combinations(n, rho)) {
    std::vector<bool> is_pivot(n, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::pair<int, int>> free;  // (row, col)
    for (int c = 0; c < rho; ++c) {
      for (int r = static_cast<int>(pivots[c]) + 1; r < n; ++r) {
        if (!is_pivot[r]) free.emplace_back(r, c);
      }
    }
    std::vector<std::uint32_t> digits(free.size(), 0);
    for (;;) {
      GroundMatrix a = ground_zeros(n, rho, q);
      for (int c = 0; c < rho; ++c) a(pivots[c], c) = Fq(1, q);
      for (std::size_t f = 0; f < free.size(); ++f) a(free[f].first, free[f].second) = Fq(digits[f], q);
      out.push_back(std::move(a));
      std::size_t i = 0;
      while (i < digits.size() && ++digits[i] == q) digits[i++] = 0;
      if (i == digits.size()) break;
    }
  }
  return out;
}

GroundMatrix random_full_rank(int n, int rho, std::uint32_t q, Rng& rng) {
  if (rho < 0 || rho > n) throw DomainError("random_full_rank needs 0 <= rho <= n");
  for (;;) {
    GroundMatrix a = random_ground_matrix(n, rho, q, rng);
    if (rank(a) == rho) return a;
  }
}

GroundMatrix random_full_rank(int n, int rho, std::uint32_t q, std::uint64_t seed) {
  Rng rng(seed);
  return random_full_rank(n, rho, q, rng);
}

GroundMatrix block_diagonal(const std::vector<GroundMatrix>& blocks, std::uint32_t q) {
  return block_diagonal(blocks, Fq(0, q));
}

}  // namespace msr
