#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "msr/fq.hpp"

namespace msr {

using Rng = std::mt19937_64;

/// Uniform integer in [0, bound) by rejection; platform independent, unlike
/// std::uniform_int_distribution.
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);

GroundMatrix ground_identity(Eigen::Index n, std::uint32_t q);
GroundMatrix ground_zeros(Eigen::Index rows, Eigen::Index cols, std::uint32_t q);
GroundMatrix random_ground_matrix(Eigen::Index rows, Eigen::Index cols, std::uint32_t q, Rng& rng);

/// One n x rho representative per rho-dimensional subspace of F_q^n, in
/// reduced column echelon form. Ordered by pivot rows (lexicographic), then
/// by free entries in odometer order.
std::vector<GroundMatrix> enumerate_subspaces(int n, int rho, std::uint32_t q);

/// Uniformly random n x rho matrix of full column rank (rejection sampling).
GroundMatrix random_full_rank(int n, int rho, std::uint32_t q, Rng& rng);
GroundMatrix random_full_rank(int n, int rho, std::uint32_t q, std::uint64_t seed);

/// diag(blocks[0], blocks[1], ...); blocks may be rectangular.
template <typename Scalar>
MatrixX<Scalar> block_diagonal(const std::vector<MatrixX<Scalar>>& blocks, const Scalar& zero) {
  Eigen::Index rows = 0, cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  MatrixX<Scalar> out = MatrixX<Scalar>::Constant(rows, cols, zero);
  Eigen::Index r = 0, c = 0;
  for (const auto& b : blocks) {
    out.block(r, c, b.rows(), b.cols()) = b;
    r += b.rows();
    c += b.cols();
  }
  return out;
}

GroundMatrix block_diagonal(const std::vector<GroundMatrix>& blocks, std::uint32_t q);

}  // namespace msr
