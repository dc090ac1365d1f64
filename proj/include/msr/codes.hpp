#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "msr/gf.hpp"
#include "msr/linalg.hpp"
#include "msr/normal_basis.hpp"

namespace msr {

/// Convolutional code C[n, k, m] over F_{q^M} with generator blocks
/// G_0..G_m (each k x n). x_t = sum_i s_{t-i} G_i.
class ConvolutionalCode {
 public:
  /// Throws ConstructionError unless the blocks share a shape k x n with
  /// k <= n, live in the basis field, and G_0 has full row rank.
  ConvolutionalCode(std::vector<ExtMatrix> blocks, std::shared_ptr<const NormalBasis> basis);

  int n() const { return n_; }
  int k() const { return k_; }
  int m() const { return static_cast<int>(blocks_.size()) - 1; }
  const std::vector<ExtMatrix>& blocks() const { return blocks_; }
  /// G_i, or the zero block for i > m.
  ExtMatrix block(int i) const;
  const NormalBasis& basis() const { return *basis_; }
  const std::shared_ptr<const NormalBasis>& basis_ptr() const { return basis_; }
  const FieldPtr& field() const { return basis_->field(); }
  std::uint32_t q() const { return field()->q(); }

  /// (n - k)(j + 1) + 1.
  int singleton_bound(int j) const { return (n_ - k_) * (j + 1) + 1; }

 private:
  int n_ = 0;
  int k_ = 0;
  std::vector<ExtMatrix> blocks_;
  std::shared_ptr<const NormalBasis> basis_;
};

/// k x n Moore matrix, row i = (g_0^[i], ..., g_{n-1}^[i]). Throws
/// ConstructionError if the g_j are F_q-dependent or k > n.
ExtMatrix gabidulin_generator(const ExtVector& g, int k);

struct MrdReport {
  bool mrd = true;
  std::size_t checked = 0;
  std::optional<std::size_t> failing_subspace;  // index into enumerate_subspaces(n, k, q)
};

/// rank(G A) = k for every canonical full-rank A in F_q^{n x k}.
MrdReport check_mrd(const ExtMatrix& g);

/// T_j(r, s) = alpha^[nj + r + s] for j = 0..m.
std::vector<ExtMatrix> build_T_blocks(int n, int m, const Gf& alpha);

/// Block Hankel layout: block (i, c) = T_{i + c - m} when i + c >= m, else 0.
ExtMatrix build_hankel(const std::vector<ExtMatrix>& blocks);
/// Block upper-triangular Toeplitz layout: block (i, c) = T_{c - i} for c >= i.
ExtMatrix build_toeplitz(const std::vector<ExtMatrix>& blocks);

/// Code whose G_c consists of rows i_1..i_k of block (0, c) of the Toeplitz
/// matrix; rows default to 0..k-1.
ConvolutionalCode extract_msr_generator(const ExtMatrix& toeplitz, int n, int k, int m,
                                        std::shared_ptr<const NormalBasis> basis,
                                        std::optional<std::vector<int>> rows = {});

/// k(j+1) x n(j+1) block Toeplitz matrix with G_i = 0 for i > m.
ExtMatrix extended_generator(const ConvolutionalCode& code, int j);

using RankProfile = std::vector<int>;

/// Profiles (rho_0..rho_j) with 0 <= rho_t <= n, sum_{i<=t} rho_i <= k(t+1)
/// and equality at t = j; lexicographic order.
std::vector<RankProfile> enumerate_rank_profiles(int n, int k, int j);

struct MsrCounterexample {
  RankProfile profile;
  std::vector<std::size_t> subspaces;  // index into enumerate_subspaces(n, rho_t, q) per shot
};

struct MsrVerdict {
  bool verified = true;
  std::size_t determinants = 0;
  std::optional<MsrCounterexample> counterexample;
};

/// G^EX_j diag(A*_0..A*_j) is non-singular for every rank profile and every
/// combination of canonical subspace representatives. The first failing
/// combination (profile order, then shot 0 slowest) is reported.
MsrVerdict verify_msr(const ConvolutionalCode& code, int j);

/// G^EX_j diag(A_0..A_j) for ground blocks with k(j+1) rows in total.
ExtMatrix channel_product(const ConvolutionalCode& code, const std::vector<GroundMatrix>& a_blocks);

/// F = T diag(A_0..A_m) and its super-regularity verdict. Throws
/// PreconditionError when some A_t is singular.
struct PreservationReport {
  ExtMatrix product;
  SuperRegularityReport verdict;
};
PreservationReport check_preservation(const ExtMatrix& hankel, const std::vector<GroundMatrix>& a_blocks,
                                      std::optional<int> max_minor = {});

/// Invertible M over F_q such that (f_0..f_{l-1}) M has strictly increasing
/// q-degrees (reduced column echelon form of the normal coordinates).
/// Throws PreconditionError for F_q-dependent input.
struct SortTransform {
  GroundMatrix transform;
  std::vector<Gf> polys;
};
SortTransform echelon_sort_transform(const std::vector<Gf>& polys, const NormalBasis& basis);

/// Codeword prefix with s_0 != 0 and minimum sum rank, found through the
/// channel side of the sum-rank / non-singularity equivalence: the smallest
/// d for which some block-diagonal A* with sum rho_t = n(j+1) - d admits a
/// left null vector s of G^EX_j A* with s_0 != 0. Exact; the cost is governed
/// by the number of subspace combinations rather than (q^M)^{k(j+1)}.
struct SumRankWitness {
  int sum_rank = 0;
  std::vector<ExtVector> sources;   // s_0..s_j
  std::vector<ExtVector> codeword;  // x_0..x_j
  std::vector<GroundMatrix> annihilators;  // A*_t with x_t A*_t = 0
};
inline constexpr std::uint64_t kDefaultSubspaceBudget = 5'000'000;
SumRankWitness minimum_sum_rank_witness(const ConvolutionalCode& code, int j,
                                        std::uint64_t budget = kDefaultSubspaceBudget);

/// x_t = sum_{i <= min(t, m)} s_{t-i} G_i for t = 0..len-1 (s_t = 0 beyond
/// the given sources).
std::vector<ExtVector> encode_prefix(const ConvolutionalCode& code, const std::vector<ExtVector>& sources,
                                     std::size_t len);

}  // namespace msr
