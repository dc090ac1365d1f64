#include "msr/codes.hpp"

#include <numeric>
#include <string>

#include "msr/errors.hpp"
#include "msr/ground.hpp"

namespace msr {

namespace {

FieldPtr field_of(const ExtMatrix& a) {
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (a(i, j).bound()) return a(i, j).field();
    }
  }
  return nullptr;
}

// Mixed-radix decode of a flat index; digit 0 is the slowest.
std::vector<std::size_t> decode_digits(std::size_t index, const std::vector<std::size_t>& radices) {
  std::vector<std::size_t> digits(radices.size());
  for (std::size_t t = radices.size(); t-- > 0;) {
    digits[t] = index % radices[t];
    index /= radices[t];
  }
  return digits;
}

// Enumerates profiles in [0, n]^{len} with a fixed total, lexicographic.
void profiles_with_total(int n, int len, int total, RankProfile& cur, std::vector<RankProfile>& out) {
  const int t = static_cast<int>(cur.size());
  if (t == len) {
    if (total == 0) out.push_back(cur);
    return;
  }
  const int rest = len - t - 1;
  for (int r = 0; r <= std::min(n, total); ++r) {
    if (total - r > n * rest) continue;
    cur.push_back(r);
    profiles_with_total(n, len, total - r, cur, out);
    cur.pop_back();
  }
}

// Products G_d A for every shift d and every canonical subspace per rank.
struct ProductTable {
  std::vector<std::vector<GroundMatrix>> reps;             // [rho][idx]
  std::vector<std::vector<std::vector<ExtMatrix>>> prods;  // [d][rho][idx]

  ProductTable(const ConvolutionalCode& code, int j) {
    const int n = code.n();
    reps.resize(n + 1);
    for (int r = 0; r <= n; ++r) reps[r] = enumerate_subspaces(n, r, code.q());
    const int shifts = std::min(j, code.m()) + 1;
    prods.resize(shifts);
    for (int d = 0; d < shifts; ++d) {
      prods[d].resize(n + 1);
      for (int r = 0; r <= n; ++r) {
        for (const auto& a : reps[r]) prods[d][r].push_back(code.blocks()[d] * embed(a, code.field()));
      }
    }
  }

  // G^EX_j diag(A*_t) for the chosen subspaces.
  ExtMatrix assemble(const ConvolutionalCode& code, const RankProfile& profile,
                     const std::vector<std::size_t>& idx) const {
    const int k = code.k();
    const int len = static_cast<int>(profile.size());
    const int cols = std::accumulate(profile.begin(), profile.end(), 0);
    ExtMatrix out = zeros(k * len, cols, code.field());
    int c0 = 0;
    for (int t = 0; t < len; ++t) {
      const int r = profile[t];
      for (int i = 0; i <= t; ++i) {
        const int d = t - i;
        if (d >= static_cast<int>(prods.size()) || r == 0) continue;
        out.block(i * k, c0, k, r) = prods[d][r][idx[t]];
      }
      c0 += r;
    }
    return out;
  }
};

std::uint64_t combination_count(const RankProfile& profile, const ProductTable& table, std::uint64_t cap) {
  std::uint64_t count = 1;
  for (int r : profile) {
    const std::uint64_t c = table.reps[r].size();
    if (count > cap / c) return cap + 1;
    count *= c;
  }
  return count;
}

}  // namespace

// ---------------------------------------------------------------------------

ConvolutionalCode::ConvolutionalCode(std::vector<ExtMatrix> blocks, std::shared_ptr<const NormalBasis> basis)
    : blocks_(std::move(blocks)), basis_(std::move(basis)) {
  if (!basis_) throw ConstructionError("code needs a normal basis");
  if (blocks_.empty()) throw ConstructionError("code needs at least one generator block");
  k_ = static_cast<int>(blocks_[0].rows());
  n_ = static_cast<int>(blocks_[0].cols());
  if (k_ < 1 || k_ > n_) throw ConstructionError("code needs 1 <= k <= n");
  for (auto& b : blocks_) {
    if (b.rows() != k_ || b.cols() != n_) throw ConstructionError("generator blocks must all be k x n");
    for (Eigen::Index i = 0; i < b.rows(); ++i) {
      for (Eigen::Index j = 0; j < b.cols(); ++j) {
        if (b(i, j).bound() && b(i, j).field()->spec() != field()->spec()) {
          throw ConstructionError("generator entry lies outside the code field");
        }
        b(i, j) = lift(b(i, j), field());
      }
    }
  }
  if (rank(blocks_[0]) != k_) throw ConstructionError("G_0 does not have full row rank");
}

ExtMatrix ConvolutionalCode::block(int i) const {
  if (i < 0) throw DomainError("negative block index");
  if (i > m()) return zeros(k_, n_, field());
  return blocks_[i];
}

ExtMatrix gabidulin_generator(const ExtVector& g, int k) {
  const int n = static_cast<int>(g.size());
  const FieldPtr f = field_of(g);
  if (!f) throw ConstructionError("Gabidulin generator needs field elements");
  if (k < 1 || k > n) throw ConstructionError("Gabidulin generator needs 1 <= k <= n");
  if (n > f->degree()) throw ConstructionError("Gabidulin generator needs n <= M");
  if (ground_span_rank(g) != n) throw ConstructionError("Gabidulin support is F_q-dependent");
  ExtMatrix out(k, n);
  for (int j = 0; j < n; ++j) {
    Gf e = lift(g(j), f);
    for (int i = 0; i < k; ++i) {
      out(i, j) = e;
      e = frobenius(e, 1);
    }
  }
  return out;
}

MrdReport check_mrd(const ExtMatrix& g) {
  const FieldPtr f = field_of(g);
  if (!f) throw DomainError("check_mrd needs field elements");
  const int k = static_cast<int>(g.rows()), n = static_cast<int>(g.cols());
  MrdReport report;
  const auto reps = enumerate_subspaces(n, k, f->q());
  for (std::size_t i = 0; i < reps.size(); ++i) {
    ++report.checked;
    if (rank(ExtMatrix(g * embed(reps[i], f))) != k) {
      report.mrd = false;
      report.failing_subspace = i;
      break;
    }
  }
  return report;
}

std::vector<ExtMatrix> build_T_blocks(int n, int m, const Gf& alpha) {
  if (n < 1 || m < 0) throw DomainError("build_T_blocks needs n >= 1 and m >= 0");
  if (!alpha.bound()) throw DomainError("build_T_blocks needs a bound alpha");
  const int top = n * (m + 2) - 1;  // exponents 0..top-1
  std::vector<Gf> conj{alpha};
  for (int e = 1; e < top; ++e) conj.push_back(frobenius(conj.back(), 1));
  std::vector<ExtMatrix> blocks;
  for (int j = 0; j <= m; ++j) {
    ExtMatrix t(n, n);
    for (int r = 0; r < n; ++r) {
      for (int s = 0; s < n; ++s) t(r, s) = conj[n * j + r + s];
    }
    blocks.push_back(std::move(t));
  }
  return blocks;
}

namespace {

Eigen::Index check_blocks(const std::vector<ExtMatrix>& blocks) {
  if (blocks.empty()) throw DimensionError("no blocks");
  const Eigen::Index n = blocks[0].rows();
  for (const auto& b : blocks) {
    if (b.rows() != n || b.cols() != n) throw DimensionError("blocks must be square and equally sized");
  }
  if (!field_of(blocks[0])) throw DimensionError("blocks need field elements");
  return n;
}

}  // namespace

ExtMatrix build_hankel(const std::vector<ExtMatrix>& blocks) {
  const Eigen::Index n = check_blocks(blocks);
  const int m = static_cast<int>(blocks.size()) - 1;
  ExtMatrix out = zeros(n * (m + 1), n * (m + 1), field_of(blocks[0]));
  for (int i = 0; i <= m; ++i) {
    for (int c = 0; c <= m; ++c) {
      if (i + c >= m) out.block(i * n, c * n, n, n) = blocks[i + c - m];
    }
  }
  return out;
}

ExtMatrix build_toeplitz(const std::vector<ExtMatrix>& blocks) {
  const Eigen::Index n = check_blocks(blocks);
  const int m = static_cast<int>(blocks.size()) - 1;
  ExtMatrix out = zeros(n * (m + 1), n * (m + 1), field_of(blocks[0]));
  for (int i = 0; i <= m; ++i) {
    for (int c = i; c <= m; ++c) out.block(i * n, c * n, n, n) = blocks[c - i];
  }
  return out;
}

ConvolutionalCode extract_msr_generator(const ExtMatrix& toeplitz, int n, int k, int m,
                                        std::shared_ptr<const NormalBasis> basis,
                                        std::optional<std::vector<int>> rows) {
  if (toeplitz.rows() != n * (m + 1) || toeplitz.cols() != n * (m + 1)) {
    throw DimensionError("Toeplitz matrix must be n(m+1) x n(m+1)");
  }
  std::vector<int> idx(k);
  if (rows) {
    idx = *rows;
  } else {
    std::iota(idx.begin(), idx.end(), 0);
  }
  if (static_cast<int>(idx.size()) != k) throw DomainError("need exactly k row indices");
  for (int i = 0; i < k; ++i) {
    if (idx[i] < 0 || idx[i] >= n || (i && idx[i] <= idx[i - 1])) {
      throw DomainError("row indices must satisfy 0 <= i_1 < ... < i_k < n");
    }
  }
  std::vector<ExtMatrix> blocks;
  for (int c = 0; c <= m; ++c) {
    ExtMatrix g(k, n);
    for (int i = 0; i < k; ++i) g.row(i) = toeplitz.block(idx[i], c * n, 1, n);
    blocks.push_back(std::move(g));
  }
  return ConvolutionalCode(std::move(blocks), std::move(basis));
}

ExtMatrix extended_generator(const ConvolutionalCode& code, int j) {
  if (j < 0) throw DomainError("extended_generator needs j >= 0");
  const int n = code.n(), k = code.k();
  ExtMatrix out = zeros(k * (j + 1), n * (j + 1), code.field());
  for (int i = 0; i <= j; ++i) {
    for (int c = i; c <= std::min(j, i + code.m()); ++c) out.block(i * k, c * n, k, n) = code.blocks()[c - i];
  }
  return out;
}

std::vector<RankProfile> enumerate_rank_profiles(int n, int k, int j) {
  if (k > n || k < 0 || j < 0) throw DomainError("enumerate_rank_profiles needs 0 <= k <= n and j >= 0");
  std::vector<RankProfile> out;
  RankProfile cur;
  auto rec = [&](auto&& self, int sum) -> void {
    const int t = static_cast<int>(cur.size());
    if (t == j + 1) {
      if (sum == k * (j + 1)) out.push_back(cur);
      return;
    }
    for (int r = 0; r <= n; ++r) {
      const int s = sum + r;
      if (s > k * (t + 1)) break;
      // Remaining shots must still be able to reach k(j+1).
      if (s + n * (j - t) < k * (j + 1)) continue;
      cur.push_back(r);
      self(self, s);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

MsrVerdict verify_msr(const ConvolutionalCode& code, int j) {
  const ProductTable table(code, j);
  const auto profiles = enumerate_rank_profiles(code.n(), code.k(), j);
  std::vector<std::size_t> offsets{0};
  std::vector<std::vector<std::size_t>> radices;
  for (const auto& p : profiles) {
    std::vector<std::size_t> r;
    for (int rho : p) r.push_back(table.reps[rho].size());
    offsets.push_back(offsets.back() + combination_count(p, table, std::uint64_t(1) << 62));
    radices.push_back(std::move(r));
  }
  const std::size_t total = offsets.back();
  auto hit = parallel_find_first<MsrCounterexample>(total, [&](std::size_t flat) -> std::optional<MsrCounterexample> {
    const std::size_t p = std::upper_bound(offsets.begin(), offsets.end(), flat) - offsets.begin() - 1;
    const auto idx = decode_digits(flat - offsets[p], radices[p]);
    if (is_zero(determinant(table.assemble(code, profiles[p], idx)))) return MsrCounterexample{profiles[p], idx};
    return std::nullopt;
  });
  MsrVerdict verdict;
  verdict.determinants = hit ? hit->first + 1 : total;
  if (hit) {
    verdict.verified = false;
    verdict.counterexample = std::move(hit->second);
  }
  return verdict;
}

ExtMatrix channel_product(const ConvolutionalCode& code, const std::vector<GroundMatrix>& a_blocks) {
  const int j = static_cast<int>(a_blocks.size()) - 1;
  if (j < 0) throw DimensionError("channel_product needs at least one block");
  for (const auto& a : a_blocks) {
    if (a.rows() != code.n()) throw DimensionError("channel blocks must have n rows");
  }
  return extended_generator(code, j) * embed(block_diagonal(a_blocks, code.q()), code.field());
}

PreservationReport check_preservation(const ExtMatrix& hankel, const std::vector<GroundMatrix>& a_blocks,
                                      std::optional<int> max_minor) {
  const FieldPtr f = field_of(hankel);
  if (!f) throw DomainError("check_preservation needs field elements");
  Eigen::Index side = 0;
  for (const auto& a : a_blocks) {
    if (a.rows() != a.cols() || rank(a) != a.rows()) throw PreconditionError("channel blocks must be non-singular");
    side += a.rows();
  }
  if (side != hankel.cols()) throw DimensionError("block sizes do not match the Hankel matrix");
  PreservationReport out{hankel * embed(block_diagonal(a_blocks, f->q()), f), {}};
  out.verdict = is_superregular(out.product, max_minor);
  return out;
}

SortTransform echelon_sort_transform(const std::vector<Gf>& polys, const NormalBasis& basis) {
  const int l = static_cast<int>(polys.size());
  const int mdeg = basis.field()->degree();
  const std::uint32_t q = basis.field()->q();
  // Rows of `aug` are the polynomials, normal coordinates listed from the
  // highest Frobenius index down, followed by an identity tracking the
  // row operations.
  GroundMatrix aug = ground_zeros(l, mdeg + l, q);
  for (int i = 0; i < l; ++i) {
    const GroundVector c = basis.coords(polys[i]);
    for (int r = 0; r < mdeg; ++r) aug(i, r) = c(mdeg - 1 - r);
    aug(i, mdeg + i) = Fq(1, q);
  }
  const auto e = row_echelon(aug, true);
  if (static_cast<int>(e.pivot_cols.size()) < l || (l && e.pivot_cols.back() >= mdeg)) {
    throw PreconditionError("polynomials are linearly dependent over F_q");
  }
  // Echelon rows have decreasing q-degree; reverse to make them increase.
  SortTransform out{GroundMatrix(l, l), {}};
  for (int c = 0; c < l; ++c) {
    const int src = l - 1 - c;
    for (int i = 0; i < l; ++i) out.transform(i, c) = e.matrix(src, mdeg + i);
  }
  for (int c = 0; c < l; ++c) {
    Gf acc = basis.field()->zero();
    for (int i = 0; i < l; ++i) acc = acc + lift(polys[i], basis.field()) * out.transform(i, c);
    out.polys.push_back(acc);
  }
  return out;
}

std::vector<ExtVector> encode_prefix(const ConvolutionalCode& code, const std::vector<ExtVector>& sources,
                                     std::size_t len) {
  for (const auto& s : sources) {
    if (s.size() != code.k()) throw DimensionError("source packets must have length k");
  }
  std::vector<ExtVector> out;
  for (std::size_t t = 0; t < len; ++t) {
    ExtVector x = zero_vector(code.n(), code.field());
    for (int i = 0; i <= code.m() && i <= static_cast<int>(t); ++i) {
      const std::size_t src = t - i;
      if (src < sources.size()) x += sources[src] * code.blocks()[i];
    }
    out.push_back(std::move(x));
  }
  return out;
}

namespace {

struct DualHit {
  std::vector<ExtVector> sources;
};

// Some A* with the given total rank admits s (s_0 != 0) with s G^EX A* = 0.
std::optional<DualHit> dual_search(const ConvolutionalCode& code, int j, int total_rank, const ProductTable& table,
                                   std::uint64_t& budget_left) {
  std::vector<RankProfile> profiles;
  RankProfile cur;
  profiles_with_total(code.n(), j + 1, total_rank, cur, profiles);
  const int k = code.k();
  for (const auto& p : profiles) {
    const std::uint64_t count = combination_count(p, table, budget_left);
    if (count > budget_left) throw BudgetExceeded("subspace combinations exceed the search budget");
    budget_left -= count;
    std::vector<std::size_t> radices;
    for (int rho : p) radices.push_back(table.reps[rho].size());
    auto hit = parallel_find_first<DualHit>(count, [&](std::size_t flat) -> std::optional<DualHit> {
      const auto idx = decode_digits(flat, radices);
      const ExtMatrix mx = table.assemble(code, p, idx);
      ExtMatrix left;
      if (mx.cols() == 0) {
        left = zeros(mx.rows(), mx.rows(), code.field());
        for (Eigen::Index i = 0; i < mx.rows(); ++i) left(i, i) = code.field()->one();
      } else {
        left = null_space(ExtMatrix(mx.transpose()));
      }
      for (Eigen::Index c = 0; c < left.cols(); ++c) {
        bool head = false;
        for (int i = 0; i < k && !head; ++i) head = !is_zero(left(i, c));
        if (!head) continue;
        DualHit h;
        for (int t = 0; t <= j; ++t) h.sources.push_back(left.col(c).segment(t * k, k).transpose());
        return h;
      }
      return std::nullopt;
    });
    if (hit) return std::move(hit->second);
  }
  return std::nullopt;
}

}  // namespace

SumRankWitness minimum_sum_rank_witness(const ConvolutionalCode& code, int j, std::uint64_t budget) {
  if (j < 0) throw DomainError("minimum_sum_rank_witness needs j >= 0");
  const ProductTable table(code, j);
  const int full = code.n() * (j + 1);
  std::uint64_t budget_left = budget;
  std::optional<SumRankWitness> best;
  auto materialize = [&](std::vector<ExtVector> sources) {
    SumRankWitness w;
    w.sources = std::move(sources);
    w.codeword = encode_prefix(code, w.sources, j + 1);
    for (const auto& x : w.codeword) {
      w.sum_rank += packet_rank(x, code.basis());
      w.annihilators.push_back(null_space(phi_n(x, code.basis())));
    }
    return w;
  };
  // Feasibility is monotone in d: walk down from the Singleton bound.
  for (int d = code.singleton_bound(j); d >= 1;) {
    auto hit = dual_search(code, j, full - d, table, budget_left);
    if (!hit) break;
    best = materialize(std::move(hit->sources));
    d = best->sum_rank - 1;
  }
  if (!best) throw Error("no codeword found at the Singleton bound");
  return *best;
}

}  // namespace msr
