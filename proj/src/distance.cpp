#include "msr/distance.hpp"

#include "msr/errors.hpp"

namespace msr {

std::string to_string(DistanceKind kind) {
  switch (kind) {
    case DistanceKind::hamming:
      return "hamming";
    case DistanceKind::sum_rank:
      return "sum_rank";
    case DistanceKind::active_sum_rank:
      return "active_sum_rank";
  }
  return "?";
}

DistanceKind parse_distance_kind(const std::string& name) {
  if (name == "hamming") return DistanceKind::hamming;
  if (name == "sum_rank") return DistanceKind::sum_rank;
  if (name == "active_sum_rank" || name == "active") return DistanceKind::active_sum_rank;
  throw DomainError("unknown distance kind '" + name + "'");
}

namespace {

class Search {
 public:
  Search(const ConvolutionalCode& code, int j, DistanceKind kind) : code_(code), j_(j), kind_(kind) {
    const auto size = *code.field()->size();
    const int k = code.k();
    for (std::uint64_t a = 0; a < size; ++a) alphabet_.push_back(code.field()->from_index(a));
    // All source packets in odometer order (first coordinate fastest).
    std::vector<std::uint64_t> digits(k, 0);
    for (;;) {
      ExtVector s(k);
      for (int i = 0; i < k; ++i) s(i) = alphabet_[digits[i]];
      packets_.push_back(std::move(s));
      int i = 0;
      while (i < k && ++digits[i] == size) digits[i++] = 0;
      if (i == k) break;
    }
    sources_.resize(j + 1);
    codeword_.resize(j + 1);
  }

  MinimumCodeword run() {
    best_.weight = std::numeric_limits<int>::max();
    descend(0, 0);
    return best_;
  }

 private:
  int weight(const ExtVector& x) const {
    return kind_ == DistanceKind::hamming ? hamming_weight(x) : packet_rank(x, code_.basis());
  }

  bool state_is_zero(int t) const {
    for (int i = std::max(0, t - code_.m()); i < t; ++i) {
      for (Eigen::Index c = 0; c < sources_[i].size(); ++c) {
        if (!is_zero(sources_[i](c))) return false;
      }
    }
    return true;
  }

  void descend(int t, int running) {
    if (t == j_ + 1) {
      if (running < best_.weight) {
        best_.weight = running;
        best_.sources = sources_;
        best_.codeword = codeword_;
      }
      return;
    }
    if (kind_ == DistanceKind::active_sum_rank && t >= 1 && t <= j_ - 1 && state_is_zero(t)) return;
    // Memory part of x_t from s_{t-m}..s_{t-1}.
    ExtVector memory = zero_vector(code_.n(), code_.field());
    for (int i = 1; i <= code_.m() && i <= t; ++i) memory += sources_[t - i] * code_.blocks()[i];
    for (std::size_t p = (t == 0 ? 1 : 0); p < packets_.size(); ++p) {
      sources_[t] = packets_[p];
      codeword_[t] = memory + packets_[p] * code_.blocks()[0];
      const int w = running + weight(codeword_[t]);
      if (w >= best_.weight) continue;
      descend(t + 1, w);
    }
  }

  const ConvolutionalCode& code_;
  int j_;
  DistanceKind kind_;
  std::vector<Gf> alphabet_;
  std::vector<ExtVector> packets_;
  std::vector<ExtVector> sources_;
  std::vector<ExtVector> codeword_;
  MinimumCodeword best_;
};

}  // namespace

namespace {

void check_search(const ConvolutionalCode& code, int j, DistanceKind kind, std::uint64_t budget) {
  if (j < 0) throw DomainError("distance needs j >= 0");
  if (kind == DistanceKind::active_sum_rank && code.m() == 0) {
    throw DomainError("active column sum rank needs memory m >= 1");
  }
  const auto size = code.field()->size();
  const auto count = size ? checked_pow(*size, static_cast<unsigned>(code.k() * (j + 1))) : std::nullopt;
  if (!count || *count > budget) {
    throw BudgetExceeded("exhaustive search over (q^M)^{k(j+1)} source prefixes exceeds the budget of " +
                         std::to_string(budget));
  }
}

}  // namespace

MinimumCodeword minimum_codeword_bruteforce(const ConvolutionalCode& code, int j, DistanceKind kind,
                                            std::uint64_t budget) {
  check_search(code, j, kind, budget);
  return Search(code, j, kind).run();
}

DistanceProfile column_distance_bruteforce(const ConvolutionalCode& code, int j, DistanceKind kind,
                                           std::uint64_t budget) {
  check_search(code, j, kind, budget);  // fail before the cheaper prefixes run
  DistanceProfile profile;
  profile.kind = kind;
  for (int i = 0; i <= j; ++i) profile.values.push_back(minimum_codeword_bruteforce(code, i, kind, budget).weight);
  return profile;
}

}  // namespace msr
