#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "msr/codes.hpp"

namespace msr {

enum class DistanceKind { hamming, sum_rank, active_sum_rank };

std::string to_string(DistanceKind kind);
/// Throws DomainError for unknown names.
DistanceKind parse_distance_kind(const std::string& name);

struct DistanceProfile {
  std::vector<int> values;  // d(0..j)
  DistanceKind kind = DistanceKind::sum_rank;
  bool exhaustive = true;
};

struct MinimumCodeword {
  int weight = 0;
  std::vector<ExtVector> sources;   // s_0..s_j
  std::vector<ExtVector> codeword;  // x_0..x_j
};

inline constexpr std::uint64_t kDefaultEnumerationBudget = 100'000'000;

/// Exhaustive minimum weight over source prefixes s_0..s_j with s_0 != 0.
/// Sequences are visited in odometer order (s_0 slowest) and a branch is cut
/// once its running weight reaches the best found so far.
///
/// For the active kind, sequences whose encoder state (s_{t-m}..s_{t-1}) is
/// all zero at some 1 <= t <= j-1 are excluded; m = 0 is rejected.
/// Throws BudgetExceeded when (q^M)^{k(j+1)} exceeds the budget.
MinimumCodeword minimum_codeword_bruteforce(const ConvolutionalCode& code, int j, DistanceKind kind,
                                            std::uint64_t budget = kDefaultEnumerationBudget);

/// d(0..j) from independent searches per prefix length.
DistanceProfile column_distance_bruteforce(const ConvolutionalCode& code, int j, DistanceKind kind,
                                           std::uint64_t budget = kDefaultEnumerationBudget);

}  // namespace msr
