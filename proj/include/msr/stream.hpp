#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "msr/codes.hpp"
#include "msr/ground.hpp"

namespace msr {

enum class ChannelMode { random, adversarial };

/// Rank-deficient sliding window network: every window of W consecutive
/// shots loses at most S ranks in total.
struct ChannelConfig {
  int n = 0;
  std::uint32_t q = 2;
  int S = 0;
  int W = 1;
  int horizon = 0;
  ChannelMode mode = ChannelMode::random;
  std::uint64_t seed = 0;
  // Adversarial schedule: explicit matrices take precedence over ranks.
  // Shots past the schedule are full rank.
  std::vector<int> rhos;
  std::vector<GroundMatrix> mats;
};

/// Throws DomainError unless W >= 1, 0 <= S <= nW, n >= 1 and horizon >= 0.
void validate(const ChannelConfig& cfg);

struct ChannelRealization {
  std::vector<GroundMatrix> mats;
  std::vector<int> rhos;
};

/// Largest rank deficiency n*W - sum(rho) over fully contained windows;
/// 0 when the realization is shorter than W.
int max_window_deficiency(const ChannelRealization& ch, int n, int W);

/// First window start t with sum_{i=t}^{t+W-1} rho_i < nW - S.
std::optional<int> first_window_violation(const ChannelRealization& ch, int n, int S, int W);

/// x_t = sum_i s_{t-i} G_i for every t covered by sources.
std::vector<ExtVector> encode(const ConvolutionalCode& code, const std::vector<ExtVector>& sources);

/// Random mode: deficiency delta_t uniform in [0, min(n, budget)] where the
/// budget is S minus the deficiencies of the previous W-1 shots; A_t = B C
/// with random full-rank factors. Adversarial mode follows the schedule.
/// Deterministic in cfg.seed.
ChannelRealization sample_channel(const ChannelConfig& cfg);

/// Leftmost maximal independent column set of a.
GroundMatrix reduce_channel(const GroundMatrix& a);

struct PacketReport {
  int t = 0;
  bool recovered = false;  // decided no later than t + T
  int decided_at = -1;     // -1 if never decided
  int delay = -1;          // decided_at - t when recovered
  int window_rank = 0;     // sum of rho over [t, t + T], clipped to the stream
  std::optional<ExtVector> estimate;
};

struct SimReport {
  std::vector<PacketReport> packets;  // concatenated over trials
  int trials = 0;
  std::int64_t packets_total = 0;
  std::int64_t losses = 0;
  double loss_rate = 0.0;
  int max_window_deficiency = 0;
  // Rank condition met for the earliest undecoded packet yet still undetermined.
  std::int64_t decode_failures = 0;
  // Estimates that differ from the transmitted sources.
  std::int64_t mismatches = 0;
};

/// Delay-constrained decoder. Keeps the earliest undecoded index e; at each
/// shot solves for s_e..s_u from the received shots [e, tau] after cancelling
/// decoded packets, and accepts the longest prefix the system determines.
/// Sources at or past `horizon` are known zeros (default: received.size()).
/// A packet decided after its deadline t + T counts as lost but still
/// advances e. The window for max_window_deficiency defaults to T + 1.
SimReport decode_stream(const ConvolutionalCode& code, const std::vector<ExtVector>& received,
                        const ChannelRealization& channel, int T, int horizon = -1, int window = -1);

/// Channel fragment for shots 0..j that annihilates a minimum-sum-rank
/// codeword: A_t = [A*_t | 0] with x_t A*_t = 0, rho_t = n - packet_rank(x_t).
ChannelRealization worst_case_pattern(const ConvolutionalCode& code, int j,
                                      std::uint64_t budget = kDefaultSubspaceBudget);

/// Runs `trials` independent streams of cfg.horizon random source packets
/// followed by T zero packets, and aggregates decode_stream reports.
/// Trial i uses channel seed cfg.seed + i.
SimReport simulate(const ConvolutionalCode& code, const ChannelConfig& cfg, int T, int trials);

}  // namespace msr
