#include "msr/stream.hpp"

#include <algorithm>
#include <string>

#include "msr/errors.hpp"
#include "msr/linalg.hpp"

namespace msr {

void validate(const ChannelConfig& cfg) {
  if (cfg.n < 1) throw DomainError("channel needs n >= 1");
  if (cfg.W < 1) throw DomainError("channel needs W >= 1");
  if (cfg.S < 0 || cfg.S > cfg.n * cfg.W) throw DomainError("channel needs 0 <= S <= nW");
  if (cfg.horizon < 0) throw DomainError("channel horizon must be non-negative");
  for (int r : cfg.rhos) {
    if (r < 0 || r > cfg.n) throw DomainError("scheduled rank outside [0, n]");
  }
  for (const auto& a : cfg.mats) {
    if (a.rows() != cfg.n || a.cols() != cfg.n) throw DimensionError("scheduled channel matrix must be n x n");
  }
}

int max_window_deficiency(const ChannelRealization& ch, int n, int W) {
  const int len = static_cast<int>(ch.rhos.size());
  int worst = 0;
  for (int t = 0; t + W <= len; ++t) {
    int def = 0;
    for (int i = t; i < t + W; ++i) def += n - ch.rhos[i];
    worst = std::max(worst, def);
  }
  return worst;
}

std::optional<int> first_window_violation(const ChannelRealization& ch, int n, int S, int W) {
  const int len = static_cast<int>(ch.rhos.size());
  for (int t = 0; t + W <= len; ++t) {
    int sum = 0;
    for (int i = t; i < t + W; ++i) sum += ch.rhos[i];
    if (sum < n * W - S) return t;
  }
  return std::nullopt;
}

std::vector<ExtVector> encode(const ConvolutionalCode& code, const std::vector<ExtVector>& sources) {
  return encode_prefix(code, sources, sources.size());
}

namespace {

GroundMatrix random_rank(int n, int rho, std::uint32_t q, Rng& rng) {
  if (rho == 0) return ground_zeros(n, n, q);
  const GroundMatrix b = random_full_rank(n, rho, q, rng);
  const GroundMatrix c = random_full_rank(n, rho, q, rng).transpose();
  return b * c;
}

}  // namespace

ChannelRealization sample_channel(const ChannelConfig& cfg) {
  validate(cfg);
  Rng rng(cfg.seed);
  ChannelRealization ch;
  std::vector<int> deficits;
  for (int t = 0; t < cfg.horizon; ++t) {
    GroundMatrix a;
    if (cfg.mode == ChannelMode::adversarial) {
      if (t < static_cast<int>(cfg.mats.size())) {
        a = cfg.mats[t];
      } else {
        const int rho = t < static_cast<int>(cfg.rhos.size()) ? cfg.rhos[t] : cfg.n;
        a = random_rank(cfg.n, rho, cfg.q, rng);
      }
    } else {
      int budget = cfg.S;
      for (int i = std::max(0, t - cfg.W + 1); i < t; ++i) budget -= deficits[i];
      const int delta = static_cast<int>(uniform_below(rng, std::min(cfg.n, budget) + 1));
      a = random_rank(cfg.n, cfg.n - delta, cfg.q, rng);
    }
    const int rho = static_cast<int>(rank(a));
    deficits.push_back(cfg.n - rho);
    ch.rhos.push_back(rho);
    ch.mats.push_back(std::move(a));
  }
  return ch;
}

GroundMatrix reduce_channel(const GroundMatrix& a) {
  const auto cols = independent_columns(a);
  GroundMatrix out(a.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < cols.size(); ++i) out.col(i) = a.col(cols[i]);
  return out;
}

namespace {

// Some z with z * phi = r, or nullopt if inconsistent.
std::optional<ExtVector> particular_solution(const ExtMatrix& phi, const ExtVector& r, const FieldPtr& f) {
  const Eigen::Index unknowns = phi.rows();
  ExtMatrix aug(phi.cols(), unknowns + 1);
  aug.leftCols(unknowns) = phi.transpose();
  aug.col(unknowns) = r.transpose();
  const auto e = row_echelon(aug, true);
  ExtVector z = zero_vector(unknowns, f);
  for (std::size_t i = 0; i < e.pivot_cols.size(); ++i) {
    if (e.pivot_cols[i] == unknowns) return std::nullopt;
    z(e.pivot_cols[i]) = e.matrix(i, unknowns);
  }
  return z;
}

}  // namespace

SimReport decode_stream(const ConvolutionalCode& code, const std::vector<ExtVector>& received,
                        const ChannelRealization& channel, int T, int horizon, int window) {
  const int len = static_cast<int>(received.size());
  if (channel.mats.size() != received.size()) throw DimensionError("channel and received stream lengths differ");
  if (T < 0) throw DomainError("delay T must be non-negative");
  const int H = horizon < 0 ? len : horizon;
  if (H > len) throw DomainError("horizon exceeds the received stream");
  const int n = code.n(), k = code.k(), m = code.m();
  const auto& f = code.field();

  std::vector<ExtMatrix> a_star;
  std::vector<ExtVector> y_star;
  std::vector<int> rho;
  for (int t = 0; t < len; ++t) {
    const GroundMatrix& a = channel.mats[t];
    if (a.rows() != n || a.cols() != n) throw DimensionError("channel matrices must be n x n");
    if (received[t].size() != n) throw DimensionError("received packets must have length n");
    const auto cols = independent_columns(a);
    ExtVector y(static_cast<Eigen::Index>(cols.size()));
    for (std::size_t i = 0; i < cols.size(); ++i) y(i) = received[t](cols[i]);
    a_star.push_back(embed(reduce_channel(a), f));
    y_star.push_back(std::move(y));
    rho.push_back(static_cast<int>(cols.size()));
  }

  SimReport report;
  report.trials = 1;
  report.packets.resize(H);
  std::vector<ExtVector> decoded(H);
  std::vector<bool> flagged(H, false);
  int e = 0;

  for (int tau = 0; tau < len && e < H; ++tau) {
    const int u = std::min(tau, H - 1);
    const int unknowns = k * (u - e + 1);
    int cols = 0;
    for (int i = e; i <= tau; ++i) cols += rho[i];

    int prefix = 0;
    if (cols > 0) {
      ExtMatrix phi = zeros(unknowns, cols, f);
      ExtVector r(cols);
      int c = 0;
      for (int i = e; i <= tau; ++i) {
        if (rho[i] == 0) continue;
        ExtVector rhs = y_star[i];
        for (int l = std::max(0, i - m); l < e; ++l) rhs -= decoded[l] * code.blocks()[i - l] * a_star[i];
        r.segment(c, rho[i]) = rhs;
        for (int l = std::max(e, i - m); l <= std::min(i, u); ++l) {
          phi.block(k * (l - e), c, k, rho[i]) = code.blocks()[i - l] * a_star[i];
        }
        c += rho[i];
      }
      // s_l is determined iff every left-kernel vector vanishes on its coordinates.
      const ExtMatrix kernel = null_space(ExtMatrix(phi.transpose()));
      while (prefix < u - e + 1) {
        bool free = false;
        for (int row = k * prefix; row < k * (prefix + 1) && !free; ++row) {
          for (Eigen::Index v = 0; v < kernel.cols() && !free; ++v) free = !is_zero(kernel(row, v));
        }
        if (free) break;
        ++prefix;
      }
      if (prefix > 0) {
        const auto z = particular_solution(phi, r, f);
        if (!z) throw PreconditionError("received stream is inconsistent with the code and channel");
        for (int p = 0; p < prefix; ++p) {
          decoded[e + p] = z->segment(k * p, k);
          report.packets[e + p].decided_at = tau;
        }
      }
    }

    // Smallest j with sum_{i=e}^{e+j} rho_i >= k(j+1) guarantees s_e for an MSR code.
    if (prefix == 0 && !flagged[e]) {
      int sum = 0;
      for (int j = 0; e + j <= u; ++j) {
        sum += rho[e + j];
        if (sum >= k * (j + 1)) {
          ++report.decode_failures;
          flagged[e] = true;
          break;
        }
      }
    }
    e += prefix;
  }

  for (int t = 0; t < H; ++t) {
    PacketReport& p = report.packets[t];
    p.t = t;
    for (int i = t; i <= std::min(t + T, len - 1); ++i) p.window_rank += rho[i];
    if (p.decided_at >= 0) p.estimate = decoded[t];
    p.recovered = p.decided_at >= 0 && p.decided_at <= t + T;
    if (p.recovered) p.delay = p.decided_at - t;
    report.losses += !p.recovered;
  }
  report.packets_total = H;
  report.loss_rate = H ? static_cast<double>(report.losses) / H : 0.0;
  report.max_window_deficiency = max_window_deficiency(channel, n, window < 1 ? T + 1 : window);
  return report;
}

ChannelRealization worst_case_pattern(const ConvolutionalCode& code, int j, std::uint64_t budget) {
  const auto w = minimum_sum_rank_witness(code, j, budget);
  ChannelRealization ch;
  for (const auto& a_star : w.annihilators) {
    GroundMatrix a = ground_zeros(code.n(), code.n(), code.q());
    a.leftCols(a_star.cols()) = a_star;
    ch.rhos.push_back(static_cast<int>(a_star.cols()));
    ch.mats.push_back(std::move(a));
  }
  return ch;
}

SimReport simulate(const ConvolutionalCode& code, const ChannelConfig& cfg, int T, int trials) {
  validate(cfg);
  if (cfg.n != code.n()) throw DimensionError("channel packet length differs from the code length");
  if (cfg.q != code.q()) throw FieldMismatch("channel ground field differs from the code's");
  if (T < 0 || trials < 0) throw DomainError("simulate needs T >= 0 and trials >= 0");
  const auto& f = code.field();
  const std::uint64_t field_size = f->size().value_or(0);

  SimReport total;
  for (int trial = 0; trial < trials; ++trial) {
    ChannelConfig c = cfg;
    c.seed = cfg.seed + trial;
    c.horizon = cfg.horizon + T;
    const ChannelRealization ch = sample_channel(c);

    Rng rng(c.seed ^ 0x5eed5eed5eed5eedULL);
    std::vector<ExtVector> sources;
    for (int t = 0; t < c.horizon; ++t) {
      ExtVector s = zero_vector(code.k(), f);
      if (t < cfg.horizon) {
        for (int i = 0; i < code.k(); ++i) {
          s(i) = field_size ? f->from_index(uniform_below(rng, field_size)) : f->from_index(rng());
        }
      }
      sources.push_back(std::move(s));
    }
    const auto x = encode(code, sources);
    std::vector<ExtVector> received;
    for (int t = 0; t < c.horizon; ++t) received.push_back(x[t] * embed(ch.mats[t], f));

    SimReport r = decode_stream(code, received, ch, T, cfg.horizon, cfg.W);
    for (auto& p : r.packets) {
      if (p.estimate && *p.estimate != sources[p.t]) ++total.mismatches;
      total.packets.push_back(std::move(p));
    }
    total.packets_total += r.packets_total;
    total.losses += r.losses;
    total.decode_failures += r.decode_failures;
    total.max_window_deficiency = std::max(total.max_window_deficiency, r.max_window_deficiency);
    ++total.trials;
  }
  total.loss_rate = total.packets_total ? static_cast<double>(total.losses) / total.packets_total : 0.0;
  return total;
}

}  // namespace msr
