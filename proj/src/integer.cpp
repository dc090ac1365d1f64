#include "msr/integer.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "msr/errors.hpp"

namespace msr {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  static constexpr std::uint64_t kSmall[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (std::uint64_t p : kSmall) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : kSmall) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::optional<std::uint64_t> checked_pow(std::uint64_t q, unsigned e) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (q != 0 && r > UINT64_MAX / q) return std::nullopt;
    r *= q;
  }
  return r;
}

namespace {

// Brent's variant; returns a non-trivial divisor or 0 after exhausting attempts.
std::uint64_t pollard_brent(std::uint64_t n) {
  if (n % 2 == 0) return 2;
  constexpr int kAttempts = 64;
  constexpr std::uint64_t kMaxIterations = 1ull << 26;
  for (std::uint64_t c = 1; c <= kAttempts; ++c) {
    auto f = [&](std::uint64_t x) { return (mul_mod(x, x, n) + c) % n; };
    std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
    std::uint64_t r = 1;
    constexpr std::uint64_t m = 128;
    std::uint64_t iterations = 0;
    while (g == 1 && iterations < kMaxIterations) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      while (k < r && g == 1) {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      }
      iterations += r;
      r <<= 1;
    }
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n && g != 1) return g;
  }
  return 0;
}

void factor_into(std::uint64_t n, std::map<std::uint64_t, int>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  std::uint64_t d = pollard_brent(n);
  if (d == 0) throw FactorizationInfeasible("factorization infeasible for cofactor " + std::to_string(n));
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

PrimeFactorization factorize(std::uint64_t n) {
  if (n == 0) throw DomainError("cannot factor zero");
  std::map<std::uint64_t, int> found;
  constexpr std::uint64_t kTrialLimit = 1'000'000;
  for (std::uint64_t p = 2; p <= kTrialLimit && p * p <= n; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      ++found[p];
      n /= p;
    }
  }
  factor_into(n, found);
  return {found.begin(), found.end()};
}

std::optional<std::uint64_t> gaussian_binomial(int n, int k, std::uint64_t q) {
  if (k < 0 || k > n) return 0;
  // Row-by-row q-Pascal recurrence keeps intermediates exact.
  std::vector<std::uint64_t> row(k + 1, 0);
  row[0] = 1;
  for (int i = 1; i <= n; ++i) {
    for (int j = std::min(i, k); j >= 1; --j) {
      auto qj = checked_pow(q, j);
      if (!qj) return std::nullopt;
      unsigned __int128 v = static_cast<unsigned __int128>(row[j]) * *qj + row[j - 1];
      if (v > UINT64_MAX) return std::nullopt;
      row[j] = static_cast<std::uint64_t>(v);
    }
  }
  return row[k];
}

}  // namespace msr
