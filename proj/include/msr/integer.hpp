#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace msr {

using PrimeFactorization = std::vector<std::pair<std::uint64_t, int>>;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Deterministic Miller-Rabin; exact for every 64-bit input.
bool is_prime(std::uint64_t n);

/// q^e, or nullopt when the result does not fit in 64 bits.
std::optional<std::uint64_t> checked_pow(std::uint64_t q, unsigned e);

/// Trial division up to 10^6, then Pollard-Brent rho on the cofactor.
/// Throws FactorizationInfeasible if rho gives up on a composite cofactor.
PrimeFactorization factorize(std::uint64_t n);

/// Gaussian binomial coefficient [n choose k]_q; nullopt on overflow.
std::optional<std::uint64_t> gaussian_binomial(int n, int k, std::uint64_t q);

}  // namespace msr
