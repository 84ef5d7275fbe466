#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace lptile {

/// Exact integer helpers shared by the geometry, lattice and search modules.
/// Every routine either returns the exact answer or throws std::overflow_error.

std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

/// base^exp for exp >= 0.
std::int64_t ipow(std::int64_t base, int exp);

/// Largest x >= 0 with x^p <= value (value >= 0, p >= 1).
std::int64_t iroot_floor(std::int64_t value, int p);

/// Smallest x >= 0 with x^p >= value.
std::int64_t iroot_ceil(std::int64_t value, int p);

/// Sum of |v_i|^p. Accumulates in 128 bits and throws if the result does not
/// fit in 64 bits.
std::int64_t power_sum(std::span<const std::int64_t> v, int p);

/// Sum of |v_i|^p <= bound, decided exactly. Falls back to arbitrary precision
/// when the 128-bit accumulator would overflow.
bool power_sum_leq(std::span<const std::int64_t> v, int p, std::int64_t bound);

/// Non-negative residue of a modulo m (m > 0).
constexpr std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
    const std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

/// Floor division for m > 0.
constexpr std::int64_t div_floor(std::int64_t a, std::int64_t m) {
    std::int64_t q = a / m;
    if ((a % m != 0) && (a < 0)) --q;
    return q;
}

struct ExtendedGcd {
    std::int64_t g;
    std::int64_t x;
    std::int64_t y;
};

/// g = gcd(a, b) >= 0 with a*x + b*y = g.
ExtendedGcd extended_gcd(std::int64_t a, std::int64_t b);

/// Prime factorisation by trial division; input >= 1.
std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t value);

/// Positive divisors in increasing order.
std::vector<std::int64_t> divisors(std::int64_t value);

}  // namespace lptile
