#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lptile/geometry.hpp"

namespace lptile {

/// Realisable distance powers s = d^p up to a limit, in Z^n or (with a
/// modulus) in Z_q^n where each coordinate contributes at most floor(q/2).
struct AchievabilityTable {
    Exponent exponent;
    int dimension;
    std::optional<std::int64_t> modulus;
    std::int64_t limit;
    std::vector<std::int64_t> achievable;  // increasing
};

/// s is a sum of n p-th powers of integers in [0, L], L = floor(q/2) when a
/// modulus is given. For p = 2 without modulus the classical sum-of-squares
/// characterisations are used; everything else goes through the
/// decomposition table.
bool is_achievable(Exponent exponent, int n, std::int64_t s, std::optional<std::int64_t> modulus = std::nullopt);

AchievabilityTable enumerate_achievable(Exponent exponent, int n, std::int64_t limit,
                                        std::optional<std::int64_t> modulus = std::nullopt);

/// Decomposition-table answer only; never takes the p = 2 shortcut.
bool is_sum_of_powers(int p, int n, std::int64_t s, std::optional<std::int64_t> coordinate_cap = std::nullopt);

bool is_sum_of_two_squares(std::int64_t s);
bool is_sum_of_three_squares(std::int64_t s);

struct WaringValue {
    std::int64_t value;
    bool conjectured;
    // The stored entry for p = 14 reproduces a printed value that the standard
    // literature attributes to p = 4 (g(4) = 19); it is kept verbatim and flagged.
    bool suspect;
};

/// Smallest k such that every natural number is a sum of k p-th powers.
/// Tabulated values for p in {2, 3, 14}; otherwise 2^p + floor((3/2)^p) - 2,
/// flagged as conjectured.
WaringValue waring_g(int p);

}  // namespace lptile
