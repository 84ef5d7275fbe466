#pragma once

#include <cstdint>
#include <span>

namespace lptile {

/// One term c * a^(1/p) of a radical sum.
struct RadicalTerm {
    std::int64_t coefficient;
    std::int64_t radicand;  // >= 0
};

/// Exact sign (-1, 0, +1) of sum_i c_i * a_i^(1/p).
///
/// Each radicand is split as a = m^p * k with k free of p-th powers. Real p-th
/// roots of distinct p-th-power-free integers are linearly independent over
/// the rationals, so the sum vanishes iff every group of equal k has zero
/// integer weight. A non-vanishing sum is signed with 330-bit floating point.
int radical_sum_sign(std::span<const RadicalTerm> terms, int p);

}  // namespace lptile
