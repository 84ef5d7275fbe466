#include "lptile/distance_sets.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>

#include "lptile/arith.hpp"

namespace lptile {

namespace {

constexpr std::int64_t kMaxTableSize = std::int64_t{1} << 28;

// Minimal number of positive p-th powers (bases capped when cap > 0) summing
// to each t < size. Saturates at 0xFFFF.
class DecompositionCache {
public:
    bool within(int p, std::int64_t cap, std::int64_t t, int parts) {
        {
            std::shared_lock lock(mutex_);
            const auto it = tables_.find({p, cap});
            if (it != tables_.end() && static_cast<std::int64_t>(it->second.size()) > t) return it->second[t] <= parts;
        }
        std::unique_lock lock(mutex_);
        auto& table = tables_[{p, cap}];
        if (static_cast<std::int64_t>(table.size()) <= t) table = build(p, cap, std::min(kMaxTableSize, std::max<std::int64_t>(t + 1, 2 * table.size())));
        return table[t] <= parts;
    }

private:
    static std::vector<std::uint16_t> build(int p, std::int64_t cap, std::int64_t size) {
        constexpr std::uint16_t kUnreached = std::numeric_limits<std::uint16_t>::max();
        std::vector<std::uint16_t> best(static_cast<std::size_t>(size), kUnreached);
        best[0] = 0;
        std::vector<std::int64_t> powers;
        for (std::int64_t b = 1;; ++b) {
            if (cap > 0 && b > cap) break;
            const std::int64_t pw = ipow(b, p);
            if (pw >= size) break;
            powers.push_back(pw);
        }
        for (std::int64_t t = 1; t < size; ++t) {
            std::uint16_t m = kUnreached;
            for (const std::int64_t pw : powers) {
                if (pw > t) break;
                const std::uint16_t prev = best[t - pw];
                if (prev != kUnreached && prev + 1 < m) m = static_cast<std::uint16_t>(prev + 1);
            }
            best[t] = m;
        }
        return best;
    }

    std::shared_mutex mutex_;
    std::map<std::pair<int, std::int64_t>, std::vector<std::uint16_t>> tables_;
};

DecompositionCache& cache() {
    static DecompositionCache instance;
    return instance;
}

void require_modulus(std::optional<std::int64_t> modulus) {
    if (modulus && *modulus < 2) throw std::invalid_argument("modulus must be >= 2");
}

}  // namespace

bool is_sum_of_two_squares(std::int64_t s) {
    if (s < 0) return false;
    if (s == 0) return true;
    for (const auto& [prime, exp] : factorize(s))
        if (prime % 4 == 3 && exp % 2 == 1) return false;
    return true;
}

bool is_sum_of_three_squares(std::int64_t s) {
    if (s < 0) return false;
    if (s == 0) return true;
    while (s % 4 == 0) s /= 4;
    return s % 8 != 7;
}

bool is_sum_of_powers(int p, int n, std::int64_t s, std::optional<std::int64_t> coordinate_cap) {
    if (p < 1) throw std::invalid_argument("exponent must be >= 1");
    if (n < 1) throw std::invalid_argument("dimension must be >= 1");
    if (s < 0) return false;
    if (s == 0) return true;
    const std::int64_t cap = coordinate_cap.value_or(0);
    if (coordinate_cap) {
        if (cap < 1) return false;
        try {
            if (s > checked_mul(n, ipow(cap, p))) return false;
        } catch (const std::overflow_error&) {
            // n * cap^p beyond 64 bits: no early rejection possible.
        }
    }
    if (s >= kMaxTableSize) throw std::length_error("is_sum_of_powers: value beyond decomposition table range");
    return cache().within(p, cap, s, n);
}

bool is_achievable(Exponent exponent, int n, std::int64_t s, std::optional<std::int64_t> modulus) {
    if (n < 1) throw std::invalid_argument("dimension must be >= 1");
    if (s < 0) throw std::invalid_argument("distance power must be >= 0");
    require_modulus(modulus);
    const std::optional<std::int64_t> cap = modulus ? std::optional(*modulus / 2) : std::nullopt;

    if (exponent.is_infinite()) return !cap || s <= *cap;

    const int p = exponent.value();
    if (p == 1) return !cap || s <= checked_mul(n, *cap);
    if (p == 2 && !cap) {
        switch (n) {
            case 1: return ipow(iroot_floor(s, 2), 2) == s;
            case 2: return is_sum_of_two_squares(s);
            case 3: return is_sum_of_three_squares(s);
            default: return true;
        }
    }
    return is_sum_of_powers(p, n, s, cap);
}

AchievabilityTable enumerate_achievable(Exponent exponent, int n, std::int64_t limit,
                                        std::optional<std::int64_t> modulus) {
    if (limit < 0) throw std::invalid_argument("limit must be >= 0");
    AchievabilityTable table{exponent, n, modulus, limit, {}};
    for (std::int64_t s = 0; s <= limit; ++s)
        if (is_achievable(exponent, n, s, modulus)) table.achievable.push_back(s);
    return table;
}

WaringValue waring_g(int p) {
    if (p < 2) throw std::invalid_argument("waring_g requires p >= 2");
    switch (p) {
        case 2: return {4, false, false};
        case 3: return {9, false, false};
        case 14: return {19, false, true};
        default: break;
    }
    if (p > 62) throw std::overflow_error("waring_g: formula value exceeds 64 bits");
    __int128 three = 1, two = 1;
    for (int i = 0; i < p; ++i) {
        three *= 3;
        two *= 2;
    }
    const __int128 value = two + three / two - 2;
    return {static_cast<std::int64_t>(value), true, false};
}

}  // namespace lptile
