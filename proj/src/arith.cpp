#include "lptile/arith.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace lptile {

namespace {

using i128 = __int128;

constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();

// Saturating |base|^exp in 128 bits; returns -1 on overflow.
i128 pow128(std::int64_t base, int exp) {
    i128 b = base < 0 ? -static_cast<i128>(base) : static_cast<i128>(base);
    i128 result = 1;
    const i128 limit = static_cast<i128>(1) << 120;
    for (int i = 0; i < exp; ++i) {
        if (b != 0 && result > limit / b) return -1;
        result *= b;
    }
    return result;
}

}  // namespace

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t out;
    if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("integer addition overflow");
    return out;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t out;
    if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("integer multiplication overflow");
    return out;
}

std::int64_t ipow(std::int64_t base, int exp) {
    if (exp < 0) throw std::invalid_argument("negative exponent");
    std::int64_t result = 1;
    for (int i = 0; i < exp; ++i) result = checked_mul(result, base);
    return result;
}

std::int64_t iroot_floor(std::int64_t value, int p) {
    if (value < 0 || p < 1) throw std::invalid_argument("iroot_floor: need value >= 0 and p >= 1");
    if (p == 1 || value < 2) return value;
    // Upper bound for the root: 2^ceil(63/p).
    std::int64_t lo = 0;
    std::int64_t hi = std::int64_t{1} << ((63 + p - 1) / p);
    while (lo < hi) {
        const std::int64_t mid = lo + (hi - lo + 1) / 2;
        const i128 pw = pow128(mid, p);
        if (pw >= 0 && pw <= value)
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

std::int64_t iroot_ceil(std::int64_t value, int p) {
    const std::int64_t r = iroot_floor(value, p);
    const i128 pw = pow128(r, p);
    return pw == value ? r : r + 1;
}

std::int64_t power_sum(std::span<const std::int64_t> v, int p) {
    if (p < 1) throw std::invalid_argument("power_sum: p must be >= 1");
    i128 acc = 0;
    for (const std::int64_t x : v) {
        const i128 term = pow128(x, p);
        if (term < 0) throw std::overflow_error("power_sum: term exceeds 128 bits");
        acc += term;
        if (acc > kMax) throw std::overflow_error("power_sum: result exceeds 64 bits");
    }
    return static_cast<std::int64_t>(acc);
}

bool power_sum_leq(std::span<const std::int64_t> v, int p, std::int64_t bound) {
    if (p < 1) throw std::invalid_argument("power_sum_leq: p must be >= 1");
    i128 acc = 0;
    bool fits = true;
    for (const std::int64_t x : v) {
        const i128 term = pow128(x, p);
        if (term < 0) {
            fits = false;
            break;
        }
        acc += term;
        if (acc > bound) return false;
    }
    if (fits) return acc <= bound;

    using boost::multiprecision::cpp_int;
    cpp_int big = 0;
    for (const std::int64_t x : v) {
        cpp_int term = boost::multiprecision::pow(cpp_int(x < 0 ? -cpp_int(x) : cpp_int(x)), static_cast<unsigned>(p));
        big += term;
        if (big > bound) return false;
    }
    return true;
}

ExtendedGcd extended_gcd(std::int64_t a, std::int64_t b) {
    std::int64_t old_r = a, r = b;
    std::int64_t old_s = 1, s = 0;
    std::int64_t old_t = 0, t = 1;
    while (r != 0) {
        const std::int64_t q = old_r / r;
        std::int64_t tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) return {-old_r, -old_s, -old_t};
    return {old_r, old_s, old_t};
}

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t value) {
    if (value < 1) throw std::invalid_argument("factorize: value must be >= 1");
    std::vector<std::pair<std::int64_t, int>> out;
    for (std::int64_t d = 2; d <= value / d; ++d) {
        if (value % d != 0) continue;
        int e = 0;
        while (value % d == 0) {
            value /= d;
            ++e;
        }
        out.emplace_back(d, e);
    }
    if (value > 1) out.emplace_back(value, 1);
    return out;
}

std::vector<std::int64_t> divisors(std::int64_t value) {
    std::vector<std::int64_t> out{1};
    for (const auto& [prime, exp] : factorize(value)) {
        const std::size_t existing = out.size();
        std::int64_t pw = 1;
        for (int e = 1; e <= exp; ++e) {
            pw *= prime;
            for (std::size_t i = 0; i < existing; ++i) out.push_back(out[i] * pw);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace lptile
