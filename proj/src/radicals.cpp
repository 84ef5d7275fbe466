#include "lptile/radicals.hpp"

#include <map>
#include <stdexcept>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "lptile/arith.hpp"

namespace lptile {

namespace {

struct SplitRadical {
    std::int64_t outside;  // m
    std::int64_t kernel;   // k, p-th-power-free
};

SplitRadical split(std::int64_t a, int p) {
    if (a == 0) return {0, 1};
    std::int64_t outside = 1;
    std::int64_t kernel = 1;
    for (const auto& [prime, exp] : factorize(a)) {
        outside = checked_mul(outside, ipow(prime, exp / p));
        kernel = checked_mul(kernel, ipow(prime, exp % p));
    }
    return {outside, kernel};
}

}  // namespace

int radical_sum_sign(std::span<const RadicalTerm> terms, int p) {
    if (p < 1) throw std::invalid_argument("radical_sum_sign: p must be >= 1");

    std::map<std::int64_t, std::int64_t> weight;  // kernel -> sum of c * m
    for (const auto& t : terms) {
        if (t.radicand < 0) throw std::invalid_argument("radical_sum_sign: negative radicand");
        const SplitRadical s = split(t.radicand, p);
        if (s.outside == 0) continue;
        weight[s.kernel] = checked_add(weight[s.kernel], checked_mul(t.coefficient, s.outside));
    }

    using Float = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<100>>;
    Float sum = 0;
    bool all_zero = true;
    for (const auto& [kernel, w] : weight) {
        if (w == 0) continue;
        all_zero = false;
        sum += Float(w) * boost::multiprecision::pow(Float(kernel), Float(1) / Float(p));
    }
    if (all_zero) return 0;
    if (sum > 0) return 1;
    if (sum < 0) return -1;
    throw std::logic_error("radical_sum_sign: non-vanishing sum evaluated to zero");
}

}  // namespace lptile
