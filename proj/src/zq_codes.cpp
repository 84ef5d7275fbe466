#include "lptile/zq_codes.hpp"

#include <algorithm>
#include <stdexcept>

#include "lptile/arith.hpp"
#include "lptile/distance_sets.hpp"

namespace lptile {

namespace {

constexpr std::int64_t kMaxSpace = std::int64_t{1} << 28;

std::int64_t space_size(std::int64_t q, int n) {
    std::int64_t size = 1;
    for (int i = 0; i < n; ++i) {
        size = checked_mul(size, q);
        if (size > kMaxSpace) throw std::length_error("Z_q^n too large to scan densely");
    }
    return size;
}

std::int64_t encode(const LatticePoint& x, std::int64_t q) {
    std::int64_t idx = 0;
    for (const std::int64_t v : x) idx = idx * q + mod_floor(v, q);
    return idx;
}

std::int64_t lee_part(std::int64_t a, std::int64_t q, const Exponent& e) {
    const std::int64_t l = lee_distance(a, 0, q);
    return e.is_infinite() ? l : ipow(l, e.value());
}

void collect_zq_ball(std::int64_t q, const RadiusToken& r, std::size_t level, std::int64_t used, LatticePoint& x,
                     std::vector<LatticePoint>& out) {
    if (level == x.size()) {
        out.push_back(x);
        return;
    }
    const Exponent e = r.exponent();
    for (std::int64_t a = 0; a < q; ++a) {
        const std::int64_t part = lee_part(a, q, e);
        const std::int64_t next = e.is_infinite() ? std::max(used, part) : used + part;
        if (next > r.power_value()) continue;
        x[level] = a;
        collect_zq_ball(q, r, level + 1, next, x, out);
    }
}

std::vector<LatticePoint> nonzero_codewords(const LinearCodeZq& code) {
    auto words = codewords(code);
    words.erase(words.begin());  // lexicographically first is the zero word
    if (words.empty()) throw std::invalid_argument("code has a single codeword");
    return words;
}

// Bitmap of (B - B) mod q over Z_q^n.
std::vector<char> difference_bitmap(std::int64_t q, int n, const std::vector<LatticePoint>& ball) {
    std::vector<char> seen(static_cast<std::size_t>(space_size(q, n)), 0);
    LatticePoint diff(static_cast<std::size_t>(n));
    for (const auto& a : ball)
        for (const auto& b : ball) {
            for (int i = 0; i < n; ++i) diff[i] = a[i] - b[i];
            seen[static_cast<std::size_t>(encode(diff, q))] = 1;
        }
    return seen;
}

bool balls_disjoint(const std::vector<LatticePoint>& nonzero_words, std::int64_t q, int n,
                    const std::vector<LatticePoint>& ball) {
    const auto diffs = difference_bitmap(q, n, ball);
    return std::none_of(nonzero_words.begin(), nonzero_words.end(),
                        [&](const LatticePoint& c) { return diffs[static_cast<std::size_t>(encode(c, q))] != 0; });
}

std::int64_t max_token(std::int64_t q, int n, const Exponent& e) {
    return e.is_infinite() ? q / 2 : checked_mul(n, ipow(q / 2, e.value()));
}

void require_achievable(const LinearCodeZq& code, const RadiusToken& r) {
    if (!is_achievable(r.exponent(), code.dimension(), r.power_value(), code.modulus()))
        throw std::invalid_argument("radius " + r.to_string() + " is not achievable in Z_q^n");
}

}  // namespace

LinearCodeZq::LinearCodeZq(std::int64_t q, int n, IntMatrix generators) : q_(q), n_(n), generators_(std::move(generators)) {
    if (q < 2) throw std::invalid_argument("modulus must be >= 2");
    if (n < 1) throw std::invalid_argument("dimension must be >= 1");
    for (auto& g : generators_) {
        if (static_cast<int>(g.size()) != n) throw std::invalid_argument("generator has wrong length");
        for (auto& x : g) x = mod_floor(x, q);
    }
}

IntegerLattice construction_a(const LinearCodeZq& code) {
    const int n = code.dimension();
    IntMatrix rows = code.generators();
    for (int i = 0; i < n; ++i) {
        std::vector<std::int64_t> row(static_cast<std::size_t>(n), 0);
        row[i] = code.modulus();
        rows.push_back(std::move(row));
    }
    return IntegerLattice::from_generators(rows, n);
}

std::int64_t code_cardinality(const LinearCodeZq& code) {
    const std::int64_t det = construction_a(code).determinant();
    std::int64_t total = 1;
    for (int i = 0; i < code.dimension(); ++i) total = checked_mul(total, code.modulus());
    return total / det;
}

std::vector<LatticePoint> codewords(const LinearCodeZq& code) {
    const std::int64_t size = code_cardinality(code);
    if (size > kMaxMaterializedCode) throw std::length_error("code too large to materialise");
    const std::int64_t q = code.modulus();

    // The lifted lattice contains qZ^n, so its points in [0, q)^n are the codewords.
    const IntegerLattice lattice = construction_a(code);
    std::vector<LatticePoint> words;
    words.reserve(static_cast<std::size_t>(size));
    for (auto& v : enumerate_in_box(lattice, q - 1))
        if (std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x >= 0; })) words.push_back(std::move(v));
    if (static_cast<std::int64_t>(words.size()) != size) throw std::logic_error("codeword count mismatch");
    return words;
}

std::vector<LatticePoint> zq_ball(std::int64_t q, int n, const RadiusToken& radius) {
    if (q < 2) throw std::invalid_argument("modulus must be >= 2");
    if (n < 1) throw std::invalid_argument("dimension must be >= 1");
    std::vector<LatticePoint> out;
    LatticePoint x(static_cast<std::size_t>(n), 0);
    collect_zq_ball(q, radius, 0, 0, x, out);
    return out;
}

RadiusToken code_minimum_distance(const LinearCodeZq& code, Exponent exponent) {
    const auto words = nonzero_codewords(code);
    const LatticePoint zero(static_cast<std::size_t>(code.dimension()), 0);
    std::optional<RadiusToken> best;
    for (const auto& c : words) {
        const RadiusToken t = plee_distance(c, zero, code.modulus(), exponent);
        if (!best || t < *best) best = t;
    }
    return *best;
}

RadiusToken code_packing_radius(const LinearCodeZq& code, Exponent exponent) {
    const auto words = nonzero_codewords(code);
    const std::int64_t q = code.modulus();
    const int n = code.dimension();
    // Balls grow with the radius, so the first overlapping token ends the scan.
    RadiusToken best(exponent, 0);
    const std::int64_t top = max_token(q, n, exponent);
    for (std::int64_t s = 1; s <= top; ++s) {
        if (!is_achievable(exponent, n, s, q)) continue;
        const RadiusToken r(exponent, s);
        if (!balls_disjoint(words, q, n, zq_ball(q, n, r))) break;
        best = r;
    }
    return best;
}

bool code_is_perfect(const LinearCodeZq& code, const RadiusToken& radius) {
    require_achievable(code, radius);
    const std::int64_t q = code.modulus();
    const int n = code.dimension();
    const auto ball = zq_ball(q, n, radius);
    std::vector<std::uint32_t> cover(static_cast<std::size_t>(space_size(q, n)), 0);
    LatticePoint x(static_cast<std::size_t>(n));
    for (const auto& c : codewords(code))
        for (const auto& b : ball) {
            for (int i = 0; i < n; ++i) x[i] = c[i] + b[i];
            ++cover[static_cast<std::size_t>(encode(x, q))];
        }
    return std::all_of(cover.begin(), cover.end(), [](std::uint32_t k) { return k == 1; });
}

bool code_is_perfect_by_counting(const LinearCodeZq& code, const RadiusToken& radius) {
    require_achievable(code, radius);
    const std::int64_t q = code.modulus();
    const int n = code.dimension();
    const auto ball = zq_ball(q, n, radius);
    const std::int64_t size = code_cardinality(code);
    if (checked_mul(size, static_cast<std::int64_t>(ball.size())) != space_size(q, n)) return false;
    if (size == 1) return true;
    return balls_disjoint(nonzero_codewords(code), q, n, ball);
}

TransferCertificate transfer_packing_radius(const LinearCodeZq& code, Exponent exponent) {
    const std::int64_t q = code.modulus();
    const RadiusToken r = code_packing_radius(code, exponent);
    bool met;
    if (exponent.is_infinite()) {
        met = 2 * r.power_value() < q;
    } else {
        // 2^p s < q^p, in 128 bits.
        __int128 lhs = r.power_value(), rhs = 1;
        for (int i = 0; i < exponent.value(); ++i) {
            lhs *= 2;
            rhs *= q;
        }
        met = lhs < rhs;
    }

    TransferCertificate cert{met, r, std::nullopt, false, std::nullopt, ""};
    if (!met) {
        cert.verdict = "no transfer guaranteed";
        return cert;
    }
    const IntegerLattice lattice = construction_a(code);
    cert.lattice_radius = packing_radius(lattice, exponent);
    cert.code_perfect = code_is_perfect_by_counting(code, r);
    if (cert.code_perfect) cert.lattice_certificate = verify_perfect(lattice, r);

    if (!(*cert.lattice_radius == r))
        cert.verdict = "radius mismatch";
    else if (cert.code_perfect && !cert.lattice_certificate->perfect)
        cert.verdict = "perfection did not transfer";
    else
        cert.verdict = cert.code_perfect ? "radius and perfection transfer" : "radius transfers";
    return cert;
}

LinftyVerdict linfty_existence(std::int64_t q, int n) {
    if (q < 2) throw std::invalid_argument("modulus must be >= 2");
    if (n < 1) throw std::invalid_argument("dimension must be >= 1");
    LinftyVerdict verdict;
    for (const std::int64_t b : divisors(q)) {
        if (b == 1 || b % 2 == 0 || q / b == 1) continue;
        IntMatrix gens;
        for (int i = 0; i < n; ++i) {
            std::vector<std::int64_t> g(static_cast<std::size_t>(n), 0);
            g[i] = b;
            gens.push_back(std::move(g));
        }
        LinearCodeZq code(q, n, std::move(gens));
        const std::int64_t r = (b - 1) / 2;
        verdict.nontrivial_exists = true;
        verdict.odd_factor = b;
        verdict.cofactor = q / b;
        verdict.radius = r;
        verdict.counting_identity_holds =
            checked_mul(code_cardinality(code), ipow(2 * r + 1, n)) == ipow(q, n);
        verdict.construction = std::move(code);
        break;
    }
    return verdict;
}

}  // namespace lptile
