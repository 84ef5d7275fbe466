#include "lptile/geometry.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <stdexcept>

#include "lptile/arith.hpp"

namespace lptile {

namespace {

void require_same_dimension(std::span<const std::int64_t> x, std::span<const std::int64_t> y) {
    if (x.size() != y.size()) throw std::invalid_argument("dimension mismatch");
    if (x.empty()) throw std::invalid_argument("dimension must be >= 1");
}

void require_residues(std::span<const std::int64_t> x, std::int64_t q) {
    for (const std::int64_t a : x)
        if (a < 0 || a >= q) throw std::invalid_argument("residue out of range [0, q)");
}

// Remaining-budget recursion over coordinates; emits points in lexicographic order.
void fill_ball(int n, int p, std::int64_t budget, LatticePoint& prefix, std::vector<LatticePoint>& out) {
    const int depth = static_cast<int>(prefix.size());
    if (depth == n) {
        out.push_back(prefix);
        return;
    }
    const std::int64_t bound = iroot_floor(budget, p);
    for (std::int64_t x = -bound; x <= bound; ++x) {
        prefix.push_back(x);
        fill_ball(n, p, budget - ipow(x < 0 ? -x : x, p), prefix, out);
        prefix.pop_back();
    }
}

void fill_cube(int n, std::int64_t r, LatticePoint& prefix, std::vector<LatticePoint>& out) {
    if (static_cast<int>(prefix.size()) == n) {
        out.push_back(prefix);
        return;
    }
    for (std::int64_t x = -r; x <= r; ++x) {
        prefix.push_back(x);
        fill_cube(n, r, prefix, out);
        prefix.pop_back();
    }
}

std::int64_t count_points(int dims, int p, std::int64_t budget, std::map<std::pair<int, std::int64_t>, std::int64_t>& memo) {
    if (dims == 0) return 1;
    const auto key = std::make_pair(dims, budget);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    const std::int64_t bound = iroot_floor(budget, p);
    std::int64_t total = count_points(dims - 1, p, budget, memo);
    for (std::int64_t x = 1; x <= bound; ++x)
        total = checked_add(total, checked_mul(2, count_points(dims - 1, p, budget - ipow(x, p), memo)));
    memo.emplace(key, total);
    return total;
}

}  // namespace

// ---------------------------------------------------------------- Exponent

Exponent Exponent::finite(int p) {
    if (p < 1) throw std::invalid_argument("finite exponent must be >= 1");
    return Exponent(p);
}

Exponent Exponent::parse(std::string_view text) {
    if (text == "inf" || text == "infinity" || text == "oo") return infinity();
    int p = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), p);
    if (ec != std::errc{} || ptr != text.data() + text.size() || p < 1)
        throw std::invalid_argument("exponent must be a positive integer or 'inf': " + std::string(text));
    return finite(p);
}

int Exponent::value() const {
    if (is_infinite()) throw std::logic_error("infinite exponent has no finite value");
    return p_;
}

std::string Exponent::to_string() const { return is_infinite() ? "inf" : std::to_string(p_); }

// ---------------------------------------------------------------- RadiusToken

RadiusToken::RadiusToken(Exponent exponent, std::int64_t power_value) : exponent_(exponent), power_(power_value) {
    if (power_value < 0) throw std::invalid_argument("radius power value must be >= 0");
}

double RadiusToken::radius() const {
    if (exponent_.is_infinite()) return static_cast<double>(power_);
    return std::pow(static_cast<double>(power_), 1.0 / exponent_.value());
}

std::optional<std::int64_t> RadiusToken::integer_radius() const {
    if (exponent_.is_infinite()) return power_;
    const std::int64_t r = iroot_floor(power_, exponent_.value());
    if (ipow(r, exponent_.value()) == power_) return r;
    return std::nullopt;
}

std::int64_t RadiusToken::coordinate_bound() const {
    return exponent_.is_infinite() ? power_ : iroot_floor(power_, exponent_.value());
}

std::string RadiusToken::to_string() const {
    if (exponent_.is_infinite() || exponent_.value() == 1) return std::to_string(power_);
    if (auto r = integer_radius()) return std::to_string(*r);
    return std::to_string(power_) + "^(1/" + std::to_string(exponent_.value()) + ")";
}

std::strong_ordering operator<=>(const RadiusToken& a, const RadiusToken& b) {
    if (!(a.exponent_ == b.exponent_)) throw std::invalid_argument("comparing radius tokens of different exponents");
    return a.power_ <=> b.power_;
}

// ---------------------------------------------------------------- norms

RadiusToken norm_token(std::span<const std::int64_t> v, Exponent exponent) {
    if (exponent.is_infinite()) {
        std::int64_t m = 0;
        for (const std::int64_t x : v) m = std::max(m, x < 0 ? -x : x);
        return {exponent, m};
    }
    return {exponent, power_sum(v, exponent.value())};
}

bool within_radius(std::span<const std::int64_t> v, const RadiusToken& radius) {
    if (radius.exponent().is_infinite()) {
        for (const std::int64_t x : v)
            if ((x < 0 ? -x : x) > radius.power_value()) return false;
        return true;
    }
    return power_sum_leq(v, radius.exponent().value(), radius.power_value());
}

RadiusToken lp_distance(std::span<const std::int64_t> x, std::span<const std::int64_t> y, int p) {
    require_same_dimension(x, y);
    LatticePoint diff(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) diff[i] = x[i] - y[i];
    return norm_token(diff, Exponent::finite(p));
}

std::int64_t linf_distance(std::span<const std::int64_t> x, std::span<const std::int64_t> y) {
    require_same_dimension(x, y);
    std::int64_t m = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const std::int64_t d = x[i] - y[i];
        m = std::max(m, d < 0 ? -d : d);
    }
    return m;
}

std::int64_t lee_distance(std::int64_t a, std::int64_t b, std::int64_t q) {
    if (q < 2) throw std::invalid_argument("modulus must be >= 2");
    if (a < 0 || a >= q || b < 0 || b >= q) throw std::invalid_argument("residue out of range [0, q)");
    return std::min(mod_floor(a - b, q), mod_floor(b - a, q));
}

RadiusToken plee_distance(std::span<const std::int64_t> x, std::span<const std::int64_t> y, std::int64_t q,
                          Exponent exponent) {
    require_same_dimension(x, y);
    if (q < 2) throw std::invalid_argument("modulus must be >= 2");
    require_residues(x, q);
    require_residues(y, q);
    LatticePoint lee(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) lee[i] = lee_distance(x[i], y[i], q);
    return norm_token(lee, exponent);
}

RadiusToken induced_distance_oracle(std::span<const std::int64_t> x, std::span<const std::int64_t> y,
                                    std::int64_t q, int p, int shift_bound) {
    require_same_dimension(x, y);
    if (q < 2) throw std::invalid_argument("modulus must be >= 2");
    if (shift_bound < 1) throw std::invalid_argument("shift_bound must be >= 1");
    require_residues(x, q);
    require_residues(y, q);

    // Enumerate all pairs (t, w) of shift vectors as one odometer over 2n digits.
    const std::size_t n = x.size();
    const std::int64_t width = 2 * static_cast<std::int64_t>(shift_bound) + 1;
    std::vector<std::int64_t> digits(2 * n, 0);
    std::optional<std::int64_t> best;
    LatticePoint diff(n);
    while (true) {
        for (std::size_t i = 0; i < n; ++i) {
            const std::int64_t t = digits[i] - shift_bound;
            const std::int64_t w = digits[n + i] - shift_bound;
            diff[i] = (x[i] + q * t) - (y[i] + q * w);
        }
        const std::int64_t s = power_sum(diff, p);
        if (!best || s < *best) best = s;

        std::size_t k = 0;
        while (k < digits.size() && ++digits[k] == width) digits[k++] = 0;
        if (k == digits.size()) break;
    }
    return {Exponent::finite(p), *best};
}

// ---------------------------------------------------------------- balls

bool DiscreteBall::contains(std::span<const std::int64_t> x) const {
    if (static_cast<int>(x.size()) != dimension_) throw std::invalid_argument("dimension mismatch");
    return within_radius(x, radius_);
}

bool DifferenceSet::contains(const LatticePoint& v) const {
    return std::binary_search(points_.begin(), points_.end(), v);
}

DiscreteBall enumerate_ball(int n, const RadiusToken& radius) {
    if (n < 1) throw std::invalid_argument("dimension must be >= 1");
    DiscreteBall ball(n, radius);
    LatticePoint prefix;
    prefix.reserve(n);
    if (radius.exponent().is_infinite())
        fill_cube(n, radius.power_value(), prefix, ball.points_);
    else
        fill_ball(n, radius.exponent().value(), radius.power_value(), prefix, ball.points_);
    ball.extent_ = radius.coordinate_bound();
    return ball;
}

std::int64_t ball_cardinality(int n, const RadiusToken& radius) {
    if (n < 1) throw std::invalid_argument("dimension must be >= 1");
    if (radius.exponent().is_infinite()) return ipow(checked_add(checked_mul(2, radius.power_value()), 1), n);
    std::map<std::pair<int, std::int64_t>, std::int64_t> memo;
    return count_points(n, radius.exponent().value(), radius.power_value(), memo);
}

DifferenceSet difference_set(const DiscreteBall& ball) {
    const int n = ball.dimension();
    DifferenceSet out(n, ball.radius());
    const std::int64_t reach = 2 * ball.extent();
    const std::int64_t side = 2 * reach + 1;

    double cells = 1.0;
    for (int i = 0; i < n; ++i) cells *= static_cast<double>(side);

    if (cells <= static_cast<double>(1 << 26)) {
        // Dense grid indexed with the first coordinate most significant, so a
        // linear scan yields lexicographic order.
        std::vector<char> mark(static_cast<std::size_t>(cells), 0);
        auto index_of = [&](const LatticePoint& a, const LatticePoint& b) {
            std::size_t idx = 0;
            for (int i = 0; i < n; ++i) idx = idx * side + static_cast<std::size_t>(a[i] - b[i] + reach);
            return idx;
        };
        for (const auto& a : ball.points())
            for (const auto& b : ball.points()) mark[index_of(a, b)] = 1;
        LatticePoint v(n);
        for (std::size_t idx = 0; idx < mark.size(); ++idx) {
            if (!mark[idx]) continue;
            std::size_t rest = idx;
            for (int i = n - 1; i >= 0; --i) {
                v[i] = static_cast<std::int64_t>(rest % side) - reach;
                rest /= side;
            }
            out.points_.push_back(v);
        }
        return out;
    }

    for (const auto& a : ball.points())
        for (const auto& b : ball.points()) {
            LatticePoint v(n);
            for (int i = 0; i < n; ++i) v[i] = a[i] - b[i];
            out.points_.push_back(std::move(v));
        }
    std::sort(out.points_.begin(), out.points_.end());
    out.points_.erase(std::unique(out.points_.begin(), out.points_.end()), out.points_.end());
    return out;
}

bool balls_overlap(std::span<const std::int64_t> v, const DiscreteBall& ball) {
    if (static_cast<int>(v.size()) != ball.dimension()) throw std::invalid_argument("dimension mismatch");
    const std::int64_t reach = 2 * ball.extent();
    for (const std::int64_t c : v)
        if (c > reach || c < -reach) return false;
    LatticePoint w(v.size());
    for (const auto& x : ball.points()) {
        for (std::size_t i = 0; i < v.size(); ++i) w[i] = v[i] - x[i];
        if (within_radius(w, ball.radius())) return true;
    }
    return false;
}

double superball_volume(int n, double p) {
    if (n < 1) throw std::invalid_argument("dimension must be >= 1");
    if (!(p >= 1.0)) throw std::invalid_argument("exponent must be >= 1");
    const long double g = std::tgamma(1.0L + 1.0L / p);
    const long double num = std::pow(2.0L * g, static_cast<long double>(n));
    return static_cast<double>(num / std::tgamma(1.0L + static_cast<long double>(n) / p));
}

}  // namespace lptile
