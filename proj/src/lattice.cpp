#include "lptile/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lptile/arith.hpp"
#include "lptile/distance_sets.hpp"
#include "lptile/radicals.hpp"

namespace lptile {

namespace {

using Row = std::vector<std::int64_t>;

void axpy(Row& target, std::int64_t factor, const Row& source) {
    if (factor == 0) return;
    for (std::size_t i = 0; i < target.size(); ++i) target[i] = checked_add(target[i], -checked_mul(factor, source[i]));
}

std::int64_t abs64(std::int64_t x) { return x < 0 ? -x : x; }

IntMatrix hermite_form(IntMatrix rows, int n) {
    const std::size_t m = rows.size();
    for (const auto& row : rows)
        if (static_cast<int>(row.size()) != n) throw std::invalid_argument("generator row has wrong length");
    if (static_cast<int>(m) < n) throw std::invalid_argument("fewer generators than the dimension: rank-deficient");

    for (int j = 0; j < n; ++j) {
        const std::size_t r = static_cast<std::size_t>(j);
        while (true) {
            std::size_t pivot = m;
            for (std::size_t k = r; k < m; ++k)
                if (rows[k][j] != 0 && (pivot == m || abs64(rows[k][j]) < abs64(rows[pivot][j]))) pivot = k;
            if (pivot == m) throw std::invalid_argument("generators are rank-deficient");
            std::swap(rows[r], rows[pivot]);
            bool cleared = true;
            for (std::size_t k = r + 1; k < m; ++k) {
                if (rows[k][j] == 0) continue;
                axpy(rows[k], rows[k][j] / rows[r][j], rows[r]);  // truncation keeps the remainder below the pivot
                if (rows[k][j] != 0) cleared = false;
            }
            if (cleared) break;
        }
        if (rows[r][j] < 0)
            for (auto& x : rows[r]) x = -x;
        for (std::size_t i = 0; i < r; ++i) axpy(rows[i], div_floor(rows[i][j], rows[r][j]), rows[r]);
    }
    rows.resize(static_cast<std::size_t>(n));
    return rows;
}

void collect_box(const IntMatrix& basis, std::int64_t bound, std::size_t level, Row& acc, std::vector<LatticePoint>& out) {
    const std::size_t n = basis.size();
    if (level == n) {
        out.push_back(acc);
        return;
    }
    const std::int64_t diag = basis[level][level];
    const std::int64_t part = acc[level];
    // part + c * diag in [-bound, bound]
    const std::int64_t lo = -div_floor(bound + part, diag);
    const std::int64_t hi = div_floor(bound - part, diag);
    for (std::int64_t c = lo; c <= hi; ++c) {
        for (std::size_t i = level; i < n; ++i) acc[i] += c * basis[level][i];
        collect_box(basis, bound, level + 1, acc, out);
        for (std::size_t i = level; i < n; ++i) acc[i] -= c * basis[level][i];
    }
}

bool is_lex_positive(const LatticePoint& v) {
    for (const std::int64_t x : v)
        if (x != 0) return x > 0;
    return false;
}

}  // namespace

// ---------------------------------------------------------------- IntegerLattice

IntegerLattice IntegerLattice::from_generators(const IntMatrix& generators, int n) {
    if (n < 1) throw std::invalid_argument("dimension must be >= 1");
    return IntegerLattice(n, hermite_form(generators, n));
}

std::int64_t IntegerLattice::determinant() const {
    std::int64_t det = 1;
    for (int i = 0; i < n_; ++i) det = checked_mul(det, basis_[i][i]);
    return det;
}

bool IntegerLattice::contains(std::span<const std::int64_t> v) const {
    if (static_cast<int>(v.size()) != n_) throw std::invalid_argument("dimension mismatch");
    Row residual(v.begin(), v.end());
    for (int j = 0; j < n_; ++j) {
        if (residual[j] % basis_[j][j] != 0) return false;
        axpy(residual, residual[j] / basis_[j][j], basis_[j]);
    }
    return true;
}

IntegerLattice canonicalize(const IntMatrix& generators, int n) { return IntegerLattice::from_generators(generators, n); }

// ---------------------------------------------------------------- Smith form

std::int64_t QuotientStructure::order() const {
    std::int64_t m = 1;
    for (const auto d : invariant_factors) m = checked_mul(m, d);
    return m;
}

std::vector<std::int64_t> smith_invariant_factors(IntMatrix a) {
    const std::size_t n = a.size();
    for (const auto& row : a)
        if (row.size() != n) throw std::invalid_argument("smith form needs a square matrix");
    std::vector<std::int64_t> factors;
    for (std::size_t t = 0; t < n; ++t) {
        while (true) {
            std::size_t pr = n, pc = n;
            for (std::size_t i = t; i < n; ++i)
                for (std::size_t j = t; j < n; ++j)
                    if (a[i][j] != 0 && (pr == n || abs64(a[i][j]) < abs64(a[pr][pc]))) {
                        pr = i;
                        pc = j;
                    }
            if (pr == n) throw std::invalid_argument("matrix is singular");
            std::swap(a[t], a[pr]);
            for (auto& row : a) std::swap(row[t], row[pc]);

            const std::int64_t piv = a[t][t];
            bool clean = true;
            for (std::size_t i = t + 1; i < n; ++i) {
                axpy(a[i], a[i][t] / piv, a[t]);
                if (a[i][t] != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                const std::int64_t q = a[t][j] / piv;
                if (q != 0)
                    for (std::size_t i = 0; i < n; ++i) a[i][j] = checked_add(a[i][j], -checked_mul(q, a[i][t]));
                if (a[t][j] != 0) clean = false;
            }
            if (!clean) continue;

            // Enforce divisibility of the remaining block by the pivot.
            std::size_t bad = n;
            for (std::size_t i = t + 1; i < n && bad == n; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (a[i][j] % piv != 0) {
                        bad = i;
                        break;
                    }
            if (bad == n) break;
            for (std::size_t j = 0; j < n; ++j) a[t][j] = checked_add(a[t][j], a[bad][j]);
        }
        factors.push_back(abs64(a[t][t]));
    }
    return factors;
}

QuotientStructure quotient_structure(const IntegerLattice& lattice) {
    return {smith_invariant_factors(lattice.basis())};
}

// ---------------------------------------------------------------- enumeration

std::vector<LatticePoint> enumerate_in_box(const IntegerLattice& lattice, std::int64_t box_radius) {
    if (box_radius < 0) throw std::invalid_argument("box radius must be >= 0");
    std::vector<LatticePoint> out;
    Row acc(static_cast<std::size_t>(lattice.dimension()), 0);
    collect_box(lattice.basis(), box_radius, 0, acc, out);
    return out;
}

namespace {

// LLL with floating Gram-Schmidt and exact integer row operations. Only used
// to find short vectors, so the floating point affects speed, never results.
IntMatrix lll_reduce(IntMatrix b) {
    const std::size_t n = b.size();
    if (n < 2) return b;
    const std::size_t dim = b[0].size();
    std::vector<std::vector<long double>> star(n, std::vector<long double>(dim));
    std::vector<std::vector<long double>> mu(n, std::vector<long double>(n, 0));
    std::vector<long double> norm(n);
    auto gram_schmidt = [&] {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < dim; ++k) star[i][k] = static_cast<long double>(b[i][k]);
            for (std::size_t j = 0; j < i; ++j) {
                long double dot = 0;
                for (std::size_t k = 0; k < dim; ++k) dot += static_cast<long double>(b[i][k]) * star[j][k];
                mu[i][j] = norm[j] > 0 ? dot / norm[j] : 0;
                for (std::size_t k = 0; k < dim; ++k) star[i][k] -= mu[i][j] * star[j][k];
            }
            norm[i] = 0;
            for (std::size_t k = 0; k < dim; ++k) norm[i] += star[i][k] * star[i][k];
        }
    };
    gram_schmidt();
    std::size_t k = 1;
    for (int guard = 0; k < n && guard < 100000; ++guard) {
        for (std::size_t j = k; j-- > 0;) {
            const auto q = static_cast<std::int64_t>(std::llround(mu[k][j]));
            if (q == 0) continue;
            axpy(b[k], q, b[j]);
            gram_schmidt();
        }
        if (norm[k] >= (0.99L - mu[k][k - 1] * mu[k][k - 1]) * norm[k - 1]) {
            ++k;
        } else {
            std::swap(b[k], b[k - 1]);
            gram_schmidt();
            k = std::max<std::size_t>(k - 1, 1);
        }
    }
    return b;
}

}  // namespace

RadiusToken minimum_distance(const IntegerLattice& lattice, Exponent exponent) {
    const IntMatrix b = lll_reduce(lattice.basis());
    const std::size_t n = b.size();

    // Any lattice vector bounds the search box; try reduced rows and their pairwise sums.
    std::optional<RadiusToken> best;
    auto consider = [&](const Row& v) {
        const RadiusToken t = norm_token(v, exponent);
        if (t.power_value() > 0 && (!best || t < *best)) best = t;
    };
    for (std::size_t i = 0; i < n; ++i) {
        consider(b[i]);
        for (std::size_t j = i + 1; j < n; ++j) {
            Row plus(n), minus(n);
            for (std::size_t k = 0; k < n; ++k) {
                plus[k] = b[i][k] + b[j][k];
                minus[k] = b[i][k] - b[j][k];
            }
            consider(plus);
            consider(minus);
        }
    }

    for (const auto& v : enumerate_in_box(lattice, best->coordinate_bound())) consider(v);
    return *best;
}

RadiusToken packing_lower_bound(const RadiusToken& d) {
    const Exponent e = d.exponent();
    if (e.is_infinite()) return {e, d.power_value() >= 1 ? (d.power_value() - 1) / 2 : 0};
    const int p = e.value();
    // Largest k >= 0 with (2k + 1)^p <= d^p.
    const std::int64_t root = iroot_floor(d.power_value(), p);
    const std::int64_t k = root >= 1 ? (root - 1) / 2 : 0;
    return {e, ipow(k, p)};
}

bool below_packing_upper_bound(const RadiusToken& r, const RadiusToken& d, int n) {
    if (!(r.exponent() == d.exponent())) throw std::invalid_argument("tokens of different exponents");
    if (r.exponent().is_infinite()) return 2 * r.power_value() < d.power_value() + 1;
    const RadicalTerm terms[] = {{2, r.power_value()}, {-1, d.power_value()}, {-1, n}};
    return radical_sum_sign(terms, r.exponent().value()) < 0;
}

std::optional<LatticePoint> packing_violation(const IntegerLattice& lattice, const DiscreteBall& ball) {
    if (lattice.dimension() != ball.dimension()) throw std::invalid_argument("dimension mismatch");
    for (const auto& v : enumerate_in_box(lattice, 2 * ball.extent())) {
        if (!is_lex_positive(v)) continue;
        if (balls_overlap(v, ball)) return v;
    }
    return std::nullopt;
}

RadiusToken packing_radius(const IntegerLattice& lattice, Exponent exponent) {
    const int n = lattice.dimension();
    const RadiusToken d = minimum_distance(lattice, exponent);
    const RadiusToken lower = packing_lower_bound(d);

    // Largest token strictly below the upper bound, located exactly.
    std::int64_t top;
    if (exponent.is_infinite()) {
        top = d.power_value() / 2;
    } else {
        const int p = exponent.value();
        const double approx = (d.radius() + std::pow(static_cast<double>(n), 1.0 / p)) / 2.0;
        top = static_cast<std::int64_t>(std::floor(std::pow(approx, p)));
        while (top > 0 && !below_packing_upper_bound({exponent, top}, d, n)) --top;
        while (below_packing_upper_bound({exponent, top + 1}, d, n)) ++top;
    }

    std::vector<LatticePoint> candidates;
    for (auto& v : enumerate_in_box(lattice, 2 * RadiusToken(exponent, top).coordinate_bound()))
        if (is_lex_positive(v)) candidates.push_back(std::move(v));

    for (std::int64_t s = top; s >= 0; --s) {
        if (!is_achievable(exponent, n, s)) continue;
        const RadiusToken r(exponent, s);
        const DiscreteBall ball = enumerate_ball(n, r);
        const bool disjoint = std::none_of(candidates.begin(), candidates.end(),
                                           [&](const LatticePoint& v) { return balls_overlap(v, ball); });
        if (disjoint) {
            if (r < lower) throw std::logic_error("packing radius fell below floor((d - 1) / 2)");
            return r;
        }
    }
    throw std::logic_error("packing radius search found no disjoint radius");
}

std::string to_string(PerfectionFailure failure) {
    switch (failure) {
        case PerfectionFailure::none: return "none";
        case PerfectionFailure::determinant: return "determinant";
        case PerfectionFailure::packing: return "packing";
    }
    return "unknown";
}

PerfectCertificate verify_perfect(const IntegerLattice& lattice, const RadiusToken& radius) {
    const int n = lattice.dimension();
    if (!is_achievable(radius.exponent(), n, radius.power_value()))
        throw std::invalid_argument("radius " + radius.to_string() + " is not an achievable distance");

    const DiscreteBall ball = enumerate_ball(n, radius);
    PerfectCertificate cert;
    cert.determinant = lattice.determinant();
    cert.ball_size = static_cast<std::int64_t>(ball.cardinality());
    cert.witness_vector = packing_violation(lattice, ball);

    if (cert.determinant != cert.ball_size)
        cert.failed_condition = PerfectionFailure::determinant;
    else if (cert.witness_vector)
        cert.failed_condition = PerfectionFailure::packing;
    cert.perfect = cert.failed_condition == PerfectionFailure::none;
    return cert;
}

}  // namespace lptile
