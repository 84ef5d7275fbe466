#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lptile {

/// A point of Z^n (or a residue vector of Z_q^n when stated).
using LatticePoint = std::vector<std::int64_t>;

/// Metric exponent: an integer p >= 1 or infinity.
class Exponent {
public:
    static Exponent finite(int p);
    static Exponent infinity() { return Exponent(0); }
    /// Accepts "inf", "infinity" or a positive integer.
    static Exponent parse(std::string_view text);

    bool is_infinite() const { return p_ == 0; }
    /// The finite exponent; throws std::logic_error for infinity.
    int value() const;
    std::string to_string() const;

    friend bool operator==(const Exponent&, const Exponent&) = default;

private:
    explicit Exponent(int p) : p_(p) {}
    int p_;
};

/// Exact radius: r^p as an integer for finite p, r itself for infinity.
/// Membership tests only ever compare integers against power_value().
class RadiusToken {
public:
    RadiusToken(Exponent exponent, std::int64_t power_value);

    Exponent exponent() const { return exponent_; }
    std::int64_t power_value() const { return power_; }

    /// Floating-point radius, for reporting only.
    double radius() const;
    /// r when it is an integer (power_value is a perfect p-th power).
    std::optional<std::int64_t> integer_radius() const;
    /// Largest |x_i| of any integer point within the radius.
    std::int64_t coordinate_bound() const;

    std::string to_string() const;

    friend bool operator==(const RadiusToken&, const RadiusToken&) = default;
    /// Tokens are only comparable for equal exponents (std::invalid_argument otherwise).
    friend std::strong_ordering operator<=>(const RadiusToken& a, const RadiusToken& b);

private:
    Exponent exponent_;
    std::int64_t power_;
};

/// Norm token of v: sum |v_i|^p or max |v_i|.
RadiusToken norm_token(std::span<const std::int64_t> v, Exponent exponent);

/// True iff the norm of v does not exceed the radius.
bool within_radius(std::span<const std::int64_t> v, const RadiusToken& radius);

/// The integer points of a closed l_p ball centred at the origin, in
/// lexicographic order. Doubles as the footprint of the matching polyomino.
class DiscreteBall {
public:
    int dimension() const { return dimension_; }
    const RadiusToken& radius() const { return radius_; }
    const std::vector<LatticePoint>& points() const { return points_; }
    std::size_t cardinality() const { return points_.size(); }
    /// max |x_i| over the points.
    std::int64_t extent() const { return extent_; }
    bool contains(std::span<const std::int64_t> x) const;

private:
    friend DiscreteBall enumerate_ball(int n, const RadiusToken& radius);
    DiscreteBall(int n, RadiusToken radius) : dimension_(n), radius_(radius) {}

    int dimension_;
    RadiusToken radius_;
    std::vector<LatticePoint> points_;
    std::int64_t extent_ = 0;
};

/// {x - y : x, y in B}, lexicographically sorted.
class DifferenceSet {
public:
    int dimension() const { return dimension_; }
    const RadiusToken& source_radius() const { return radius_; }
    const std::vector<LatticePoint>& points() const { return points_; }
    bool contains(const LatticePoint& v) const;

private:
    friend DifferenceSet difference_set(const DiscreteBall& ball);
    DifferenceSet(int n, RadiusToken radius) : dimension_(n), radius_(radius) {}

    int dimension_;
    RadiusToken radius_;
    std::vector<LatticePoint> points_;
};

RadiusToken lp_distance(std::span<const std::int64_t> x, std::span<const std::int64_t> y, int p);
std::int64_t linf_distance(std::span<const std::int64_t> x, std::span<const std::int64_t> y);

/// min((a-b) mod q, (b-a) mod q) for residues a, b in [0, q).
std::int64_t lee_distance(std::int64_t a, std::int64_t b, std::int64_t q);

/// p-Lee distance on Z_q^n: sum of Lee distances to the p, or their maximum.
RadiusToken plee_distance(std::span<const std::int64_t> x, std::span<const std::int64_t> y, std::int64_t q,
                          Exponent exponent);

/// Brute-force minimum of d_p(x + q t, y + q w) over shift vectors with entries
/// in [-shift_bound, shift_bound]. Independent reference for plee_distance.
RadiusToken induced_distance_oracle(std::span<const std::int64_t> x, std::span<const std::int64_t> y,
                                    std::int64_t q, int p, int shift_bound);

DiscreteBall enumerate_ball(int n, const RadiusToken& radius);

/// Number of integer points in the ball, counted without enumerating them.
std::int64_t ball_cardinality(int n, const RadiusToken& radius);

DifferenceSet difference_set(const DiscreteBall& ball);

/// True iff B(0, r) and B(v, r) share an integer point, i.e. v lies in B - B.
bool balls_overlap(std::span<const std::int64_t> v, const DiscreteBall& ball);

/// Volume of the unit l_p ball in R^n: 2^n Gamma(1 + 1/p)^n / Gamma(1 + n/p).
double superball_volume(int n, double p);

}  // namespace lptile
