#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lptile/geometry.hpp"

namespace lptile {

struct DensityEntry {
    int n;
    int p;
    double density;
    std::string expression;  // as written in the source, for reporting
};

/// Best known lattice packing densities of l_p balls, keyed by (n, p).
class DensityTable {
public:
    /// Closed forms for p = 2, n in {2..8, 24}.
    static DensityTable defaults();
    /// JSON array of {"n", "p", "density"} where density is a number or an
    /// arithmetic expression such as "pi^2/(15*sqrt(2))".
    static DensityTable from_json(std::string_view text);
    static DensityTable load(const std::string& path);

    std::optional<double> find(int n, int p) const;
    /// Throws std::out_of_range naming the missing (n, p).
    double at(int n, int p) const;
    const std::vector<DensityEntry>& entries() const { return entries_; }

    void set(int n, int p, double density, std::string expression);

private:
    std::vector<DensityEntry> entries_;
};

/// Evaluates numbers, pi, e, sqrt(), + - * / ^ and postfix ! with usual precedence.
double evaluate_expression(std::string_view text);

/// V_{n,p} (r - n^(1/p)/2)^n / mu_p(n, r): the density of the superball
/// packing that an r-perfect lattice code would induce, bounded below.
/// Zero when r <= n^(1/p)/2. Finite exponents only.
double induced_density_lower_bound(int n, const RadiusToken& radius);

/// (n^(1/p)/2) (1 + D^(1/n)) / (1 - D^(1/n)); throws unless 0 < D < 1.
double corollary_radius_bound(int n, int p, double density);

struct ThresholdRow {
    int n;
    double bound_power;      // bound^p
    std::int64_t threshold;  // floor(bound_power)
};

/// Threshold radii for p = 2 over the dimensions {2..8, 24}.
std::vector<ThresholdRow> threshold_table(const DensityTable& table);

/// Achievable tokens 1 <= s <= ceil(bound^p) (or <= limit) whose induced
/// density bound does not exceed the density, i.e. radii not excluded.
std::vector<std::int64_t> surviving_radii(int n, int p, double density,
                                          std::optional<std::int64_t> limit = std::nullopt);

struct HighDimBound {
    double density_bound;               // 2^(-n/p + log2(n/p + 1))
    bool nontrivial;                    // (n/p + 1) < 2^(n/p)
    std::optional<double> radius_bound; // density-free radius bound when nontrivial
};

HighDimBound high_dim_density_bound(int n, int p);

struct CubicPolyominoVerdict {
    bool predicate;                  // n r^p < (r + 1)^p
    std::optional<bool> sets_equal;  // B_p(n^(1/p) r) == B_inf(r), when enumerated
    RadiusToken lp_radius;           // token n r^p
};

/// Whether the l_p ball of radius n^(1/p) r is the cube of side 2r + 1, in
/// which case an l_inf r-perfect code is also l_p perfect at that radius.
/// Sets are compared by enumeration when the cube has at most enumerate_limit points.
CubicPolyominoVerdict cubic_polyomino_check(int n, std::int64_t r, int p, std::int64_t enumerate_limit = 1'000'000);

}  // namespace lptile
