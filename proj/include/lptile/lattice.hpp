#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lptile/geometry.hpp"

namespace lptile {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

/// Full-rank sublattice of Z^n, stored in row-style Hermite normal form:
/// basis rows are the generators, row i is zero before column i, diagonal
/// entries are positive and every entry above a diagonal entry lies in
/// [0, diagonal). Two lattices are equal iff their bases are equal.
class IntegerLattice {
public:
    /// Canonical form of the lattice spanned by the rows. Throws
    /// std::invalid_argument when the rows do not span a rank-n subgroup.
    static IntegerLattice from_generators(const IntMatrix& generators, int n);

    int dimension() const { return n_; }
    const IntMatrix& basis() const { return basis_; }
    /// |Z^n / L|, the product of the diagonal.
    std::int64_t determinant() const;
    bool contains(std::span<const std::int64_t> v) const;

    friend bool operator==(const IntegerLattice&, const IntegerLattice&) = default;

private:
    IntegerLattice(int n, IntMatrix basis) : n_(n), basis_(std::move(basis)) {}
    int n_ = 0;
    IntMatrix basis_;
};

IntegerLattice canonicalize(const IntMatrix& generators, int n);

/// Invariant factors d_1 | d_2 | ... | d_n of Z^n / L (ones included).
struct QuotientStructure {
    std::vector<std::int64_t> invariant_factors;
    std::int64_t order() const;
};

QuotientStructure quotient_structure(const IntegerLattice& lattice);

/// Smith invariant factors of an arbitrary square integer matrix of full rank.
std::vector<std::int64_t> smith_invariant_factors(IntMatrix matrix);

/// L intersected with [-box_radius, box_radius]^n, lexicographically ordered.
std::vector<LatticePoint> enumerate_in_box(const IntegerLattice& lattice, std::int64_t box_radius);

/// Norm token of a shortest nonzero lattice vector.
RadiusToken minimum_distance(const IntegerLattice& lattice, Exponent exponent);

/// floor((d - 1) / 2) as a token of the same exponent.
RadiusToken packing_lower_bound(const RadiusToken& minimum_distance);

/// Decides r < d/2 + n^(1/p)/2 exactly (n^(1/p) read as 1 for infinity).
bool below_packing_upper_bound(const RadiusToken& r, const RadiusToken& minimum_distance, int n);

/// Largest achievable radius whose balls around lattice points are pairwise
/// disjoint. Searches downward from the largest achievable token strictly
/// below d/2 + n^(1/p)/2.
RadiusToken packing_radius(const IntegerLattice& lattice, Exponent exponent);

/// Nonzero lattice vector v with B(0, r) and B(v, r) overlapping, if any.
std::optional<LatticePoint> packing_violation(const IntegerLattice& lattice, const DiscreteBall& ball);

enum class PerfectionFailure { none, determinant, packing };

struct PerfectCertificate {
    bool perfect = false;
    PerfectionFailure failed_condition = PerfectionFailure::none;
    std::optional<LatticePoint> witness_vector;  // set when packing fails
    std::int64_t determinant = 0;
    std::int64_t ball_size = 0;
};

std::string to_string(PerfectionFailure failure);

/// Lattice tiling test: det L = |B(r)| and no nonzero lattice vector in B - B.
/// Throws std::invalid_argument if the radius is not an achievable distance.
PerfectCertificate verify_perfect(const IntegerLattice& lattice, const RadiusToken& radius);

}  // namespace lptile
