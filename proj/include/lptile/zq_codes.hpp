#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lptile/geometry.hpp"
#include "lptile/lattice.hpp"

namespace lptile {

/// Z_q-submodule of Z_q^n given by generators. Entries are stored reduced
/// into [0, q).
class LinearCodeZq {
public:
    LinearCodeZq(std::int64_t q, int n, IntMatrix generators);

    std::int64_t modulus() const { return q_; }
    int dimension() const { return n_; }
    const IntMatrix& generators() const { return generators_; }

private:
    std::int64_t q_;
    int n_;
    IntMatrix generators_;
};

/// Codes whose closure is materialised explicitly are capped at this size.
inline constexpr std::int64_t kMaxMaterializedCode = 1'000'000;

/// Lattice of all integer vectors reducing into the code (contains qZ^n).
IntegerLattice construction_a(const LinearCodeZq& code);

/// q^n / det of the lifted lattice.
std::int64_t code_cardinality(const LinearCodeZq& code);

/// All codewords, lexicographically sorted. Throws std::length_error above
/// kMaxMaterializedCode.
std::vector<LatticePoint> codewords(const LinearCodeZq& code);

/// Residue vectors within p-Lee distance r of the origin, lexicographic.
std::vector<LatticePoint> zq_ball(std::int64_t q, int n, const RadiusToken& radius);

/// Minimum p-Lee norm of a nonzero codeword. Throws for the zero code.
RadiusToken code_minimum_distance(const LinearCodeZq& code, Exponent exponent);

/// Largest achievable token (in Z_q^n) for which the balls around distinct
/// codewords are pairwise disjoint. Throws for the zero code.
RadiusToken code_packing_radius(const LinearCodeZq& code, Exponent exponent);

/// Every residue vector lies in exactly one ball of the given radius, checked
/// by counting coverage over all of Z_q^n.
bool code_is_perfect(const LinearCodeZq& code, const RadiusToken& radius);

/// Same answer as code_is_perfect, reached through |C| * |ball| = q^n plus
/// pairwise disjointness of the balls.
bool code_is_perfect_by_counting(const LinearCodeZq& code, const RadiusToken& radius);

struct TransferCertificate {
    bool condition_met = false;  // 2 r < q
    RadiusToken code_radius;
    std::optional<RadiusToken> lattice_radius;
    bool code_perfect = false;
    std::optional<PerfectCertificate> lattice_certificate;  // when the code is perfect
    std::string verdict;
};

/// When 2 r_p(C) < q, checks that the lifted lattice has the same packing
/// radius and, for perfect codes, that the lattice tiles.
TransferCertificate transfer_packing_radius(const LinearCodeZq& code, Exponent exponent);

struct LinftyVerdict {
    bool nontrivial_exists = false;
    std::optional<std::int64_t> odd_factor;  // b
    std::optional<std::int64_t> cofactor;    // m = q / b
    std::optional<std::int64_t> radius;      // (b - 1) / 2
    std::optional<LinearCodeZq> construction;
    bool counting_identity_holds = false;    // |C| (2r + 1)^n = q^n
};

/// Non-trivial l_inf perfect codes in Z_q^n exist iff q = b m with b > 1 odd
/// and m > 1. Builds the code generated by b e_i using the smallest such b.
LinftyVerdict linfty_existence(std::int64_t q, int n);

}  // namespace lptile
