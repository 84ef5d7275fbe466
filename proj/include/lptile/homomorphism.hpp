#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lptile/geometry.hpp"
#include "lptile/lattice.hpp"

namespace lptile {

/// Finite Abelian group Z_{d_1} x ... x Z_{d_k} with d_1 | d_2 | ... | d_k,
/// every d_i > 1. The trivial group has no factors.
struct AbelianGroupSpec {
    std::vector<std::int64_t> factors;

    std::int64_t order() const;
    bool is_cyclic() const { return factors.size() <= 1; }
    std::string to_string() const;
    friend bool operator==(const AbelianGroupSpec&, const AbelianGroupSpec&) = default;
};

/// All groups of order m up to isomorphism, largest top factor first
/// (the cyclic group leads).
std::vector<AbelianGroupSpec> abelian_groups_of_order(std::int64_t m);

/// phi(x) = sum x_i g_i, evaluated componentwise modulo the invariant factors.
struct GroupHomomorphism {
    AbelianGroupSpec group;
    std::vector<std::vector<std::int64_t>> images;  // one residue tuple per coordinate

    std::vector<std::int64_t> evaluate(std::span<const std::int64_t> x) const;
};

/// |G| = |ball| and phi is injective on the ball.
bool is_bijective_on(const GroupHomomorphism& phi, const DiscreteBall& ball);

/// Hermite basis of {x : phi(x) = 0}. Its determinant is |image(phi)|, which
/// equals |G| exactly when phi is onto.
IntegerLattice kernel_lattice(const GroupHomomorphism& phi);

enum class SearchStatus { found, exhausted, inconclusive, unachievable, duplicate };

std::string to_string(SearchStatus status);

struct SearchOptions {
    std::uint64_t budget = 2'000'000'000;  // candidate images examined per token
    int jobs = 1;
    bool symmetry_reduction = true;
};

struct GroupOutcome {
    AbelianGroupSpec group;
    SearchStatus status;
    std::uint64_t nodes;
};

struct TokenOutcome {
    std::int64_t s = 0;
    std::int64_t ball_size = 0;
    SearchStatus status = SearchStatus::exhausted;
    std::vector<GroupOutcome> groups;
    std::uint64_t nodes = 0;
    std::optional<GroupHomomorphism> homomorphism;
    std::optional<IntegerLattice> kernel;
    bool kernel_verified = false;  // kernel passed verify_perfect
    std::optional<std::int64_t> duplicate_of;
    double seconds = 0;
};

/// Looks for an Abelian group G of order |B(r)| and a homomorphism Z^n -> G
/// that is bijective on B(r); such a homomorphism exists iff B(r) tiles Z^n
/// by lattice translates, the lattice being its kernel.
///
/// Images are fixed coordinate by coordinate; after fixing g_0..g_j every
/// difference vector whose last nonzero entry sits at j must map to a nonzero
/// element, which sieves the candidates for g_j. With symmetry reduction the
/// images are taken up to signed coordinate permutations (symmetries of the
/// ball) and, for cyclic G, up to multiplication by units.
TokenOutcome search_homomorphisms(int n, const RadiusToken& radius, const SearchOptions& options = {});

struct ClassificationReport {
    int n;
    Exponent exponent;
    std::int64_t s_max;
    std::vector<TokenOutcome> entries;  // achievable tokens 1..s_max
    double seconds = 0;

    std::vector<std::int64_t> found_tokens() const;
};

/// search_homomorphisms over every achievable token 1 <= s <= s_max.
ClassificationReport classify(int n, Exponent exponent, std::int64_t s_max, const SearchOptions& options = {});

}  // namespace lptile
