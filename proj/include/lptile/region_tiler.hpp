#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lptile/geometry.hpp"

namespace lptile {

enum class PointClass { endpoint, ordinary, outside };

std::string to_string(PointClass c);

/// Endpoints of a footprint with integer radius r are the 2n points +-r e_i.
/// Throws std::invalid_argument when the footprint radius is not an integer.
PointClass classify_point(const DiscreteBall& footprint, std::span<const std::int64_t> x);

/// r > 2 and (r - 1)^p + 2^p <= r^p: translates of the planar polyomino of
/// radius r cannot tile the plane. Exact for integral p.
bool planar_endpoint_obstruction(std::int64_t r, double p);

/// r > 2 and (n - 1)(r - 1)^p + (r - 2)^p <= r^p, for n >= 3: translates of
/// the n-dimensional polyomino of radius r cannot tile space. Exact for integral p.
bool endpoint_obstruction(int n, std::int64_t r, double p);

enum class TilingStatus { completed, impossible, inconclusive };

std::string to_string(TilingStatus status);

/// Which uncovered cell the search branches on next.
enum class CellOrder {
    lexicographic,  // lexicographically least cell of the region
    nearest_first,  // least (sum of squares, then lexicographic) cell
};

struct TilingOptions {
    std::int64_t extent = 0;             // region [-E, E]^n
    std::uint64_t budget = 100'000'000;  // placement attempts
    CellOrder order = CellOrder::lexicographic;
};

struct TilingResult {
    TilingStatus status;
    std::uint64_t nodes;               // placement attempts examined
    std::vector<LatticePoint> centers; // origin first; set when completed
};

/// Backtracking search for a packing of translates (centres anywhere in Z^n)
/// that covers [-E, E]^n and contains the tile at the origin. "impossible"
/// means no tiling of space can contain the origin tile, hence none exists.
TilingResult tile_region(const DiscreteBall& footprint, const TilingOptions& options);

/// Every cell of [-E, E]^n covered exactly once and no two tiles overlap.
bool covers_region_exactly(const DiscreteBall& footprint, const std::vector<LatticePoint>& centers, std::int64_t extent);

struct OppositeEndpointCase {
    LatticePoint endpoint;      // x = +-r e_i of the origin tile
    LatticePoint neighbour;     // x +- e_j
    LatticePoint other_center;  // tile having the neighbour as an endpoint, disjoint from the origin tile
    bool opposite;              // neighbour = other_center -+ r e_i
};

/// All configurations where a neighbour of an origin endpoint is an endpoint
/// of a disjoint translate, with whether that endpoint points back along e_i.
std::vector<OppositeEndpointCase> opposite_endpoint_cases(const DiscreteBall& footprint);

}  // namespace lptile
