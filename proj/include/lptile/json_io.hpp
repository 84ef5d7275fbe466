#pragma once

#include "json.hpp"

#include "lptile/density.hpp"
#include "lptile/distance_sets.hpp"
#include "lptile/geometry.hpp"
#include "lptile/homomorphism.hpp"
#include "lptile/lattice.hpp"
#include "lptile/region_tiler.hpp"
#include "lptile/zq_codes.hpp"

namespace lptile {

using Json = nlohmann::json;

/// Integer for finite p, "inf" otherwise.
Json to_json(Exponent exponent);
Exponent exponent_from_json(const Json& value);

Json to_json(const DiscreteBall& ball);
Json to_json(const DifferenceSet& diff);
Json to_json(const AchievabilityTable& table);

Json to_json(const IntegerLattice& lattice);
IntegerLattice lattice_from_json(const Json& value);

Json to_json(const PerfectCertificate& cert);

Json to_json(const LinearCodeZq& code);
LinearCodeZq code_from_json(const Json& value);

Json to_json(const AbelianGroupSpec& group);
Json to_json(const GroupHomomorphism& phi);

/// One line of a classification stream. Timing is left out so reruns
/// compare byte for byte.
Json to_json(const TokenOutcome& outcome, int n, Exponent exponent);

Json to_json(const TilingResult& result, const DiscreteBall& footprint, std::int64_t extent);

/// Compact single-line dump with sorted keys.
std::string dump_line(const Json& value);

}  // namespace lptile
