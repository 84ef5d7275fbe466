#pragma once

#include <optional>
#include <string>

#include "lptile/json_io.hpp"

namespace lptile::cli {

/// SVG for a 2-D ball ("points"), a region tiling ("placements") or a
/// classification stream (JSON lines carrying "kernel_basis"). Every cell is
/// drawn as the unit square x + [-1/2, 1/2]^2; tile centres are dotted.
/// For streams, `s` picks the entry, otherwise the first found one is drawn.
std::string render_svg(const std::string& input, std::optional<long long> s = std::nullopt);

}  // namespace lptile::cli
