#include "svg.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace lptile::cli {

namespace {

constexpr int kCell = 20;

struct Tile {
    LatticePoint center;
    std::vector<LatticePoint> cells;
};

std::vector<Json> parse_documents(const std::string& input) {
    try {
        return {Json::parse(input)};
    } catch (const Json::parse_error&) {
        // Fall through to JSON lines.
    }
    std::vector<Json> docs;
    std::istringstream lines(input);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        docs.push_back(Json::parse(line));
    }
    if (docs.empty()) throw std::invalid_argument("render input holds no JSON");
    return docs;
}

void require_plane(const Json& doc) {
    if (doc.at("n").get<int>() != 2) throw std::invalid_argument("render only draws 2-dimensional inputs");
}

Tile translate(const LatticePoint& center, const std::vector<LatticePoint>& footprint) {
    Tile t{center, {}};
    for (const auto& f : footprint) t.cells.push_back({center[0] + f[0], center[1] + f[1]});
    return t;
}

std::vector<Tile> tiles_from_stream(const std::vector<Json>& docs, std::optional<long long> s) {
    const Json* entry = nullptr;
    for (const auto& d : docs) {
        if (!d.contains("kernel_basis") || d.at("kernel_basis").is_null()) continue;
        if (s && d.at("s").get<long long>() != *s) continue;
        entry = &d;
        break;
    }
    if (!entry) throw std::invalid_argument("no classification entry with a kernel to draw");
    require_plane(*entry);
    const Exponent e = exponent_from_json(entry->at("p"));
    const auto ball = enumerate_ball(2, RadiusToken(e, entry->at("s").get<std::int64_t>()));
    const auto lattice = IntegerLattice::from_generators(entry->at("kernel_basis").get<IntMatrix>(), 2);
    const std::int64_t reach = ball.extent();
    const std::int64_t window = 3 * reach + 3;
    std::vector<Tile> tiles;
    for (const auto& c : enumerate_in_box(lattice, window + reach)) {
        Tile t = translate(c, ball.points());
        std::erase_if(t.cells, [&](const LatticePoint& x) {
            return std::max(std::abs(x[0]), std::abs(x[1])) > window;
        });
        if (!t.cells.empty()) tiles.push_back(std::move(t));
    }
    return tiles;
}

std::string fill_for(std::size_t i) {
    std::ostringstream s;
    s << "hsl(" << (i * 137) % 360 << ",55%,72%)";
    return s.str();
}

std::string draw(const std::vector<Tile>& tiles) {
    std::int64_t lo_x = 0, hi_x = 0, lo_y = 0, hi_y = 0;
    for (const auto& t : tiles)
        for (const auto& c : t.cells) {
            lo_x = std::min(lo_x, c[0]);
            hi_x = std::max(hi_x, c[0]);
            lo_y = std::min(lo_y, c[1]);
            hi_y = std::max(hi_y, c[1]);
        }
    const std::int64_t width = (hi_x - lo_x + 2) * kCell;
    const std::int64_t height = (hi_y - lo_y + 2) * kCell;
    // Cell (x, y) occupies [x - 1/2, x + 1/2] x [y - 1/2, y + 1/2]; y grows upward.
    auto px = [&](double x) { return (x - lo_x + 1.0) * kCell; };
    auto py = [&](double y) { return (hi_y - y + 1.0) * kCell; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (std::size_t i = 0; i < tiles.size(); ++i) {
        svg << "<g fill=\"" << fill_for(i) << "\" stroke=\"#333\" stroke-width=\"0.5\">\n";
        for (const auto& c : tiles[i].cells)
            svg << "<rect x=\"" << px(c[0] - 0.5) << "\" y=\"" << py(c[1] + 0.5) << "\" width=\"" << kCell
                << "\" height=\"" << kCell << "\"/>\n";
        svg << "</g>\n";
    }
    for (const auto& t : tiles) {
        const auto& c = t.center;
        if (c[0] < lo_x || c[0] > hi_x || c[1] < lo_y || c[1] > hi_y) continue;
        svg << "<circle cx=\"" << px(static_cast<double>(c[0])) << "\" cy=\"" << py(static_cast<double>(c[1]))
            << "\" r=\"" << kCell / 5 << "\" fill=\"black\"/>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace

std::string render_svg(const std::string& input, std::optional<long long> s) {
    const auto docs = parse_documents(input);
    const Json& doc = docs.front();
    std::vector<Tile> tiles;
    if (docs.size() == 1 && doc.contains("placements")) {
        require_plane(doc);
        const auto footprint = doc.at("footprint").get<std::vector<LatticePoint>>();
        for (const auto& c : doc.at("placements").get<std::vector<LatticePoint>>())
            tiles.push_back(translate(c, footprint));
        if (tiles.empty()) tiles.push_back(translate({0, 0}, footprint));  // unfinished search: origin tile only
    } else if (docs.size() == 1 && doc.contains("points")) {
        require_plane(doc);
        tiles.push_back({{0, 0}, doc.at("points").get<std::vector<LatticePoint>>()});
    } else {
        tiles = tiles_from_stream(docs, s);
    }
    return draw(tiles);
}

}  // namespace lptile::cli
