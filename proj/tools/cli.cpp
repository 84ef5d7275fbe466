#include "cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"

#include "lptile/arith.hpp"
#include "lptile/density.hpp"
#include "lptile/distance_sets.hpp"
#include "lptile/homomorphism.hpp"
#include "lptile/json_io.hpp"
#include "lptile/lattice.hpp"
#include "lptile/region_tiler.hpp"
#include "lptile/zq_codes.hpp"
#include "svg.hpp"

#ifndef LPTILE_DEFAULT_DENSITY_FILE
#define LPTILE_DEFAULT_DENSITY_FILE ""
#endif

namespace lptile::cli {

namespace {

constexpr const char* kVersion = "1.0.0";
constexpr const char* kDensityEnv = "LPTILE_DENSITY_FILE";

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

std::int64_t parse_integer(const std::string& token, const std::string& what) {
    std::size_t used = 0;
    long long value = 0;
    try {
        value = std::stoll(token, &used);
    } catch (const std::exception&) {
        throw UsageError("malformed " + what + ": '" + token + "' is not an integer");
    }
    if (used != token.size()) throw UsageError("malformed " + what + ": '" + token + "' is not an integer");
    return value;
}

std::vector<std::int64_t> parse_row(const std::string& text, const std::string& what) {
    std::vector<std::int64_t> row;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto first = item.find_first_not_of(" \t");
        const auto last = item.find_last_not_of(" \t");
        if (first == std::string::npos) throw UsageError("malformed " + what + ": empty entry in '" + text + "'");
        row.push_back(parse_integer(item.substr(first, last - first + 1), what));
    }
    if (row.empty() || text.back() == ',') throw UsageError("malformed " + what + ": '" + text + "'");
    return row;
}

Exponent parse_exponent(const std::string& text) {
    try {
        return Exponent::parse(text);
    } catch (const std::invalid_argument&) {
        throw UsageError("malformed exponent '" + text + "': expected a positive integer or 'inf'");
    }
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(path);
    if (!file) throw std::runtime_error("cannot write " + path);
    file << text;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

DensityTable load_densities(const std::string& flag) {
    std::string path = flag;
    if (path.empty()) {
        if (const char* env = std::getenv(kDensityEnv)) path = env;
    }
    if (path.empty()) path = LPTILE_DEFAULT_DENSITY_FILE;
    if (path.empty()) return DensityTable::defaults();
    std::ifstream probe(path);
    if (!probe) {
        if (!flag.empty()) throw UsageError("cannot read density file " + path);
        return DensityTable::defaults();
    }
    return DensityTable::load(path);
}

// Every option of the subcommand with its effective value, defaults included.
Json parameters_of(const CLI::App& sub) {
    Json params = Json::object();
    for (const CLI::Option* opt : sub.get_options()) {
        const std::string name = opt->get_lnames().empty() ? opt->get_name() : opt->get_lnames().front();
        if (name == "help" || name == "manifest") continue;
        const auto& given = opt->results();
        if (opt->get_expected_max() == 0)
            params[name] = opt->count() > 0;
        else if (given.size() > 1)
            params[name] = given;
        else if (given.size() == 1)
            params[name] = given.front();
        else
            params[name] = opt->get_default_str().empty() ? Json(nullptr) : Json(opt->get_default_str());
    }
    return params;
}

void write_manifest(const std::string& path, const std::string& subcommand, const Json& params, double seconds,
                    const std::string& output) {
    if (path.empty()) return;
    Json manifest{{"subcommand", subcommand},
                  {"parameters", params},
                  {"version", kVersion},
                  {"wall_seconds", seconds},
                  {"outputs", output.empty() ? Json::array() : Json::array({output})}};
    std::ofstream file(path);
    if (!file) throw std::runtime_error("cannot write " + path);
    file << manifest.dump(2) << '\n';
}

}  // namespace

std::vector<std::vector<long long>> parse_matrix(const std::string& text) {
    std::vector<std::vector<long long>> rows;
    std::stringstream ss(text);
    std::string row;
    while (std::getline(ss, row, ';')) {
        if (row.find_first_not_of(" \t") == std::string::npos) throw UsageError("malformed basis string '" + text + "'");
        const auto parsed = parse_row(row, "basis string");
        rows.emplace_back(parsed.begin(), parsed.end());
    }
    if (rows.empty() || text.back() == ';') throw UsageError("malformed basis string '" + text + "'");
    for (const auto& r : rows)
        if (r.size() != rows.front().size()) throw UsageError("malformed basis string '" + text + "': ragged rows");
    return rows;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact tools for perfect codes and lattice tilings in the l_p metric", "lptile"};
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();
    app.set_version_flag("--version", kVersion);

    std::string out_path, manifest_path;

    // ball
    auto* ball_cmd = app.add_subcommand("ball", "Enumerate the integer points of an l_p ball");
    int ball_n = 0;
    std::string ball_p;
    std::int64_t ball_s = 0;
    bool ball_diff = false;
    ball_cmd->add_option("--n", ball_n, "Dimension")->required()->check(CLI::PositiveNumber);
    ball_cmd->add_option("--p", ball_p, "Exponent (integer or inf)")->required();
    ball_cmd->add_option("--s", ball_s, "Radius token r^p (r for inf)")->required()->check(CLI::NonNegativeNumber);
    ball_cmd->add_flag("--diff", ball_diff, "Emit the difference set B - B instead");
    ball_cmd->add_option("--out", out_path, "Write JSON here instead of stdout");

    // distances
    auto* dist_cmd = app.add_subcommand("distances", "List achievable distance tokens");
    int dist_n = 0;
    std::string dist_p;
    std::int64_t dist_limit = 0, dist_q = 0;
    dist_cmd->add_option("--n", dist_n, "Dimension")->required()->check(CLI::PositiveNumber);
    dist_cmd->add_option("--p", dist_p, "Exponent")->required();
    dist_cmd->add_option("--limit", dist_limit, "Largest token")->required()->check(CLI::NonNegativeNumber);
    dist_cmd->add_option("--q", dist_q, "Modulus (distances in Z_q^n)");
    dist_cmd->add_option("--out", out_path, "Write JSON here instead of stdout");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "Certify whether a lattice is a perfect code");
    std::string verify_basis, verify_p;
    std::int64_t verify_s = 0;
    verify_cmd->add_option("--basis", verify_basis, "Rows 'a,b;c,d'")->required();
    verify_cmd->add_option("--p", verify_p, "Exponent")->required();
    verify_cmd->add_option("--s", verify_s, "Radius token")->required()->check(CLI::NonNegativeNumber);
    verify_cmd->add_option("--out", out_path, "Write JSON here instead of stdout");

    // code
    auto* code_cmd = app.add_subcommand("code", "Linear code over Z_q: distance, packing radius, lifting");
    std::int64_t code_q = 0, code_s = -1;
    int code_n = 0;
    std::vector<std::string> code_gens;
    std::string code_p;
    bool code_check = false;
    code_cmd->add_option("--q", code_q, "Modulus")->required()->check(CLI::Range(2LL, 1LL << 40));
    code_cmd->add_option("--n", code_n, "Length")->required()->check(CLI::PositiveNumber);
    code_cmd->add_option("--gen", code_gens, "Generator 'a,b,...' (repeatable)");
    code_cmd->add_option("--p", code_p, "Exponent")->required();
    code_cmd->add_flag("--check-perfect", code_check, "Test perfection at --s");
    code_cmd->add_option("--s", code_s, "Radius token for --check-perfect");
    code_cmd->add_option("--out", out_path, "Write JSON here instead of stdout");

    // search
    auto* search_cmd = app.add_subcommand("search", "Classify lattice tilings by l_p balls");
    int search_n = 0, search_jobs = 1;
    std::string search_p;
    std::int64_t search_smax = 0;
    std::uint64_t search_budget = SearchOptions{}.budget;
    search_cmd->add_option("--n", search_n, "Dimension")->required()->check(CLI::PositiveNumber);
    search_cmd->add_option("--p", search_p, "Exponent")->required();
    search_cmd->add_option("--s-max", search_smax, "Largest token swept")->required()->check(CLI::NonNegativeNumber);
    search_cmd->add_option("--budget", search_budget, "Candidate images per token before giving up");
    search_cmd->add_option("--jobs", search_jobs, "Worker threads")->check(CLI::PositiveNumber);
    search_cmd->add_option("--out", out_path, "Write JSON lines here instead of stdout");

    // bounds
    auto* bounds_cmd = app.add_subcommand("bounds", "Density-based radius bounds");
    int bounds_p = 2, bounds_n = 0;
    std::string bounds_file, bounds_format = "json";
    bool bounds_table = false, bounds_survivors = false;
    bounds_cmd->add_option("--p", bounds_p, "Exponent")->required()->check(CLI::PositiveNumber);
    bounds_cmd->add_option("--density-file", bounds_file, "JSON density table");
    bounds_cmd->add_flag("--table1", bounds_table, "Threshold radius per dimension (p = 2)");
    bounds_cmd->add_flag("--survivors", bounds_survivors, "Tokens not excluded by density (needs --n)");
    bounds_cmd->add_option("--n", bounds_n, "Dimension for --survivors");
    bounds_cmd->add_option("--format", bounds_format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    bounds_cmd->add_option("--out", out_path, "Write output here instead of stdout");

    // tile-region
    auto* tile_cmd = app.add_subcommand("tile-region", "Backtracking tiler for a bounded region");
    int tile_n = 0;
    std::string tile_p, tile_order = "lex";
    std::int64_t tile_r = 0, tile_extent = 0;
    std::uint64_t tile_budget = TilingOptions{}.budget;
    tile_cmd->add_option("--n", tile_n, "Dimension")->required()->check(CLI::PositiveNumber);
    tile_cmd->add_option("--p", tile_p, "Exponent")->required();
    tile_cmd->add_option("--r", tile_r, "Integer radius")->required()->check(CLI::NonNegativeNumber);
    tile_cmd->add_option("--extent", tile_extent, "Region [-E, E]^n")->required()->check(CLI::NonNegativeNumber);
    tile_cmd->add_option("--budget", tile_budget, "Placement attempts before giving up");
    tile_cmd->add_option("--order", tile_order, "Cell order: lex (default) or nearest")->check(CLI::IsMember({"nearest", "lex"}));
    tile_cmd->add_option("--out", out_path, "Write JSON here instead of stdout");

    // render
    auto* render_cmd = app.add_subcommand("render", "Draw a 2-D ball, tiling or classification entry as SVG");
    std::string render_input, render_svg_path;
    std::int64_t render_s = -1;
    render_cmd->add_option("--input", render_input, "JSON from ball, tile-region or search")->required();
    render_cmd->add_option("--svg", render_svg_path, "SVG destination (stdout if omitted)");
    render_cmd->add_option("--s", render_s, "Classification token to draw");

    for (auto* sub : app.get_subcommands({}))
        sub->add_option("--manifest", manifest_path, "Write a run manifest (parameters, version, timing) here");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    const auto stamp = [&](Json doc) {
        if (!manifest_path.empty()) doc["manifest"] = manifest_path;
        return doc;
    };
    const auto start = std::chrono::steady_clock::now();
    const auto finish = [&](int code, const std::string& output) {
        const CLI::App* sub = app.get_subcommands().front();
        write_manifest(manifest_path, sub->get_name(), parameters_of(*sub),
                       std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(), output);
        return code;
    };

    try {
        if (*ball_cmd) {
            const RadiusToken r(parse_exponent(ball_p), ball_s);
            const auto ball = enumerate_ball(ball_n, r);
            const Json doc = ball_diff ? to_json(difference_set(ball)) : to_json(ball);
            emit(dump_line(stamp(doc)) + "\n", out_path, out);
            return finish(kExitOk, out_path);
        }
        if (*dist_cmd) {
            const std::optional<std::int64_t> q = dist_q > 0 ? std::optional(dist_q) : std::nullopt;
            const auto table = enumerate_achievable(parse_exponent(dist_p), dist_n, dist_limit, q);
            emit(dump_line(stamp(to_json(table))) + "\n", out_path, out);
            return finish(kExitOk, out_path);
        }
        if (*verify_cmd) {
            const auto rows = parse_matrix(verify_basis);
            IntMatrix basis;
            for (const auto& r : rows) basis.emplace_back(r.begin(), r.end());
            const auto lattice = IntegerLattice::from_generators(basis, static_cast<int>(rows.front().size()));
            const auto cert = verify_perfect(lattice, RadiusToken(parse_exponent(verify_p), verify_s));
            Json doc = to_json(cert);
            doc["lattice"] = to_json(lattice);
            doc["p"] = to_json(parse_exponent(verify_p));
            doc["s"] = verify_s;
            emit(dump_line(stamp(doc)) + "\n", out_path, out);
            return finish(kExitOk, out_path);
        }
        if (*code_cmd) {
            IntMatrix gens;
            for (const auto& g : code_gens) {
                auto row = parse_row(g, "generator");
                if (static_cast<int>(row.size()) != code_n)
                    throw UsageError("generator '" + g + "' does not have length " + std::to_string(code_n));
                gens.push_back(std::move(row));
            }
            const Exponent e = parse_exponent(code_p);
            const LinearCodeZq code(code_q, code_n, gens);
            const auto lattice = construction_a(code);
            Json doc = to_json(code);
            doc["p"] = to_json(e);
            doc["cardinality"] = code_cardinality(code);
            doc["lattice"] = to_json(lattice);
            if (code_cardinality(code) > 1) {
                doc["minimum_distance"] = code_minimum_distance(code, e).power_value();
                const auto transfer = transfer_packing_radius(code, e);
                doc["packing_radius"] = transfer.code_radius.power_value();
                doc["transfer"] = Json{{"condition_met", transfer.condition_met},
                                       {"verdict", transfer.verdict},
                                       {"lattice_packing_radius", transfer.lattice_radius
                                                                      ? Json(transfer.lattice_radius->power_value())
                                                                      : Json(nullptr)}};
            }
            if (code_check) {
                if (code_s < 0) throw UsageError("--check-perfect needs --s");
                const RadiusToken r(e, code_s);
                const bool cover = code_is_perfect(code, r);
                const bool counting = code_is_perfect_by_counting(code, r);
                if (cover != counting) throw std::logic_error("perfection routes disagree");
                doc["check"] = Json{{"s", code_s}, {"perfect", cover}};
            }
            emit(dump_line(stamp(doc)) + "\n", out_path, out);
            return finish(kExitOk, out_path);
        }
        if (*search_cmd) {
            SearchOptions options;
            options.budget = search_budget;
            options.jobs = search_jobs;
            const Exponent e = parse_exponent(search_p);
            const auto report = classify(search_n, e, search_smax, options);
            std::string text;
            bool inconclusive = false;
            for (const auto& entry : report.entries) {
                text += dump_line(stamp(to_json(entry, search_n, e))) + "\n";
                if (entry.status == SearchStatus::inconclusive) inconclusive = true;
            }
            emit(text, out_path, out);
            return finish(inconclusive ? kExitInconclusive : kExitOk, out_path);
        }
        if (*bounds_cmd) {
            const auto table = load_densities(bounds_file);
            std::ostringstream text;
            if (bounds_survivors) {
                if (bounds_n < 1) throw UsageError("--survivors needs --n");
                const double delta = table.at(bounds_n, bounds_p);
                const auto tokens = surviving_radii(bounds_n, bounds_p, delta);
                if (bounds_format == "csv") {
                    text << "s\n";
                    for (const auto s : tokens) text << s << '\n';
                } else {
                    text << dump_line(stamp(Json{{"n", bounds_n}, {"p", bounds_p}, {"density", delta},
                                           {"radius_bound", corollary_radius_bound(bounds_n, bounds_p, delta)},
                                           {"survivors", tokens}}))
                         << '\n';
                }
            } else {
                if (bounds_p != 2 && bounds_table) throw UsageError("--table1 is defined for p = 2");
                const auto rows = threshold_table(table);
                if (bounds_format == "csv") {
                    text << "n,bound_squared,threshold\n";
                    for (const auto& r : rows) text << r.n << ',' << r.bound_power << ',' << r.threshold << '\n';
                } else {
                    Json arr = Json::array();
                    for (const auto& r : rows)
                        arr.push_back(Json{{"n", r.n}, {"bound_squared", r.bound_power}, {"threshold", r.threshold}});
                    text << dump_line(manifest_path.empty() ? arr : Json{{"manifest", manifest_path}, {"rows", arr}})
                         << '\n';
                }
            }
            emit(text.str(), out_path, out);
            return finish(kExitOk, out_path);
        }
        if (*tile_cmd) {
            const RadiusToken r = [&] {
                const Exponent e = parse_exponent(tile_p);
                return RadiusToken(e, e.is_infinite() ? tile_r : ipow(tile_r, e.value()));
            }();
            const auto footprint = enumerate_ball(tile_n, r);
            TilingOptions options;
            options.extent = tile_extent;
            options.budget = tile_budget;
            options.order = tile_order == "lex" ? CellOrder::lexicographic : CellOrder::nearest_first;
            const auto result = tile_region(footprint, options);
            emit(dump_line(stamp(to_json(result, footprint, tile_extent))) + "\n", out_path, out);
            return finish(result.status == TilingStatus::inconclusive ? kExitInconclusive : kExitOk, out_path);
        }
        if (*render_cmd) {
            const std::optional<long long> s = render_s >= 0 ? std::optional<long long>(render_s) : std::nullopt;
            emit(render_svg(read_file(render_input), s), render_svg_path, out);
            return finish(kExitOk, render_svg_path);
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace lptile::cli
