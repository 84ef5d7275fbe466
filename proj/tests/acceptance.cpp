// Runs every acceptance criterion at its stated tolerance and time limit and
// prints one PASS/FAIL line per criterion. Exit status is non-zero on any FAIL.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lptile/arith.hpp"
#include "lptile/density.hpp"
#include "lptile/distance_sets.hpp"
#include "lptile/homomorphism.hpp"
#include "lptile/json_io.hpp"
#include "lptile/lattice.hpp"
#include "lptile/radicals.hpp"
#include "lptile/region_tiler.hpp"
#include "lptile/zq_codes.hpp"

using namespace lptile;

namespace {

const Exponent kTwo = Exponent::finite(2);

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool condition, const std::string& what) {
        if (!condition) {
            ok = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
};

std::string join(const std::vector<std::int64_t>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
    return "{" + out + "}";
}

std::vector<LatticePoint> all_vectors(std::int64_t q, int n) {
    std::vector<LatticePoint> out;
    LatticePoint x(static_cast<std::size_t>(n), 0);
    while (true) {
        out.push_back(x);
        int i = n - 1;
        while (i >= 0 && x[i] == q - 1) x[i--] = 0;
        if (i < 0) break;
        ++x[i];
    }
    return out;
}

// ---------------------------------------------------------------- 1

Outcome ball_orders() {
    Outcome o;
    const std::vector<std::tuple<int, std::int64_t, std::int64_t>> cases{
        {2, 1, 5}, {2, 2, 9}, {2, 4, 13}, {2, 8, 25}, {3, 1, 7}, {3, 3, 27}};
    for (const auto& [n, s, m] : cases) {
        const RadiusToken r(kTwo, s);
        const auto counted = ball_cardinality(n, r);
        const auto listed = static_cast<std::int64_t>(enumerate_ball(n, r).cardinality());
        o.require(counted == m && listed == m, "n=" + std::to_string(n) + " s=" + std::to_string(s) + " gives " +
                                                   std::to_string(counted) + "/" + std::to_string(listed));
    }
    return o;
}

// ---------------------------------------------------------------- 2, 3

std::string classification_json(int n, std::int64_t s_max, int jobs) {
    SearchOptions options;
    options.jobs = jobs;
    const auto report = classify(n, kTwo, s_max, options);
    std::string out;
    for (const auto& e : report.entries) out += dump_line(to_json(e, n, kTwo)) + "\n";
    return out;
}

Outcome check_classification(int n, std::int64_t s_max, const std::map<std::int64_t, IntMatrix>& expected) {
    Outcome o;
    SearchOptions options;
    options.jobs = 4;
    const auto report = classify(n, kTwo, s_max, options);
    std::vector<std::int64_t> found, other;
    for (const auto& e : report.entries) {
        if (e.status == SearchStatus::found) {
            found.push_back(e.s);
            o.require(e.kernel_verified, "kernel at s=" + std::to_string(e.s) + " not re-verified");
            o.require(verify_perfect(*e.kernel, RadiusToken(kTwo, e.s)).perfect,
                      "kernel at s=" + std::to_string(e.s) + " not PERFECT");
            const auto it = expected.find(e.s);
            if (it != expected.end())
                o.require(*e.kernel == IntegerLattice::from_generators(it->second, n),
                          "kernel at s=" + std::to_string(e.s) + " differs from the known lattice");
        } else if (e.status != SearchStatus::exhausted) {
            other.push_back(e.s);
        }
    }
    std::vector<std::int64_t> want;
    for (const auto& [s, basis] : expected) want.push_back(s);
    o.require(found == want, "found at " + join(found));
    o.require(other.empty(), "not exhausted at " + join(other));
    o.detail = (o.ok ? "found at " + join(found) + ", " + std::to_string(report.entries.size()) + " tokens searched"
                     : o.detail);
    return o;
}

Outcome planar_classification() {
    return check_classification(2, 294, {{1, {{1, 2}, {0, 5}}},
                                         {2, {{3, 2}, {0, 3}}},
                                         {4, {{1, 5}, {3, 2}}},
                                         {8, {{5, 4}, {0, 5}}}});
}

Outcome spatial_classification() {
    return check_classification(3, 20, {{1, {{1, 0, 2}, {0, 1, 4}, {0, 0, 7}}},
                                        {3, {{3, 8, 0}, {0, 3, 2}, {0, 0, 3}}}});
}

// ---------------------------------------------------------------- 4

Outcome threshold_rows() {
    Outcome o;
    const auto table = DensityTable::load(std::string(LPTILE_TEST_DATA_DIR) + "/densities.json");
    const auto rows = threshold_table(table);
    const std::vector<std::int64_t> reference{838, 299, 274, 214, 223, 231, 273, 357};
    o.require(rows.size() == reference.size(), "wrong number of rows");
    std::vector<std::int64_t> got;
    for (std::size_t i = 0; i < rows.size() && i < reference.size(); ++i) {
        got.push_back(rows[i].threshold);
        const auto diff = rows[i].threshold - reference[i];
        o.require(diff >= -1 && diff <= 1, "n=" + std::to_string(rows[i].n) + " gives " + std::to_string(rows[i].threshold));
    }
    if (o.ok) o.detail = join(got);
    return o;
}

// ---------------------------------------------------------------- 5

std::string survivors_json() {
    const auto t = DensityTable::defaults();
    Json doc = Json::array();
    for (const int n : {2, 3}) doc.push_back(Json{{"n", n}, {"survivors", surviving_radii(n, 2, t.at(n, 2))}});
    return dump_line(doc);
}

Outcome survivor_sweeps() {
    Outcome o;
    const auto t = DensityTable::defaults();
    const auto planar = surviving_radii(2, 2, evaluate_expression("pi/sqrt(12)"));
    const auto spatial = surviving_radii(3, 2, evaluate_expression("pi/(3*sqrt(2))"));
    o.require(!planar.empty() && planar.back() < 294, "planar max " + std::to_string(planar.empty() ? -1 : planar.back()));
    o.require(!spatial.empty() && spatial.back() <= 92, "spatial max " + std::to_string(spatial.empty() ? -1 : spatial.back()));
    if (o.ok) o.detail = "max survivors " + std::to_string(planar.back()) + " and " + std::to_string(spatial.back());
    return o;
}

// ---------------------------------------------------------------- 6

Outcome induced_distance() {
    Outcome o;
    std::mt19937 rng(20240601);
    int mismatches = 0;
    for (int trial = 0; trial < 10'000; ++trial) {
        const std::int64_t q = 2 + static_cast<std::int64_t>(rng() % 24);
        const int n = 1 + static_cast<int>(rng() % 3);
        const int p = 1 + static_cast<int>(rng() % 3);
        std::vector<std::int64_t> x(static_cast<std::size_t>(n)), y(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            x[i] = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(q));
            y[i] = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(q));
        }
        if (!(plee_distance(x, y, q, Exponent::finite(p)) == induced_distance_oracle(x, y, q, p, 2))) ++mismatches;
    }
    o.require(mismatches == 0, std::to_string(mismatches) + " mismatches");
    if (o.ok) o.detail = "10000 cases agree";
    return o;
}

// ---------------------------------------------------------------- 7

Outcome squares_vs_dp() {
    Outcome o;
    const std::int64_t limit = 2000;
    // reach[k][s]: s is a sum of k squares.
    std::vector<std::vector<char>> reach(5, std::vector<char>(limit + 1, 0));
    reach[0][0] = 1;
    for (int k = 1; k <= 4; ++k)
        for (std::int64_t s = 0; s <= limit; ++s)
            if (reach[k - 1][s])
                for (std::int64_t x = 0; s + x * x <= limit; ++x) reach[k][s + x * x] = 1;
    int mismatches = 0;
    for (int n = 2; n <= 4; ++n)
        for (std::int64_t s = 0; s <= limit; ++s)
            if (is_achievable(kTwo, n, s) != static_cast<bool>(reach[n][s])) ++mismatches;
    o.require(mismatches == 0, std::to_string(mismatches) + " mismatches");
    if (o.ok) o.detail = "n=2,3,4 agree up to 2000";
    return o;
}

// ---------------------------------------------------------------- 8

Outcome packing_bracket() {
    Outcome o;
    std::mt19937 rng(8);
    std::uniform_int_distribution<std::int64_t> entry(-6, 6);
    int violations = 0, done = 0;
    while (done < 500) {
        const int n = 1 + static_cast<int>(rng() % 4);
        IntMatrix rows(static_cast<std::size_t>(n), std::vector<std::int64_t>(static_cast<std::size_t>(n)));
        for (auto& r : rows)
            for (auto& x : r) x = entry(rng);
        IntegerLattice lattice = IntegerLattice::from_generators({{1}}, 1);
        try {
            lattice = IntegerLattice::from_generators(rows, n);
        } catch (const std::invalid_argument&) {
            continue;
        }
        ++done;
        const int p = 1 + static_cast<int>(rng() % 3);
        const auto d = minimum_distance(lattice, Exponent::finite(p)).power_value();
        const auto r = packing_radius(lattice, Exponent::finite(p)).power_value();
        // floor((d - 1) / 2) = k: the largest integer with (2k + 1)^p <= d^p.
        std::int64_t k = 0;
        while (ipow(2 * (k + 1) + 1, p) <= d) ++k;
        const bool lower = ipow(k, p) <= r;
        // 2 r - d - n^(1/p) < 0, each term a p-th root of an integer.
        const std::vector<RadicalTerm> terms{{2, r}, {-1, d}, {-1, n}};
        const bool upper = radical_sum_sign(terms, p) < 0;
        if (!lower || !upper) ++violations;
    }
    o.require(violations == 0, std::to_string(violations) + " lattices outside the bracket");
    if (o.ok) o.detail = "500 lattices inside the bracket";
    return o;
}

// ---------------------------------------------------------------- 9

Outcome equal_distance_codes() {
    Outcome o;
    const LinearCodeZq single(4, 4, {{2, 0, 0, 0}});
    const LinearCodeZq ones(4, 4, {{1, 1, 1, 1}});
    const auto ls = construction_a(single), lo = construction_a(ones);
    const auto ds = minimum_distance(ls, kTwo).power_value(), dl = minimum_distance(lo, kTwo).power_value();
    const auto rs = packing_radius(ls, kTwo).power_value(), rl = packing_radius(lo, kTwo).power_value();
    o.require(ds == 4 && dl == 4, "distances " + std::to_string(ds) + ", " + std::to_string(dl));
    o.require(rs == 0 && rl == 1, "radii " + std::to_string(rs) + ", " + std::to_string(rl));
    o.require(code_packing_radius(single, kTwo).power_value() == 0 && code_packing_radius(ones, kTwo).power_value() == 1,
              "code radii differ from lattice radii");
    if (o.ok) o.detail = "distance token 4 for both, radii 0 and 1";
    return o;
}

// ---------------------------------------------------------------- 10

// Does some subgroup of Z_q^n with more than one element tile Z_q^n by l_inf
// balls of some radius r >= 1? Every subgroup is generated by n elements.
bool brute_linfty_exists(std::int64_t q, int n) {
    const auto space = all_vectors(q, n);
    std::set<std::vector<LatticePoint>> seen;
    std::vector<std::size_t> pick(static_cast<std::size_t>(n), 0);
    while (true) {
        std::set<LatticePoint> group{LatticePoint(static_cast<std::size_t>(n), 0)};
        bool grew = true;
        while (grew) {
            grew = false;
            for (const auto& c : std::vector<LatticePoint>(group.begin(), group.end()))
                for (const auto gi : pick) {
                    LatticePoint s(c);
                    for (int i = 0; i < n; ++i) s[i] = (s[i] + space[gi][i]) % q;
                    grew |= group.insert(s).second;
                }
        }
        std::vector<LatticePoint> code(group.begin(), group.end());
        if (code.size() > 1 && seen.insert(code).second) {
            for (std::int64_t r = 1; r <= q / 2; ++r) {
                std::vector<int> cover(space.size(), 0);
                for (const auto& c : code)
                    for (std::size_t idx = 0; idx < space.size(); ++idx) {
                        std::int64_t dist = 0;
                        for (int i = 0; i < n; ++i) {
                            const std::int64_t a = ((space[idx][i] - c[i]) % q + q) % q;
                            dist = std::max(dist, std::min(a, q - a));
                        }
                        if (dist <= r) ++cover[idx];
                    }
                if (std::all_of(cover.begin(), cover.end(), [](int v) { return v == 1; })) return true;
            }
        }
        std::size_t i = 0;
        while (i < pick.size() && ++pick[i] == space.size()) pick[i++] = 0;
        if (i == pick.size()) break;
    }
    return false;
}

Outcome linfty_suite() {
    Outcome o;
    for (std::int64_t q = 2; q <= 12; ++q)
        for (int n = 1; n <= 2; ++n) {
            const bool brute = brute_linfty_exists(q, n);
            const auto v = linfty_existence(q, n);
            o.require(brute == v.nontrivial_exists, "q=" + std::to_string(q) + " n=" + std::to_string(n));
            if (v.nontrivial_exists)
                o.require(code_is_perfect(*v.construction, RadiusToken(Exponent::infinity(), *v.radius)),
                          "construction for q=" + std::to_string(q) + " is not perfect");
        }
    const LinearCodeZq code(49, 2, {{1, 7}});
    o.require(code_is_perfect(code, RadiusToken(Exponent::infinity(), 3)), "<(1,7)> not 3-perfect in l_inf");
    const auto cube = cubic_polyomino_check(2, 3, 3);
    o.require(cube.predicate && cube.sets_equal == true, "p=3 ball is not the cube");
    o.require(code_is_perfect(code, cube.lp_radius), "<(1,7)> not perfect at token " + std::to_string(cube.lp_radius.power_value()));
    if (o.ok) o.detail = "iff-condition matches brute force for q<=12, n<=2; <(1,7)> perfect at r=3 and p=3 token 54";
    return o;
}

// ---------------------------------------------------------------- 11

Outcome construction_transfer() {
    Outcome o;
    const LinearCodeZq code(13, 2, {{1, 5}});
    const auto t = transfer_packing_radius(code, kTwo);
    o.require(t.condition_met && t.lattice_radius && t.lattice_radius->power_value() == 4, "p=2 radius did not transfer");
    o.require(t.lattice_certificate && t.lattice_certificate->perfect, "p=2 perfection did not transfer");
    for (int p = 1; p <= 3; ++p) {
        const auto cert = verify_perfect(construction_a(code), RadiusToken(Exponent::finite(p), ipow(2, p)));
        o.require(cert.perfect, "lattice not perfect for p=" + std::to_string(p));
    }
    const LinearCodeZq repetition(2, 7, {{1, 1, 1, 1, 1, 1, 1}});
    const auto rep = transfer_packing_radius(repetition, kTwo);
    const auto lifted = packing_radius(construction_a(repetition), kTwo);
    o.require(!rep.condition_met, "repetition code claims transfer");
    o.require(!(lifted == rep.code_radius), "repetition radius unexpectedly survives lifting");
    if (o.ok)
        o.detail = "<(1,5)> 2-perfect lift for p=1,2,3; repetition code radius " +
                   std::to_string(rep.code_radius.power_value()) + " vs lattice " + std::to_string(lifted.power_value());
    return o;
}

// ---------------------------------------------------------------- 12

std::string tiler_json() {
    std::string out;
    for (const auto& [r, extent] : std::vector<std::pair<std::int64_t, std::int64_t>>{{2, 10}, {3, 12}}) {
        TilingOptions options;
        options.extent = extent;
        const auto ball = enumerate_ball(2, RadiusToken(kTwo, r * r));
        out += dump_line(to_json(tile_region(ball, options), ball, extent)) + "\n";
    }
    return out;
}

Outcome region_tiler() {
    Outcome o;
    TilingOptions options;
    options.extent = 10;
    const auto two = enumerate_ball(2, RadiusToken(kTwo, 4));
    const auto done = tile_region(two, options);
    o.require(done.status == TilingStatus::completed, "radius-2 region did not complete");
    o.require(covers_region_exactly(two, done.centers, 10), "radius-2 tiling is not an exact cover");

    options.extent = 12;
    const auto three = enumerate_ball(2, RadiusToken(kTwo, 9));
    const auto a = tile_region(three, options), b = tile_region(three, options);
    o.require(a.status == TilingStatus::impossible, "radius-3 region not refuted");
    o.require(a.nodes == b.nodes, "node count not reproducible");

    for (std::int64_t r = 3; r <= 5; ++r) {
        const auto cases = opposite_endpoint_cases(enumerate_ball(2, RadiusToken(kTwo, r * r)));
        o.require(!cases.empty() && std::all_of(cases.begin(), cases.end(), [](const auto& c) { return c.opposite; }),
                  "opposite endpoints fail for r=" + std::to_string(r));
    }
    if (o.ok)
        o.detail = "radius 2 completed in " + std::to_string(done.nodes) + " nodes; radius 3 impossible in " +
                   std::to_string(a.nodes) + " nodes";
    return o;
}

// ---------------------------------------------------------------- 13

Outcome determinism() {
    Outcome o;
    o.require(classification_json(2, 294, 4) == classification_json(2, 294, 4), "planar classification differs");
    o.require(classification_json(2, 294, 1) == classification_json(2, 294, 4), "classification depends on workers");
    o.require(survivors_json() == survivors_json(), "survivor sweep differs");
    o.require(tiler_json() == tiler_json(), "tiler report differs");
    if (o.ok) o.detail = "repeated reports are byte-identical";
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        std::string name;
        double limit_seconds;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "ball sizes equal the tiling group orders", 1, ball_orders},
        {2, "planar classification up to s=294", 1800, planar_classification},
        {3, "three-dimensional classification up to s=20", 600, spatial_classification},
        {4, "threshold radii within +-1", 1, threshold_rows},
        {5, "density survivor sweeps", 60, survivor_sweeps},
        {6, "p-Lee distance equals the induced distance", 60, induced_distance},
        {7, "sum-of-squares test against dynamic programme", 60, squares_vs_dp},
        {8, "packing radius bracket on random lattices", 300, packing_bracket},
        {9, "equal-distance codes with different packing radii", 1, equal_distance_codes},
        {10, "l_inf perfect code suite", 120, linfty_suite},
        {11, "packing radius transfer through Construction A", 60, construction_transfer},
        {12, "region tiler", 900, region_tiler},
        {13, "determinism of reports", 3600, determinism},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = c.run();
        } catch (const std::exception& e) {
            outcome.ok = false;
            outcome.detail = std::string("exception: ") + e.what();
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (seconds > c.limit_seconds) {
            outcome.ok = false;
            outcome.detail += " (over the " + std::to_string(static_cast<int>(c.limit_seconds)) + " s limit)";
        }
        failures += !outcome.ok;
        char timing[32];
        std::snprintf(timing, sizeof timing, "%.3f s", seconds);
        std::cout << (outcome.ok ? "PASS" : "FAIL") << ' ' << c.id << ": " << c.name << " [" << timing << "] "
                  << outcome.detail << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
