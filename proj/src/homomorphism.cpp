#include "lptile/homomorphism.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "lptile/arith.hpp"
#include "lptile/distance_sets.hpp"

namespace lptile {

namespace {

using Clock = std::chrono::steady_clock;

void descending_partitions(int remaining, int max_part, std::vector<int>& current, std::vector<std::vector<int>>& out) {
    if (remaining == 0) {
        out.push_back(current);
        return;
    }
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
        current.push_back(part);
        descending_partitions(remaining - part, part, current, out);
        current.pop_back();
    }
}

// Mixed-radix encoding of group elements; the last factor varies fastest.
class GroupArith {
public:
    explicit GroupArith(const AbelianGroupSpec& group) : factors_(group.factors), weights_(group.factors.size(), 1) {
        for (int f = static_cast<int>(factors_.size()) - 2; f >= 0; --f) weights_[f] = checked_mul(weights_[f + 1], factors_[f + 1]);
        order_ = group.order();
    }

    std::size_t rank() const { return factors_.size(); }
    std::int64_t order() const { return order_; }
    std::int64_t factor(std::size_t f) const { return factors_[f]; }
    bool cyclic() const { return factors_.size() == 1; }

    std::int64_t encode(const std::int64_t* comps) const {
        std::int64_t idx = 0;
        for (std::size_t f = 0; f < factors_.size(); ++f) idx += comps[f] * weights_[f];
        return idx;
    }
    void decode(std::int64_t idx, std::int64_t* comps) const {
        for (std::size_t f = 0; f < factors_.size(); ++f) {
            comps[f] = idx / weights_[f];
            idx %= weights_[f];
        }
    }
    std::int64_t negate(std::int64_t idx) const {
        std::int64_t out = 0;
        for (std::size_t f = 0; f < factors_.size(); ++f) {
            const std::int64_t c = idx / weights_[f];
            idx %= weights_[f];
            out += mod_floor(-c, factors_[f]) * weights_[f];
        }
        return out;
    }

private:
    std::vector<std::int64_t> factors_;
    std::vector<std::int64_t> weights_;
    std::int64_t order_ = 1;
};

// Half of the nonzero differences (last nonzero entry positive), bucketed by
// the position of that entry and sorted short first.
std::vector<std::vector<LatticePoint>> difference_levels(const DiscreteBall& ball) {
    const int n = ball.dimension();
    std::vector<std::vector<LatticePoint>> levels(static_cast<std::size_t>(n));
    const auto diff = difference_set(ball);
    for (const auto& v : diff.points()) {
        int last = -1;
        for (int i = 0; i < n; ++i)
            if (v[i] != 0) last = i;
        if (last < 0 || v[last] < 0) continue;
        levels[last].push_back(v);
    }
    auto norm2 = [](const LatticePoint& v) {
        std::int64_t s = 0;
        for (const auto x : v) s += x * x;
        return s;
    };
    for (auto& level : levels)
        std::stable_sort(level.begin(), level.end(),
                         [&](const LatticePoint& a, const LatticePoint& b) { return norm2(a) < norm2(b); });
    return levels;
}

struct TaskResult {
    bool found = false;
    bool capped = false;
    std::uint64_t nodes = 0;
    std::vector<std::int64_t> images;
};

class ImageSearch {
public:
    ImageSearch(const GroupArith& group, const std::vector<std::vector<LatticePoint>>& levels, bool reduce,
                std::uint64_t cap)
        : group_(group),
          levels_(levels),
          n_(static_cast<int>(levels.size())),
          reduce_(reduce && group.order() > 1),
          cap_(cap),
          forbidden_(static_cast<std::size_t>(n_), std::vector<std::uint32_t>(static_cast<std::size_t>(group.order()), 0)),
          stamp_(static_cast<std::size_t>(n_), 0),
          images_(static_cast<std::size_t>(n_), 0),
          comps_(static_cast<std::size_t>(n_), std::vector<std::int64_t>(group.rank(), 0)),
          partial_(group.rank(), 0),
          solution_base_(group.rank(), 0),
          solution_step_(group.rank(), 0),
          solution_count_(group.rank(), 0),
          digit_(group.rank(), 0) {}

    std::vector<std::int64_t> first_candidates() const {
        std::vector<std::int64_t> out;
        const std::int64_t m = group_.order();
        if (!reduce_) {
            for (std::int64_t c = 0; c < m; ++c) out.push_back(c);
        } else if (group_.cyclic()) {
            for (const auto d : divisors(m))
                if (d < m) out.push_back(d);
        } else {
            for (std::int64_t c = 1; c < m; ++c)
                if (c <= group_.negate(c)) out.push_back(c);
        }
        return out;
    }

    TaskResult run(std::int64_t first) {
        nodes_ = 1;
        capped_ = false;
        sieve(0);
        bool found = false;
        if (forbidden_[0][static_cast<std::size_t>(first)] != stamp_[0]) {
            set_image(0, first);
            found = descend(1);
        }
        TaskResult result{found, capped_, nodes_, {}};
        if (found) result.images = images_;
        return result;
    }

private:
    void set_image(int depth, std::int64_t idx) {
        images_[depth] = idx;
        group_.decode(idx, comps_[depth].data());
    }

    bool allowed(std::int64_t c) const {
        if (!reduce_) return true;
        if (group_.cyclic()) return std::gcd(c, group_.order()) >= images_[0];
        return c <= group_.negate(c);
    }

    bool descend(int depth) {
        if (depth == n_) return true;
        sieve(depth);
        const std::int64_t m = group_.order();
        std::int64_t lo = 0, hi = m - 1;
        if (reduce_) {
            if (group_.cyclic()) {
                lo = depth == 1 ? 1 : images_[depth - 1];
                hi = m / 2;
            } else {
                lo = images_[depth - 1];
            }
        }
        const auto& forbidden = forbidden_[depth];
        const std::uint32_t stamp = stamp_[depth];
        for (std::int64_t c = lo; c <= hi; ++c) {
            if (nodes_ >= cap_) {
                capped_ = true;
                return false;
            }
            ++nodes_;
            if (forbidden[static_cast<std::size_t>(c)] == stamp || !allowed(c)) continue;
            set_image(depth, c);
            if (descend(depth + 1)) return true;
            if (capped_) return false;
        }
        return false;
    }

    // Marks every g with v_depth * g = -sum_{i<depth} v_i g_i for some v in the level.
    void sieve(int depth) {
        auto& forbidden = forbidden_[depth];
        if (++stamp_[depth] == 0) {
            std::fill(forbidden.begin(), forbidden.end(), 0);
            stamp_[depth] = 1;
        }
        const std::uint32_t stamp = stamp_[depth];
        const std::size_t k = group_.rank();
        for (const auto& v : levels_[depth]) {
            const std::int64_t a = v[depth];
            bool solvable = true;
            for (std::size_t f = 0; f < k && solvable; ++f) {
                const std::int64_t d = group_.factor(f);
                std::int64_t p = 0;
                for (int i = 0; i < depth; ++i) p = (p + v[i] * comps_[i][f]) % d;
                const std::int64_t b = mod_floor(-p, d);
                const auto eg = extended_gcd(a, d);
                if (b % eg.g != 0) {
                    solvable = false;
                    break;
                }
                const std::int64_t step = d / eg.g;
                solution_base_[f] = mod_floor((b / eg.g) % step * mod_floor(eg.x, step), step);
                solution_step_[f] = step;
                solution_count_[f] = eg.g;
            }
            if (!solvable) continue;
            // Odometer over the product of per-component solution sets.
            std::fill(digit_.begin(), digit_.end(), 0);
            while (true) {
                for (std::size_t f = 0; f < k; ++f) partial_[f] = solution_base_[f] + digit_[f] * solution_step_[f];
                forbidden[static_cast<std::size_t>(group_.encode(partial_.data()))] = stamp;
                std::size_t f = 0;
                while (f < k && ++digit_[f] == solution_count_[f]) digit_[f++] = 0;
                if (f == k) break;
            }
        }
    }

    const GroupArith& group_;
    const std::vector<std::vector<LatticePoint>>& levels_;
    int n_;
    bool reduce_;
    std::uint64_t cap_;
    std::vector<std::vector<std::uint32_t>> forbidden_;
    std::vector<std::uint32_t> stamp_;
    std::vector<std::int64_t> images_;
    std::vector<std::vector<std::int64_t>> comps_;
    std::vector<std::int64_t> partial_;
    std::vector<std::int64_t> solution_base_, solution_step_, solution_count_, digit_;
    std::uint64_t nodes_ = 0;
    bool capped_ = false;
};

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

// ---------------------------------------------------------------- groups

std::int64_t AbelianGroupSpec::order() const {
    std::int64_t m = 1;
    for (const auto d : factors) m = checked_mul(m, d);
    return m;
}

std::string AbelianGroupSpec::to_string() const {
    if (factors.empty()) return "Z_1";
    std::string out;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i) out += " x ";
        out += "Z_" + std::to_string(factors[i]);
    }
    return out;
}

std::vector<AbelianGroupSpec> abelian_groups_of_order(std::int64_t m) {
    if (m < 1) throw std::invalid_argument("group order must be >= 1");
    const auto primes = factorize(m);
    std::vector<std::vector<std::vector<int>>> choices;
    for (const auto& [p, e] : primes) {
        std::vector<std::vector<int>> parts;
        std::vector<int> current;
        descending_partitions(e, e, current, parts);
        choices.push_back(std::move(parts));
    }

    std::vector<AbelianGroupSpec> groups;
    std::vector<std::size_t> pick(choices.size(), 0);
    while (true) {
        std::size_t width = 0;
        for (std::size_t i = 0; i < choices.size(); ++i) width = std::max(width, choices[i][pick[i]].size());
        std::vector<std::int64_t> descending(width, 1);
        for (std::size_t i = 0; i < choices.size(); ++i) {
            const auto& parts = choices[i][pick[i]];
            for (std::size_t t = 0; t < parts.size(); ++t)
                descending[t] = checked_mul(descending[t], ipow(primes[i].first, parts[t]));
        }
        groups.push_back({std::vector<std::int64_t>(descending.rbegin(), descending.rend())});

        std::size_t i = 0;
        while (i < choices.size() && ++pick[i] == choices[i].size()) pick[i++] = 0;
        if (i == choices.size()) break;
    }
    std::sort(groups.begin(), groups.end(), [](const AbelianGroupSpec& a, const AbelianGroupSpec& b) {
        return std::lexicographical_compare(b.factors.rbegin(), b.factors.rend(), a.factors.rbegin(), a.factors.rend());
    });
    return groups;
}

// ---------------------------------------------------------------- homomorphisms

std::vector<std::int64_t> GroupHomomorphism::evaluate(std::span<const std::int64_t> x) const {
    if (x.size() != images.size()) throw std::invalid_argument("dimension mismatch");
    const auto& d = group.factors;
    std::vector<std::int64_t> out(d.size(), 0);
    for (std::size_t f = 0; f < d.size(); ++f) {
        std::int64_t acc = 0;
        for (std::size_t i = 0; i < x.size(); ++i)
            acc = mod_floor(acc + mod_floor(x[i], d[f]) * mod_floor(images[i][f], d[f]) % d[f], d[f]);
        out[f] = acc;
    }
    return out;
}

bool is_bijective_on(const GroupHomomorphism& phi, const DiscreteBall& ball) {
    if (static_cast<int>(phi.images.size()) != ball.dimension()) throw std::invalid_argument("dimension mismatch");
    const GroupArith arith(phi.group);
    if (arith.order() != static_cast<std::int64_t>(ball.cardinality())) return false;
    std::vector<char> seen(static_cast<std::size_t>(arith.order()), 0);
    for (const auto& x : ball.points()) {
        const auto value = phi.evaluate(x);
        const auto idx = static_cast<std::size_t>(arith.encode(value.data()));
        if (seen[idx]) return false;
        seen[idx] = 1;
    }
    return true;
}

IntegerLattice kernel_lattice(const GroupHomomorphism& phi) {
    const int n = static_cast<int>(phi.images.size());
    const auto& d = phi.group.factors;
    const int k = static_cast<int>(d.size());
    // Rows (g_i | e_i) and (d_f e_f | 0): their Hermite form's last n rows
    // start with k zeros and span the kernel in the remaining columns.
    IntMatrix rows;
    for (int i = 0; i < n; ++i) {
        std::vector<std::int64_t> row(static_cast<std::size_t>(k + n), 0);
        for (int f = 0; f < k; ++f) row[f] = mod_floor(phi.images[i][f], d[f]);
        row[k + i] = 1;
        rows.push_back(std::move(row));
    }
    for (int f = 0; f < k; ++f) {
        std::vector<std::int64_t> row(static_cast<std::size_t>(k + n), 0);
        row[f] = d[f];
        rows.push_back(std::move(row));
    }
    const auto joint = IntegerLattice::from_generators(rows, k + n);
    IntMatrix kernel;
    for (int i = k; i < k + n; ++i)
        kernel.emplace_back(joint.basis()[i].begin() + k, joint.basis()[i].end());
    return IntegerLattice::from_generators(kernel, n);
}

std::string to_string(SearchStatus status) {
    switch (status) {
        case SearchStatus::found: return "found";
        case SearchStatus::exhausted: return "exhausted";
        case SearchStatus::inconclusive: return "inconclusive";
        case SearchStatus::unachievable: return "unachievable";
        case SearchStatus::duplicate: return "duplicate";
    }
    return "unknown";
}

TokenOutcome search_homomorphisms(int n, const RadiusToken& radius, const SearchOptions& options) {
    const auto start = Clock::now();
    TokenOutcome outcome;
    outcome.s = radius.power_value();
    if (!is_achievable(radius.exponent(), n, radius.power_value())) {
        outcome.status = SearchStatus::unachievable;
        return outcome;
    }
    const DiscreteBall ball = enumerate_ball(n, radius);
    const auto m = static_cast<std::int64_t>(ball.cardinality());
    outcome.ball_size = m;
    const auto levels = difference_levels(ball);
    const auto groups = abelian_groups_of_order(m);

    std::vector<GroupArith> ariths;
    for (const auto& g : groups) ariths.emplace_back(g);

    struct Task {
        std::size_t group;
        std::int64_t first;
    };
    std::vector<Task> tasks;
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        const ImageSearch probe(ariths[gi], levels, options.symmetry_reduction, 0);
        for (const auto c : probe.first_candidates()) tasks.push_back({gi, c});
    }

    std::vector<TaskResult> results(tasks.size());
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> winner{std::numeric_limits<std::size_t>::max()};
    std::atomic<std::uint64_t> spent{0};  // only meaningful for a single worker
    const int jobs = std::max(1, options.jobs);
    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size() || i > winner.load()) return;
            if (jobs == 1 && spent.load() > options.budget) return;
            ImageSearch search(ariths[tasks[i].group], levels, options.symmetry_reduction, options.budget);
            results[i] = search.run(tasks[i].first);
            spent += results[i].nodes;
            if (results[i].found) {
                std::size_t current = winner.load();
                while (i < current && !winner.compare_exchange_weak(current, i)) {
                }
            }
        }
    };
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    // Merge in task order so the verdict and node counts do not depend on jobs.
    std::vector<std::uint64_t> group_nodes(groups.size(), 0);
    std::size_t stop_group = groups.size() - 1;
    SearchStatus stop_status = SearchStatus::exhausted;
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        const auto& res = results[i];
        total += res.nodes;
        group_nodes[tasks[i].group] += res.nodes;
        if (res.found && total <= options.budget) {
            stop_status = SearchStatus::found;
            stop_group = tasks[i].group;
            GroupHomomorphism phi{groups[stop_group], {}};
            for (const auto idx : res.images) {
                std::vector<std::int64_t> comps(groups[stop_group].factors.size());
                ariths[stop_group].decode(idx, comps.data());
                phi.images.push_back(std::move(comps));
            }
            outcome.homomorphism = std::move(phi);
            break;
        }
        if (res.found || res.capped || total > options.budget) {
            stop_status = SearchStatus::inconclusive;
            stop_group = tasks[i].group;
            break;
        }
    }
    outcome.status = stop_status;
    outcome.nodes = total;
    for (std::size_t gi = 0; gi <= stop_group && gi < groups.size(); ++gi) {
        const SearchStatus s = gi == stop_group ? stop_status : SearchStatus::exhausted;
        outcome.groups.push_back({groups[gi], s, group_nodes[gi]});
    }

    if (outcome.homomorphism) {
        if (!is_bijective_on(*outcome.homomorphism, ball))
            throw std::logic_error("search returned a homomorphism that is not bijective on the ball");
        outcome.kernel = kernel_lattice(*outcome.homomorphism);
        outcome.kernel_verified = verify_perfect(*outcome.kernel, radius).perfect;
    }
    outcome.seconds = seconds_since(start);
    return outcome;
}

std::vector<std::int64_t> ClassificationReport::found_tokens() const {
    std::vector<std::int64_t> out;
    for (const auto& e : entries)
        if (e.status == SearchStatus::found) out.push_back(e.s);
    return out;
}

ClassificationReport classify(int n, Exponent exponent, std::int64_t s_max, const SearchOptions& options) {
    const auto start = Clock::now();
    ClassificationReport report{n, exponent, s_max, {}};
    std::int64_t previous_size = -1, previous_s = 0;
    for (std::int64_t s = 1; s <= s_max; ++s) {
        if (!is_achievable(exponent, n, s)) continue;
        const RadiusToken r(exponent, s);
        const std::int64_t size = ball_cardinality(n, r);
        if (size == previous_size) {
            // Nested balls of equal size coincide; the smaller token already covers this ball.
            auto& dup = report.entries.emplace_back();
            dup.s = s;
            dup.ball_size = size;
            dup.status = SearchStatus::duplicate;
            dup.duplicate_of = previous_s;
            continue;
        }
        previous_size = size;
        previous_s = s;
        report.entries.push_back(search_homomorphisms(n, r, options));
    }
    report.seconds = seconds_since(start);
    return report;
}

}  // namespace lptile
