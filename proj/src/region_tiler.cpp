#include "lptile/region_tiler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

#include "lptile/arith.hpp"

namespace lptile {

namespace {

using boost::multiprecision::cpp_int;

std::int64_t integer_radius_of(const DiscreteBall& footprint) {
    const auto r = footprint.radius().integer_radius();
    if (!r) throw std::invalid_argument("footprint radius " + footprint.radius().to_string() + " is not an integer");
    return *r;
}

bool is_integral(double p) { return p == std::floor(p) && p >= 1 && p <= 4096; }

// lhs_coeff * (r - 1)^p + (r - k)^p <= r^p
bool power_inequality(std::int64_t coeff, std::int64_t r, std::int64_t k, double p) {
    if (is_integral(p)) {
        const auto e = static_cast<unsigned>(p);
        const cpp_int lhs = coeff * boost::multiprecision::pow(cpp_int(r - 1), e) +
                            boost::multiprecision::pow(cpp_int(r - k), e);
        return lhs <= boost::multiprecision::pow(cpp_int(r), e);
    }
    // Divide through by r^p to stay in range.
    const long double rr = static_cast<long double>(r);
    const long double lhs = coeff * std::pow((rr - 1) / rr, static_cast<long double>(p)) +
                            std::pow(static_cast<long double>(r - k) / rr, static_cast<long double>(p));
    return lhs <= 1.0L;
}

class RegionSearch {
public:
    RegionSearch(const DiscreteBall& footprint, const TilingOptions& options)
        : n_(footprint.dimension()), extent_(options.extent), budget_(options.budget) {
        const std::int64_t reach = footprint.extent();
        half_ = checked_add(extent_, 2 * reach);
        side_ = 2 * half_ + 1;
        stride_.assign(static_cast<std::size_t>(n_), 1);
        for (int i = n_ - 2; i >= 0; --i) stride_[i] = checked_mul(stride_[i + 1], side_);
        const std::int64_t cells = checked_mul(stride_[0], side_);
        if (cells > (std::int64_t{1} << 28)) throw std::length_error("tiling region too large");
        occupied_.assign(static_cast<std::size_t>(cells), -1);

        for (const auto& f : footprint.points()) offsets_.push_back(offset_of(f));

        std::vector<LatticePoint> region;
        LatticePoint x(static_cast<std::size_t>(n_), -extent_);
        while (true) {
            region.push_back(x);
            int i = n_ - 1;
            while (i >= 0 && x[i] == extent_) x[i--] = -extent_;
            if (i < 0) break;
            ++x[i];
        }
        if (options.order == CellOrder::nearest_first)
            std::stable_sort(region.begin(), region.end(), [](const LatticePoint& a, const LatticePoint& b) {
                std::int64_t na = 0, nb = 0;
                for (const auto v : a) na += v * v;
                for (const auto v : b) nb += v * v;
                return na < nb;
            });
        for (const auto& cell : region) order_.push_back(index_of(cell));
    }

    TilingResult run() {
        place(index_of(LatticePoint(static_cast<std::size_t>(n_), 0)));
        const bool done = search(0);
        TilingResult result{done ? TilingStatus::completed : (exhausted_budget_ ? TilingStatus::inconclusive
                                                                                : TilingStatus::impossible),
                            nodes_,
                            {}};
        if (done)
            for (const auto c : centers_) result.centers.push_back(point_of(c));
        return result;
    }

private:
    std::int64_t offset_of(const LatticePoint& f) const {
        std::int64_t off = 0;
        for (int i = 0; i < n_; ++i) off += f[i] * stride_[i];
        return off;
    }
    std::int64_t index_of(const LatticePoint& x) const {
        std::int64_t idx = 0;
        for (int i = 0; i < n_; ++i) idx += (x[i] + half_) * stride_[i];
        return idx;
    }
    LatticePoint point_of(std::int64_t idx) const {
        LatticePoint x(static_cast<std::size_t>(n_));
        for (int i = 0; i < n_; ++i) {
            x[i] = idx / stride_[i] - half_;
            idx %= stride_[i];
        }
        return x;
    }

    bool fits(std::int64_t center) const {
        for (const auto off : offsets_)
            if (occupied_[static_cast<std::size_t>(center + off)] >= 0) return false;
        return true;
    }
    void place(std::int64_t center) {
        const auto id = static_cast<std::int32_t>(centers_.size());
        for (const auto off : offsets_) occupied_[static_cast<std::size_t>(center + off)] = id;
        centers_.push_back(center);
    }
    void remove() {
        const std::int64_t center = centers_.back();
        for (const auto off : offsets_) occupied_[static_cast<std::size_t>(center + off)] = -1;
        centers_.pop_back();
    }

    bool search(std::size_t cursor) {
        while (cursor < order_.size() && occupied_[static_cast<std::size_t>(order_[cursor])] >= 0) ++cursor;
        if (cursor == order_.size()) return true;
        const std::int64_t cell = order_[cursor];
        for (const auto off : offsets_) {
            if (nodes_ >= budget_) {
                exhausted_budget_ = true;
                return false;
            }
            ++nodes_;
            const std::int64_t center = cell - off;
            if (!fits(center)) continue;
            place(center);
            if (search(cursor + 1)) return true;
            remove();
            if (exhausted_budget_) return false;
        }
        return false;
    }

    int n_;
    std::int64_t extent_;
    std::uint64_t budget_;
    std::int64_t half_ = 0;
    std::int64_t side_ = 0;
    std::vector<std::int64_t> stride_;
    std::vector<std::int32_t> occupied_;
    std::vector<std::int64_t> offsets_;
    std::vector<std::int64_t> order_;
    std::vector<std::int64_t> centers_;
    std::uint64_t nodes_ = 0;
    bool exhausted_budget_ = false;
};

}  // namespace

std::string to_string(PointClass c) {
    switch (c) {
        case PointClass::endpoint: return "endpoint";
        case PointClass::ordinary: return "ordinary";
        case PointClass::outside: return "outside";
    }
    return "unknown";
}

std::string to_string(TilingStatus status) {
    switch (status) {
        case TilingStatus::completed: return "completed";
        case TilingStatus::impossible: return "impossible";
        case TilingStatus::inconclusive: return "inconclusive";
    }
    return "unknown";
}

PointClass classify_point(const DiscreteBall& footprint, std::span<const std::int64_t> x) {
    const std::int64_t r = integer_radius_of(footprint);
    if (static_cast<int>(x.size()) != footprint.dimension()) throw std::invalid_argument("dimension mismatch");
    if (!footprint.contains(x)) return PointClass::outside;
    int nonzero = 0;
    bool extreme = false;
    for (const auto v : x) {
        if (v != 0) ++nonzero;
        if (v == r || v == -r) extreme = true;
    }
    return (r > 0 && nonzero == 1 && extreme) ? PointClass::endpoint : PointClass::ordinary;
}

bool planar_endpoint_obstruction(std::int64_t r, double p) {
    if (r < 1) throw std::invalid_argument("radius must be >= 1");
    if (!(p > 1)) throw std::invalid_argument("exponent must exceed 1");
    if (r <= 2) return false;
    // (r - 1)^p + 2^p <= r^p, written as 1 * (r - 1)^p + (r - (r - 2))^p.
    return power_inequality(1, r, r - 2, p);
}

bool endpoint_obstruction(int n, std::int64_t r, double p) {
    if (n < 3) throw std::invalid_argument("dimension must be >= 3");
    if (r < 1) throw std::invalid_argument("radius must be >= 1");
    if (!(p > 1)) throw std::invalid_argument("exponent must exceed 1");
    if (r <= 2) return false;
    return power_inequality(n - 1, r, 2, p);
}

TilingResult tile_region(const DiscreteBall& footprint, const TilingOptions& options) {
    if (options.extent < 0) throw std::invalid_argument("extent must be >= 0");
    return RegionSearch(footprint, options).run();
}

bool covers_region_exactly(const DiscreteBall& footprint, const std::vector<LatticePoint>& centers,
                           std::int64_t extent) {
    const int n = footprint.dimension();
    std::vector<LatticePoint> cells;
    for (const auto& c : centers)
        for (const auto& f : footprint.points()) {
            LatticePoint x(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) x[i] = c[i] + f[i];
            cells.push_back(std::move(x));
        }
    std::sort(cells.begin(), cells.end());
    if (std::adjacent_find(cells.begin(), cells.end()) != cells.end()) return false;

    LatticePoint x(static_cast<std::size_t>(n), -extent);
    while (true) {
        if (!std::binary_search(cells.begin(), cells.end(), x)) return false;
        int i = n - 1;
        while (i >= 0 && x[i] == extent) x[i--] = -extent;
        if (i < 0) return true;
        ++x[i];
    }
}

std::vector<OppositeEndpointCase> opposite_endpoint_cases(const DiscreteBall& footprint) {
    const std::int64_t r = integer_radius_of(footprint);
    const int n = footprint.dimension();
    std::vector<OppositeEndpointCase> cases;
    auto unit = [n](int i, std::int64_t scale) {
        LatticePoint v(static_cast<std::size_t>(n), 0);
        v[i] = scale;
        return v;
    };
    auto add = [n](LatticePoint a, const LatticePoint& b) {
        for (int i = 0; i < n; ++i) a[i] += b[i];
        return a;
    };
    for (int i = 0; i < n; ++i)
        for (const std::int64_t si : {1, -1}) {
            const LatticePoint x = unit(i, si * r);
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                for (const std::int64_t sj : {1, -1}) {
                    const LatticePoint y = add(x, unit(j, sj));
                    for (int k = 0; k < n; ++k)
                        for (const std::int64_t sk : {1, -1}) {
                            // y = other + sk r e_k
                            const LatticePoint other = add(y, unit(k, -sk * r));
                            if (balls_overlap(other, footprint)) continue;
                            const bool opposite = (k == i && sk == -si);
                            cases.push_back({x, y, other, opposite});
                        }
                }
            }
        }
    return cases;
}

}  // namespace lptile
