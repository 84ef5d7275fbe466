#include "lptile/density.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "lptile/arith.hpp"
#include "lptile/distance_sets.hpp"

namespace lptile {

namespace {

class ExpressionParser {
public:
    explicit ExpressionParser(std::string_view text) : text_(text) {}

    double parse() {
        const double value = sum();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return value;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("density expression \"" + std::string(text_) + "\": " + what);
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    double sum() {
        double value = product();
        while (true) {
            if (accept('+'))
                value += product();
            else if (accept('-'))
                value -= product();
            else
                return value;
        }
    }

    double product() {
        double value = unary();
        while (true) {
            if (accept('*'))
                value *= unary();
            else if (accept('/'))
                value /= unary();
            else
                return value;
        }
    }

    double unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    double power() {
        const double base = postfix();
        if (accept('^')) return std::pow(base, unary());
        return base;
    }

    double postfix() {
        double value = primary();
        while (accept('!')) {
            if (value < 0 || value != std::floor(value) || value > 170) fail("factorial needs an integer in [0, 170]");
            value = std::tgamma(value + 1);
        }
        return value;
    }

    double primary() {
        skip_space();
        if (pos_ >= text_.size()) fail("unexpected end");
        if (accept('(')) {
            const double value = sum();
            expect(')');
            return value;
        }
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t used = 0;
            const double value = std::stod(std::string(text_.substr(pos_)), &used);
            pos_ += used;
            return value;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            const std::string_view name = text_.substr(start, pos_ - start);
            if (name == "pi") return std::numbers::pi;
            if (name == "e") return std::numbers::e;
            if (name == "sqrt") {
                expect('(');
                const double value = sum();
                expect(')');
                if (value < 0) fail("sqrt of a negative value");
                return std::sqrt(value);
            }
            fail("unknown name '" + std::string(name) + "'");
        }
        fail(std::string("unexpected '") + c + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

double nth_root_of_n(int n, int p) { return std::pow(static_cast<double>(n), 1.0 / p); }

}  // namespace

double evaluate_expression(std::string_view text) { return ExpressionParser(text).parse(); }

DensityTable DensityTable::defaults() {
    DensityTable t;
    const std::pair<int, const char*> forms[] = {
        {2, "pi/sqrt(12)"},          {3, "pi/(3*sqrt(2))"},      {4, "pi^2/16"},
        {5, "pi^2/(15*sqrt(2))"},    {6, "pi^3/(48*sqrt(3))"},   {7, "pi^3/105"},
        {8, "pi^4/384"},             {24, "pi^12/12!"},
    };
    for (const auto& [n, expr] : forms) t.set(n, 2, evaluate_expression(expr), expr);
    return t;
}

DensityTable DensityTable::from_json(std::string_view text) {
    const auto doc = nlohmann::json::parse(text);
    if (!doc.is_array()) throw std::invalid_argument("density file must hold a JSON array");
    DensityTable t;
    for (const auto& item : doc) {
        if (!item.contains("n") || !item.contains("p") || !item.contains("density"))
            throw std::invalid_argument("density entry needs n, p and density");
        const int n = item.at("n").get<int>();
        const int p = item.at("p").get<int>();
        const auto& d = item.at("density");
        double value;
        std::string expr;
        if (d.is_string()) {
            expr = d.get<std::string>();
            value = evaluate_expression(expr);
        } else if (d.is_number()) {
            value = d.get<double>();
            expr = d.dump();
        } else {
            throw std::invalid_argument("density must be a number or an expression string");
        }
        if (!(value > 0 && value <= 1))
            throw std::invalid_argument("density for n=" + std::to_string(n) + " p=" + std::to_string(p) +
                                        " must lie in (0, 1]");
        t.set(n, p, value, expr);
    }
    return t;
}

DensityTable DensityTable::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open density file " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return from_json(buffer.str());
}

std::optional<double> DensityTable::find(int n, int p) const {
    for (const auto& e : entries_)
        if (e.n == n && e.p == p) return e.density;
    return std::nullopt;
}

double DensityTable::at(int n, int p) const {
    if (const auto d = find(n, p)) return *d;
    throw std::out_of_range("missing density entry for n=" + std::to_string(n) + " p=" + std::to_string(p));
}

void DensityTable::set(int n, int p, double density, std::string expression) {
    for (auto& e : entries_)
        if (e.n == n && e.p == p) {
            e.density = density;
            e.expression = std::move(expression);
            return;
        }
    entries_.push_back({n, p, density, std::move(expression)});
}

double induced_density_lower_bound(int n, const RadiusToken& radius) {
    const Exponent e = radius.exponent();
    if (e.is_infinite()) throw std::invalid_argument("induced density needs a finite exponent");
    const int p = e.value();
    const double slack = radius.radius() - nth_root_of_n(n, p) / 2.0;
    if (slack <= 0) return 0.0;
    const double count = static_cast<double>(ball_cardinality(n, radius));
    return superball_volume(n, p) * std::pow(slack, n) / count;
}

double corollary_radius_bound(int n, int p, double density) {
    if (!(density > 0 && density < 1)) throw std::invalid_argument("density must lie in (0, 1)");
    const double root = std::pow(density, 1.0 / n);
    return nth_root_of_n(n, p) / 2.0 * (1 + root) / (1 - root);
}

std::vector<ThresholdRow> threshold_table(const DensityTable& table) {
    std::vector<ThresholdRow> rows;
    for (const int n : {2, 3, 4, 5, 6, 7, 8, 24}) {
        const double bound = corollary_radius_bound(n, 2, table.at(n, 2));
        const double squared = bound * bound;
        rows.push_back({n, squared, static_cast<std::int64_t>(std::floor(squared))});
    }
    return rows;
}

std::vector<std::int64_t> surviving_radii(int n, int p, double density, std::optional<std::int64_t> limit) {
    const Exponent e = Exponent::finite(p);
    std::int64_t top;
    if (density >= 1) {
        if (!limit) throw std::invalid_argument("density 1 gives no radius bound; pass a limit");
        top = *limit;
    } else {
        const double bound_power = std::pow(corollary_radius_bound(n, p, density), p);
        if (!(bound_power < 9.0e15)) throw std::overflow_error("radius bound too large to sweep");
        top = static_cast<std::int64_t>(std::ceil(bound_power));
        if (limit) top = std::min(top, *limit);
    }
    std::vector<std::int64_t> out;
    for (std::int64_t s = 1; s <= top; ++s) {
        if (!is_achievable(e, n, s)) continue;
        if (induced_density_lower_bound(n, RadiusToken(e, s)) <= density) out.push_back(s);
    }
    return out;
}

HighDimBound high_dim_density_bound(int n, int p) {
    if (n < 1 || p < 1) throw std::invalid_argument("n and p must be >= 1");
    const double ratio = static_cast<double>(n) / p;
    HighDimBound out;
    out.density_bound = std::pow(2.0, -ratio + std::log2(ratio + 1));
    out.nontrivial = ratio + 1 < std::pow(2.0, ratio);
    if (out.nontrivial) {
        const double a = std::pow(2.0, 1.0 / p);
        const double b = std::pow(1 + ratio, 1.0 / n);
        out.radius_bound = nth_root_of_n(n, p) / 2.0 * (a + b) / (a - b);
    }
    return out;
}

CubicPolyominoVerdict cubic_polyomino_check(int n, std::int64_t r, int p, std::int64_t enumerate_limit) {
    if (r < 1) throw std::invalid_argument("radius must be >= 1");
    if (n < 1 || p < 1) throw std::invalid_argument("n and p must be >= 1");
    const std::int64_t s = checked_mul(n, ipow(r, p));
    CubicPolyominoVerdict verdict{s < ipow(r + 1, p), std::nullopt, RadiusToken(Exponent::finite(p), s)};

    std::int64_t cube = 1;
    bool small = true;
    for (int i = 0; i < n && small; ++i) {
        if (cube > enumerate_limit / (2 * r + 1)) small = false;
        cube *= 2 * r + 1;
    }
    if (small) {
        const auto lp = enumerate_ball(n, verdict.lp_radius);
        const auto inf = enumerate_ball(n, RadiusToken(Exponent::infinity(), r));
        verdict.sets_equal = lp.points() == inf.points();
    }
    return verdict;
}

}  // namespace lptile
