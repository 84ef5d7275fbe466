#include "lptile/json_io.hpp"

#include <stdexcept>

namespace lptile {

Json to_json(Exponent exponent) {
    if (exponent.is_infinite()) return "inf";
    return exponent.value();
}

Exponent exponent_from_json(const Json& value) {
    if (value.is_string()) return Exponent::parse(value.get<std::string>());
    if (value.is_number_integer()) return Exponent::finite(value.get<int>());
    throw std::invalid_argument("exponent must be an integer or \"inf\"");
}

Json to_json(const DiscreteBall& ball) {
    return Json{{"n", ball.dimension()},
                {"p", to_json(ball.radius().exponent())},
                {"s", ball.radius().power_value()},
                {"size", ball.cardinality()},
                {"points", ball.points()}};
}

Json to_json(const DifferenceSet& diff) {
    return Json{{"n", diff.dimension()},
                {"p", to_json(diff.source_radius().exponent())},
                {"s", diff.source_radius().power_value()},
                {"kind", "difference"},
                {"size", diff.points().size()},
                {"points", diff.points()}};
}

Json to_json(const AchievabilityTable& table) {
    Json out{{"n", table.dimension},
             {"p", to_json(table.exponent)},
             {"limit", table.limit},
             {"achievable", table.achievable}};
    out["q"] = table.modulus ? Json(*table.modulus) : Json(nullptr);
    return out;
}

Json to_json(const IntegerLattice& lattice) {
    return Json{{"n", lattice.dimension()}, {"basis", lattice.basis()}, {"determinant", lattice.determinant()}};
}

IntegerLattice lattice_from_json(const Json& value) {
    const auto basis = value.at("basis").get<IntMatrix>();
    const int n = value.contains("n") ? value.at("n").get<int>() : static_cast<int>(basis.size());
    return IntegerLattice::from_generators(basis, n);
}

Json to_json(const PerfectCertificate& cert) {
    Json out{{"status", cert.perfect ? "PERFECT" : "NOT_PERFECT"},
             {"failed_condition", to_string(cert.failed_condition)},
             {"determinant", cert.determinant},
             {"ball_size", cert.ball_size}};
    out["witness_vector"] = cert.witness_vector ? Json(*cert.witness_vector) : Json(nullptr);
    return out;
}

Json to_json(const LinearCodeZq& code) {
    return Json{{"q", code.modulus()}, {"n", code.dimension()}, {"generators", code.generators()}};
}

LinearCodeZq code_from_json(const Json& value) {
    return LinearCodeZq(value.at("q").get<std::int64_t>(), value.at("n").get<int>(),
                        value.at("generators").get<IntMatrix>());
}

Json to_json(const AbelianGroupSpec& group) { return Json(group.factors); }

Json to_json(const GroupHomomorphism& phi) {
    return Json{{"factors", phi.group.factors}, {"images", phi.images}};
}

Json to_json(const TokenOutcome& outcome, int n, Exponent exponent) {
    Json groups = Json::array();
    for (const auto& g : outcome.groups)
        groups.push_back(Json{{"factors", g.group.factors}, {"status", to_string(g.status)}, {"nodes", g.nodes}});
    Json out{{"n", n},
             {"p", to_json(exponent)},
             {"s", outcome.s},
             {"m", outcome.ball_size},
             {"status", to_string(outcome.status)},
             {"groups", groups},
             {"nodes", outcome.nodes},
             {"kernel_verified", outcome.kernel_verified}};
    out["homomorphism"] = outcome.homomorphism ? to_json(*outcome.homomorphism) : Json(nullptr);
    out["kernel_basis"] = outcome.kernel ? Json(outcome.kernel->basis()) : Json(nullptr);
    if (outcome.duplicate_of) out["duplicate_of"] = *outcome.duplicate_of;
    return out;
}

Json to_json(const TilingResult& result, const DiscreteBall& footprint, std::int64_t extent) {
    Json out{{"n", footprint.dimension()},
             {"p", to_json(footprint.radius().exponent())},
             {"s", footprint.radius().power_value()},
             {"extent", extent},
             {"status", to_string(result.status)},
             {"nodes", result.nodes},
             {"footprint", footprint.points()},
             {"placements", result.centers}};
    const auto r = footprint.radius().integer_radius();
    out["r"] = r ? Json(*r) : Json(nullptr);
    return out;
}

std::string dump_line(const Json& value) { return value.dump(); }

}  // namespace lptile
