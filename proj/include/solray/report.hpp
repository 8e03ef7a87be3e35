#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "solray/busolver.hpp"
#include "solray/macaulay.hpp"
#include "solray/realray.hpp"
#include "solray/uresultant.hpp"

namespace solray {

inline constexpr const char* kToolVersion = "0.1.0";

using Json = nlohmann::ordered_json;

inline Json json_rational(const Rational& q) { return q.get_str(); }

inline Json json_complex(const Complex& c) { return Json::array({c.real(), c.imag()}); }

inline Json json_complex_vec(const std::vector<Complex>& v) {
    Json a = Json::array();
    for (const auto& c : v) a.push_back(json_complex(c));
    return a;
}

inline Json json_ratpoly(const RatPoly& p) {
    Json a = Json::array();
    for (const auto& c : p) a.push_back(json_rational(c));
    return a;
}

inline Json to_json(const ResultantValue& r) {
    return Json{{"value", json_rational(r.value)},
                {"method", r.method == ResultantMethod::DeterminantQuotient
                               ? "determinant_quotient"
                               : "gcp_perturbation"},
                {"degenerate_retries", r.degenerate_retries}};
}

inline Json to_json(const SolutionRay& ray) {
    return Json{{"coords", json_complex_vec(ray.coords)},
                {"multiplicity", ray.multiplicity},
                {"is_real", ray.is_real},
                {"residuals", ray.residuals},
                {"cluster_radius", ray.cluster_radius}};
}

inline Json to_json(const BezoutReport& b) {
    return Json{{"degree_product", b.degree_product.get_str()},
                {"multiplicity_sum", b.multiplicity_sum.get_str()},
                {"consistent", b.consistent}};
}

inline Json to_json(const URepresentation& u) {
    Json specs = Json::array();
    for (const auto& [dir, poly] : u.specializations) {
        Json d = Json::array();
        for (const auto& q : dir) d.push_back(json_rational(q));
        specs.push_back(Json{{"direction", d}, {"coefficients", json_ratpoly(poly)}});
    }
    return Json{{"degree_D", u.degree_D.get_str()},
                {"specializations", specs},
                {"seed", u.seed}};
}

inline Json to_json(const SolveResult& r) {
    Json rays = Json::array();
    for (const auto& ray : r.rays) rays.push_back(to_json(ray));
    return Json{{"rays", rays},
                {"bezout", to_json(r.bezout)},
                {"u_representation", to_json(r.urep)}};
}

inline Json to_json(const PerturbationTrail& t) {
    Json steps = Json::array();
    for (const auto& s : t.steps) {
        Json deltas = Json::array();
        for (const auto& [form, mono, delta] : s.deltas) {
            Json e = Json::array();
            for (unsigned v : mono.exponents) e.push_back(v);
            deltas.push_back(Json{{"form", form},
                                  {"monomial", e},
                                  {"delta", json_rational(delta)}});
        }
        Json step{{"epsilon", json_rational(s.epsilon)},
                  {"deltas", deltas},
                  {"at_infinity_resultant_nonzero", s.at_infinity_resultant_nonzero}};
        if (s.real_ray) step["real_ray"] = *s.real_ray;
        steps.push_back(step);
    }
    return Json{{"steps", steps},
                {"final_ray", t.final_ray},
                {"final_residual", t.final_residual},
                {"chart_used", t.chart_used}};
}

inline Json to_json(const BUResult& r) {
    Json cert{{"residuals", r.certificate.residuals},
              {"bezout_number", r.certificate.bezout_number.get_str()},
              {"perturbation_trail", to_json(r.certificate.trail)}};
    Json out{{"point", r.point},
             {"antipode", r.antipode},
             {"values", r.values},
             {"degenerate_map", r.degenerate_map},
             {"certificate", cert}};
    if (!r.coincidence_gaps.empty()) out["coincidence_gaps"] = r.coincidence_gaps;
    if (r.epsilon_used != 0.0) out["epsilon_used"] = r.epsilon_used;
    return out;
}

inline Json to_json(const FitReport& r) {
    return Json{{"max_deviation", r.max_deviation},
                {"condition", r.condition},
                {"degree_cap_used", r.degree_cap_used},
                {"degenerate_map", r.degenerate_map}};
}

inline Json to_json(const GuardReport& r) {
    return Json{{"delta_hat", r.delta_hat},
                {"epsilon", r.epsilon},
                {"bounded_away", r.bounded_away},
                {"samples_used", r.samples_used}};
}

/// Deterministic structured run record: same inputs + seed + version give a
/// byte-identical serialization.
struct RunReport {
    std::string command;
    Json inputs = Json::object();
    Json outputs = Json::object();
    std::uint64_t seed = 0;

    Json to_json() const {
        return Json{{"tool", "solray"},
                    {"version", kToolVersion},
                    {"command", command},
                    {"seed", seed},
                    {"inputs", inputs},
                    {"outputs", outputs}};
    }

    std::string dump() const { return to_json().dump(2) + "\n"; }
};

}  // namespace solray
