#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "solray/config.hpp"
#include "solray/macaulay.hpp"
#include "solray/uresultant.hpp"

namespace solray {

/// Projective realness of a canonical representative: since the canonical
/// scaling already divides out one complex phase, the ray is real exactly
/// when every imaginary part is small.
inline bool classify_real(const SolutionRay& ray, double tol) {
    double max_im = 0.0;
    for (const auto& c : ray.coords) max_im = std::max(max_im, std::abs(c.imag()));
    return max_im <= tol;
}

struct PairingReport {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::vector<std::size_t> real_rays;
};

/// Matches every non-real ray with its complex conjugate and checks equal
/// multiplicities. An unmatched non-real ray or a multiplicity mismatch
/// signals solver corruption and is a hard error.
inline PairingReport conjugate_pairing(const std::vector<SolutionRay>& rays,
                                       double tol) {
    PairingReport report;
    std::vector<bool> used(rays.size(), false);
    for (std::size_t i = 0; i < rays.size(); ++i) {
        if (used[i]) continue;
        if (classify_real(rays[i], tol)) {
            report.real_rays.push_back(i);
            used[i] = true;
            continue;
        }
        std::size_t partner = rays.size();
        for (std::size_t j = 0; j < rays.size(); ++j) {
            if (j == i || used[j]) continue;
            double dist = 0.0;
            for (std::size_t k = 0; k < rays[i].coords.size(); ++k)
                dist = std::max(dist,
                                std::abs(std::conj(rays[i].coords[k]) - rays[j].coords[k]));
            if (dist <= tol) { partner = j; break; }
        }
        if (partner == rays.size())
            throw std::logic_error("conjugate_pairing: unmatched non-real ray");
        if (rays[i].multiplicity != rays[partner].multiplicity)
            throw std::logic_error("conjugate_pairing: multiplicity mismatch in pair");
        used[i] = used[partner] = true;
        report.pairs.emplace_back(i, partner);
    }
    return report;
}

/// One step of the genericity loop, serialized for audit.
struct PerturbationStep {
    Rational epsilon;
    // (form index, monomial, delta) for each nudged coefficient
    std::vector<std::tuple<std::size_t, Monomial, Rational>> deltas;
    bool at_infinity_resultant_nonzero = false;
    std::optional<std::vector<double>> real_ray;
};

struct PerturbationTrail {
    std::vector<PerturbationStep> steps;
    std::vector<double> final_ray;
    double final_residual = 0.0;
    std::size_t chart_used = 0;
};

struct GenericityCertificate {
    HomSystem system;
    ResultantValue infinity_resultant;
    std::vector<std::tuple<std::size_t, Monomial, Rational>> deltas;
};

/// Nudges the existing coefficients of the system by seeded random rationals
/// of magnitude <= epsilon until the at-infinity resultant certifies
/// genericity. The certificate (exact nonvanishing) stands in for the
/// classical transcendental generic coefficient.
inline GenericityCertificate perturb_to_generic(const HomSystem& sys,
                                                const Rational& epsilon,
                                                const SolverConfig& cfg) {
    sys.validate();
    if (epsilon <= 0)
        throw std::invalid_argument("perturb_to_generic: epsilon must be positive");

    // zero-delta fast path
    try {
        InfinityCheck inf = at_infinity_check(sys, cfg.chart_variable, cfg.matrix_size_cap);
        if (!inf.has_infinite_solutions)
            return {sys, inf.resultant, {}};
    } catch (const DegenerateError&) {
        // a form divisible by the infinity variable; fall through and perturb
    }

    std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_int_distribution<int> num_dist(-16, 16);
    for (int attempt = 0; attempt <= cfg.max_retries; ++attempt) {
        GenericityCertificate cert;
        cert.system = sys;
        for (std::size_t j = 0; j < sys.forms.size(); ++j) {
            // nudge every coefficient of the form's degree, present or not,
            // so shared factors like x1^2 | F can actually break up
            Poly perturbed(sys.forms[j].nvars());
            for (const Monomial& m : monomials_of_degree(sys.forms[j].nvars(),
                                                         sys.degrees[j])) {
                Rational delta = epsilon * num_dist(rng) / 16;
                Rational c = sys.forms[j].coefficient(m);
                perturbed.add_term(m, c + delta);
                if (delta != 0) cert.deltas.emplace_back(j, m, delta);
            }
            if (perturbed.is_zero() ||
                perturbed.total_degree() != static_cast<int>(sys.degrees[j]))
                continue;  // perturbation cancelled the form; redraw
            cert.system.forms[j] = std::move(perturbed);
        }
        try {
            InfinityCheck inf =
                at_infinity_check(cert.system, cfg.chart_variable, cfg.matrix_size_cap);
            if (!inf.has_infinite_solutions) {
                cert.infinity_resultant = inf.resultant;
                return cert;
            }
        } catch (const DegenerateError&) {
        }
    }
    throw DegenerateError(
        "perturb_to_generic: could not certify genericity after retries");
}

namespace detail {

inline std::vector<double> normalize_real_ray(const SolutionRay& ray) {
    std::vector<double> b(ray.coords.size());
    double norm = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) {
        b[i] = ray.coords[i].real();
        norm += b[i] * b[i];
    }
    norm = std::sqrt(norm);
    for (auto& v : b) v /= norm;
    // deterministic representative: first nonzero coordinate positive
    for (double v : b) {
        if (v == 0.0) continue;
        if (v < 0.0)
            for (auto& w : b) w = -w;
        break;
    }
    return b;
}

// Newton-polishes a real ray candidate against the (possibly non-generic)
// target system; polish_ray only keeps improvements, so this is safe even at
// singular rays. Real input stays real under Newton.
inline std::vector<double> polish_real_ray(const HomSystem& sys,
                                           const std::vector<double>& b) {
    std::size_t axis = 0;
    for (std::size_t i = 1; i < b.size(); ++i)
        if (std::abs(b[i]) > std::abs(b[axis])) axis = i;
    std::vector<Complex> z(b.begin(), b.end());
    polish_ray(sys, axis, z);
    SolutionRay ray;
    ray.coords = std::move(z);
    return normalize_real_ray(ray);
}

inline double max_residual(const HomSystem& sys, const std::vector<double>& b) {
    std::vector<Complex> pt(b.begin(), b.end());
    double r = 0.0;
    for (const Poly& f : sys.forms) r = std::max(r, std::abs(f.evaluate(pt)));
    return r;
}

inline double sphere_distance(const std::vector<double>& a,
                              const std::vector<double>& b) {
    // distance between rays: min over the antipodal pair
    double d1 = 0.0, d2 = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d1 += (a[i] - b[i]) * (a[i] - b[i]);
        d2 += (a[i] + b[i]) * (a[i] + b[i]);
    }
    return std::sqrt(std::min(d1, d2));
}

// solve in the first chart whose at-infinity check passes; returns the real
// rays (unit representatives) sorted deterministically
inline std::optional<std::pair<std::vector<std::vector<double>>, std::size_t>>
solve_real_rays(const HomSystem& sys, const SolverConfig& cfg) {
    std::vector<std::size_t> charts;
    charts.push_back(cfg.chart_variable);
    for (std::size_t v = 0; v < sys.nvars(); ++v)
        if (v != cfg.chart_variable) charts.push_back(v);
    for (std::size_t chart : charts) {
        SolverConfig local = cfg;
        local.chart_variable = chart;
        try {
            SolveResult res = solve_rays(sys, local);
            std::vector<std::vector<double>> reals;
            for (const auto& ray : res.rays)
                if (classify_real(ray, cfg.cluster_tol))
                    reals.push_back(normalize_real_ray(ray));
            std::sort(reals.begin(), reals.end());
            if (!reals.empty()) return std::make_pair(reals, chart);
        } catch (const DegenerateError&) {
            continue;
        }
    }
    return std::nullopt;
}

}  // namespace detail

/// Real solution ray of an odd-degree system: the Bezout number is odd and
/// non-real rays pair with conjugates, so a real ray always exists for
/// accepted solves. Non-generic input goes through the perturbation loop
/// with halving epsilons until consecutive real rays stabilize. The returned
/// vector b has unit norm; -b is an equally valid answer.
inline std::pair<std::vector<double>, PerturbationTrail> find_real_ray_odd(
    const HomSystem& sys, const SolverConfig& cfg) {
    sys.validate();
    for (unsigned d : sys.degrees)
        if (d % 2 == 0)
            throw std::invalid_argument("find_real_ray_odd: degree " +
                                        std::to_string(d) + " is even");

    PerturbationTrail trail;

    auto finish = [&](const std::vector<double>& b) {
        trail.final_ray = b;
        std::vector<Complex> pt(b.begin(), b.end());
        double res = 0.0;
        for (const Poly& f : sys.forms)
            res = std::max(res, std::abs(f.evaluate(pt)));
        trail.final_residual = res;
        return std::make_pair(b, trail);
    };

    if (auto direct = detail::solve_real_rays(sys, cfg)) {
        trail.chart_used = direct->second;
        return finish(direct->first.front());
    }

    // perturbation loop: epsilon_k = epsilon_0 * 2^-k
    Rational epsilon(1, 64);
    std::optional<std::vector<double>> previous;
    for (int k = 0; k < cfg.max_refine_steps; ++k, epsilon /= 2) {
        SolverConfig step_cfg = cfg;
        step_cfg.seed = cfg.seed + static_cast<std::uint64_t>(k) + 1;
        PerturbationStep step;
        step.epsilon = epsilon;
        try {
            GenericityCertificate cert = perturb_to_generic(sys, epsilon, step_cfg);
            step.deltas = cert.deltas;
            step.at_infinity_resultant_nonzero = (cert.infinity_resultant.value != 0);
            auto solved = detail::solve_real_rays(cert.system, step_cfg);
            if (solved) {
                // accumulation point selection: stay near the last accepted ray
                std::vector<double> b = solved->first.front();
                if (previous) {
                    double best = detail::sphere_distance(*previous, b);
                    for (const auto& cand : solved->first) {
                        double d = detail::sphere_distance(*previous, cand);
                        if (d < best) { best = d; b = cand; }
                    }
                }
                step.real_ray = b;
                trail.steps.push_back(step);
                trail.chart_used = solved->second;
                // near a simple ray of the original system one Newton pass
                // lands on it; accept as soon as the true residual is met
                std::vector<double> pb = detail::polish_real_ray(sys, b);
                if (detail::max_residual(sys, pb) <= cfg.residual_bound)
                    return finish(pb);
                if (previous &&
                    detail::sphere_distance(*previous, b) <= cfg.refine_tol)
                    return finish(detail::polish_real_ray(sys, b));
                previous = b;
                continue;
            }
        } catch (const DegenerateError&) {
        }
        trail.steps.push_back(step);
    }
    throw DegenerateError(
        "find_real_ray_odd: perturbation loop exhausted without stabilization");
}

}  // namespace solray
