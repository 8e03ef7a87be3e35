#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "solray/config.hpp"
#include "solray/parity.hpp"
#include "solray/realray.hpp"
#include "solray/uresultant.hpp"

namespace solray {

/// Evidence attached to a Borsuk-Ulam solve.
struct RayCertificate {
    std::vector<double> residuals;  // per built form, at the returned point
    Integer bezout_number;
    PerturbationTrail trail;
};

struct BUResult {
    std::vector<double> point;     // y on S^n
    std::vector<double> antipode;  // -y
    std::vector<double> values;    // |q_i(y)| on the original components
    double epsilon_used = 0.0;     // approximation runs only
    bool degenerate_map = false;   // all odd parts identically zero
    std::vector<double> coincidence_gaps;  // |g_i(y) - g_i(-y)|, coincidence runs
    RayCertificate certificate;
};

namespace detail {

inline std::vector<double> negated(const std::vector<double>& v) {
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = -v[i];
    return r;
}

inline BUResult degenerate_result(std::size_t dim) {
    BUResult out;
    out.point.assign(dim, 0.0);
    out.point[0] = 1.0;
    out.antipode = negated(out.point);
    out.degenerate_map = true;
    return out;
}

}  // namespace detail

/// Antipodal zero of an odd polynomial map on S^n:
/// build_odd_system -> find_real_ray_odd -> normalize. Both y and -y solve.
inline BUResult bu_zero(const OddMap& m, const SolverConfig& cfg) {
    m.validate();
    if (m.all_zero()) return detail::degenerate_result(m.n + 1);
    for (const Poly& q : m.components)
        if (q.is_zero())
            throw DegenerateError(
                "bu_zero: map mixes zero and nonzero components (positive-dimensional zero set)");

    HomSystem sys = build_odd_system(m);
    auto [b, trail] = find_real_ray_odd(sys, cfg);

    BUResult out;
    out.point = b;
    out.antipode = detail::negated(b);
    std::vector<Complex> pt(b.begin(), b.end());
    for (const Poly& q : m.components)
        out.values.push_back(std::abs(q.evaluate(pt)));
    for (const Poly& f : sys.forms)
        out.certificate.residuals.push_back(std::abs(f.evaluate(pt)));
    out.certificate.bezout_number = 1;
    for (unsigned d : sys.degrees) out.certificate.bezout_number *= d;
    out.certificate.trail = std::move(trail);
    return out;
}

/// Coincidence point g(y) = g(-y) for an arbitrary polynomial map: solve the
/// odd-symmetrized map, then verify the per-component gaps.
inline BUResult coincidence(const std::vector<Poly>& g, const SolverConfig& cfg) {
    if (g.empty()) throw std::invalid_argument("coincidence: empty map");
    std::size_t n = g.size();
    for (const Poly& gi : g)
        if (gi.nvars() != n + 1)
            throw std::invalid_argument("coincidence: components must have n+1 variables");

    OddMap odd;
    odd.n = n;
    for (const Poly& gi : g) odd.components.push_back(odd_symmetrize(gi));

    BUResult out;
    if (odd.all_zero()) {
        out = detail::degenerate_result(n + 1);
    } else {
        out = bu_zero(odd, cfg);
    }
    std::vector<Complex> y(out.point.begin(), out.point.end());
    std::vector<Complex> ny(out.antipode.begin(), out.antipode.end());
    for (const Poly& gi : g)
        out.coincidence_gaps.push_back(std::abs(gi.evaluate(y) - gi.evaluate(ny)));
    return out;
}

/// Sampled function values on the sphere, the input to the approximation
/// harness.
struct SampleSet {
    std::size_t n = 0;  // sphere dimension; points live in R^{n+1}
    unsigned degree_cap = 3;
    std::vector<std::vector<double>> points;
    std::vector<std::vector<double>> values;

    void validate() const {
        if (n < 1) throw std::invalid_argument("SampleSet: n must be >= 1");
        if (points.size() != values.size())
            throw std::invalid_argument("SampleSet: point/value count mismatch");
        for (const auto& p : points) {
            if (p.size() != n + 1)
                throw std::invalid_argument("SampleSet: point dimension != n+1");
            double norm = 0.0;
            for (double v : p) {
                if (!std::isfinite(v))
                    throw std::invalid_argument("SampleSet: non-finite point");
                norm += v * v;
            }
            if (std::abs(std::sqrt(norm) - 1.0) > 1e-12)
                throw std::invalid_argument("SampleSet: point not on the unit sphere");
        }
        for (const auto& v : values) {
            if (v.size() != n)
                throw std::invalid_argument("SampleSet: value dimension != n");
            for (double x : v)
                if (!std::isfinite(x))
                    throw std::invalid_argument("SampleSet: non-finite value");
        }
    }
};

/// Deterministic sphere sampling: Fibonacci spiral on S^2, seeded uniform
/// rejection sampling for the other dimensions.
inline std::vector<std::vector<double>> sphere_points(std::size_t n,
                                                      std::size_t count,
                                                      std::uint64_t seed = 0) {
    std::vector<std::vector<double>> pts;
    pts.reserve(count);
    if (n == 2) {
        const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
        for (std::size_t i = 0; i < count; ++i) {
            double z = 1.0 - 2.0 * (i + 0.5) / count;
            double r = std::sqrt(std::max(0.0, 1.0 - z * z));
            double phi = 2.0 * M_PI * (i / golden - std::floor(i / golden));
            pts.push_back({r * std::cos(phi), r * std::sin(phi), z});
        }
        return pts;
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    while (pts.size() < count) {
        std::vector<double> p(n + 1);
        double norm = 0.0;
        for (auto& v : p) { v = dist(rng); norm += v * v; }
        norm = std::sqrt(norm);
        if (norm < 1e-3 || norm > 1.0) continue;
        for (auto& v : p) v /= norm;
        pts.push_back(std::move(p));
    }
    return pts;
}

struct FitReport {
    double max_deviation = 0.0;
    double condition = 0.0;
    unsigned degree_cap_used = 0;
    bool degenerate_map = false;
};

/// Least-squares fit of each sampled component in the monomial basis up to
/// degree_cap (raised to the next odd number if needed), followed by
/// odd_symmetrize. Only the odd part of the sampled function survives; odd
/// targets lose nothing.
inline std::pair<OddMap, FitReport> fit_odd_poly(const SampleSet& s,
                                                 const SolverConfig& cfg) {
    (void)cfg;
    s.validate();
    unsigned cap = s.degree_cap;
    if (cap % 2 == 0) ++cap;
    std::size_t nv = s.n + 1;

    std::vector<Monomial> basis;
    for (unsigned d = 0; d <= cap; ++d)
        for (const Monomial& m : monomials_of_degree(nv, d)) basis.push_back(m);
    if (s.points.size() < basis.size())
        throw std::invalid_argument(
            "fit_odd_poly: underdetermined fit (" + std::to_string(s.points.size()) +
            " samples for a basis of " + std::to_string(basis.size()) + ")");

    Eigen::MatrixXd a(s.points.size(), basis.size());
    for (std::size_t t = 0; t < s.points.size(); ++t)
        for (std::size_t b = 0; b < basis.size(); ++b) {
            double prod = 1.0;
            for (std::size_t i = 0; i < nv; ++i)
                for (unsigned e = 0; e < basis[b].exponents[i]; ++e)
                    prod *= s.points[t][i];
            a(t, b) = prod;
        }

    // the monomial basis is rank-deficient on the sphere (x0^2+...+xm^2 = 1),
    // so solve with a truncated SVD and report the condition of the retained part
    Eigen::BDCSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(1e-10);
    double smax = svd.singularValues()(0);
    FitReport report;
    report.degree_cap_used = cap;
    if (svd.rank() < 1)
        throw DegenerateError("fit_odd_poly: ill-conditioned normal system (rank 0)");
    double smin = svd.singularValues()(svd.rank() - 1);
    report.condition = smax / smin;

    OddMap out;
    out.n = s.n;
    for (std::size_t comp = 0; comp < s.n; ++comp) {
        Eigen::VectorXd rhs(s.points.size());
        for (std::size_t t = 0; t < s.points.size(); ++t) rhs(t) = s.values[t][comp];
        Eigen::VectorXd c = svd.solve(rhs);
        Poly fit(nv);
        for (std::size_t b = 0; b < basis.size(); ++b) {
            if (c(b) == 0.0) continue;
            Rational coeff;
            mpq_set_d(coeff.get_mpq_t(), c(b));  // exact binary-to-rational
            fit.add_term(basis[b], coeff);
        }
        out.components.push_back(odd_symmetrize(fit));
    }

    for (std::size_t t = 0; t < s.points.size(); ++t) {
        std::vector<Complex> pt(s.points[t].begin(), s.points[t].end());
        for (std::size_t comp = 0; comp < s.n; ++comp) {
            double dev = std::abs(out.components[comp].evaluate(pt).real() -
                                  s.values[t][comp]);
            report.max_deviation = std::max(report.max_deviation, dev);
        }
    }
    report.degenerate_map = out.all_zero();
    return {out, report};
}

struct GuardReport {
    double delta_hat = 0.0;  // min over samples of max_i |q_i|
    double epsilon = 0.0;
    bool bounded_away = false;  // delta_hat > epsilon
    std::size_t samples_used = 0;
};

/// Diagnostic for the approximation argument: estimates how far the map is
/// bounded away from zero on the sphere. A map with a zero must report
/// delta_hat <= epsilon for dense enough sampling.
inline GuardReport delta_epsilon_guard(const std::vector<Poly>& components,
                                       double epsilon,
                                       const std::vector<std::vector<double>>& samples) {
    if (components.empty())
        throw std::invalid_argument("delta_epsilon_guard: empty map");
    GuardReport report;
    report.epsilon = epsilon;
    report.samples_used = samples.size();
    report.delta_hat = std::numeric_limits<double>::infinity();
    for (const auto& p : samples) {
        std::vector<Complex> pt(p.begin(), p.end());
        double m = 0.0;
        for (const Poly& q : components)
            m = std::max(m, std::abs(q.evaluate(pt)));
        report.delta_hat = std::min(report.delta_hat, m);
    }
    if (samples.empty()) report.delta_hat = 0.0;
    report.bounded_away = report.delta_hat > epsilon;
    return report;
}

}  // namespace solray
