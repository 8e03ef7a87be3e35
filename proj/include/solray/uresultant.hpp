#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "solray/config.hpp"
#include "solray/macaulay.hpp"
#include "solray/parity.hpp"
#include "solray/poly.hpp"
#include "solray/ratpoly.hpp"
#include "solray/univariate.hpp"

namespace solray {

/// Projective solution with a canonical representative: the coordinate of
/// largest modulus equals 1 (ties broken by lowest index).
struct SolutionRay {
    std::vector<Complex> coords;
    int multiplicity = 1;
    bool is_real = false;
    std::vector<double> residuals;
    double cluster_radius = 0.0;
};

/// Record of the line specializations used to reconstruct the rays.
struct URepresentation {
    Integer degree_D;
    std::vector<std::pair<std::vector<Rational>, RatPoly>> specializations;
    std::uint64_t seed = 0;
};

struct BezoutReport {
    Integer degree_product;
    Integer multiplicity_sum;
    bool consistent = false;
};

inline BezoutReport bezout_check(const std::vector<SolutionRay>& rays,
                                 const std::vector<unsigned>& degrees) {
    BezoutReport r;
    r.degree_product = 1;
    for (unsigned d : degrees) r.degree_product *= d;
    r.multiplicity_sum = 0;
    for (const auto& ray : rays) r.multiplicity_sum += ray.multiplicity;
    r.consistent = (r.degree_product == r.multiplicity_sum);
    return r;
}

/// Resultant of (F_1, ..., F_n, t*x_axis + sum_i r_i x_i) as an exact
/// univariate polynomial in t, obtained by evaluating at D+2 rational sample
/// values and interpolating. Its roots are t_p = -(sum_i r_i xi_i) / xi_axis
/// over the solution rays visible in the chart x_axis != 0.
inline RatPoly u_specialized_poly(const HomSystem& sys,
                                  const std::vector<Rational>& r,
                                  std::size_t axis,
                                  std::size_t size_cap = kDefaultMatrixCap) {
    sys.validate();
    std::size_t n = sys.forms.size();
    std::size_t nv = sys.nvars();
    if (nv != n + 1)
        throw std::invalid_argument("u_specialized_poly: need n forms in n+1 variables");
    if (r.size() != nv)
        throw std::invalid_argument("u_specialized_poly: direction length != nvars");
    if (axis >= nv)
        throw std::invalid_argument("u_specialized_poly: axis out of range");

    long degree_D = 1;
    for (unsigned d : sys.degrees) degree_D *= d;

    std::vector<unsigned> degrees = sys.degrees;
    degrees.push_back(1);

    std::vector<Rational> xs, ys;
    for (long k = 0; k <= degree_D + 1; ++k) {
        Rational t(k);
        Poly linear(nv);
        for (std::size_t i = 0; i < nv; ++i) {
            Rational u = r[i];
            if (i == axis) u += t;
            if (u != 0) {
                Monomial m(nv);
                m.exponents[i] = 1;
                linear.add_term(m, u);
            }
        }
        if (linear.is_zero())
            throw DegenerateError("u_specialized_poly: zero linear form sample");
        std::vector<Poly> forms = sys.forms;
        forms.push_back(std::move(linear));
        xs.push_back(t);
        ys.push_back(macaulay_resultant(forms, degrees, size_cap).value);
    }
    RatPoly p = rp_interpolate(xs, ys);
    if (rp_degree(p) > degree_D)
        throw std::logic_error(
            "u_specialized_poly: interpolation inconsistency (degree overflow)");
    return p;
}

struct SolveResult {
    std::vector<SolutionRay> rays;
    URepresentation urep;
    BezoutReport bezout;
};

namespace detail {

// Nearest-neighbor pairing of base roots against shifted roots. Fails when a
// match is ambiguous (second-nearest within 2x of nearest), reused, or pairs
// roots of different multiplicity.
inline std::optional<std::vector<Complex>> match_roots(
    const std::vector<RootCluster>& base, const std::vector<RootCluster>& shifted) {
    if (base.size() != shifted.size()) return std::nullopt;
    std::vector<bool> used(shifted.size(), false);
    std::vector<Complex> matched(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        double second = best;
        std::size_t arg = shifted.size();
        for (std::size_t j = 0; j < shifted.size(); ++j) {
            double d = std::abs(base[i].value - shifted[j].value);
            if (d < best) { second = best; best = d; arg = j; }
            else if (d < second) second = d;
        }
        if (arg == shifted.size() || used[arg]) return std::nullopt;
        if (second < 2.0 * best) return std::nullopt;
        if (shifted[arg].multiplicity != base[i].multiplicity) return std::nullopt;
        used[arg] = true;
        matched[i] = shifted[arg].value;
    }
    return matched;
}

// One damped Newton pass on the affine chart (x_axis = 1); keeps the result
// only if the max residual improves. Simple rays converge quadratically.
inline void polish_ray(const HomSystem& sys, std::size_t axis,
                       std::vector<Complex>& coords) {
    std::size_t n = sys.forms.size();
    std::size_t nv = sys.nvars();
    if (std::abs(coords[axis]) < 1e-12) return;
    std::vector<Complex> z = coords;
    for (auto& c : z) c /= coords[axis];

    auto max_residual = [&](const std::vector<Complex>& pt) {
        double m = 0.0;
        for (const Poly& f : sys.forms) m = std::max(m, std::abs(f.evaluate(pt)));
        return m;
    };
    double best = max_residual(z);
    std::vector<Complex> best_z = z;

    std::vector<std::size_t> free_vars;
    for (std::size_t i = 0; i < nv; ++i)
        if (i != axis) free_vars.push_back(i);

    for (int it = 0; it < 20; ++it) {
        // Jacobian and value
        std::vector<std::vector<Complex>> jac(n, std::vector<Complex>(n));
        std::vector<Complex> val(n);
        for (std::size_t i = 0; i < n; ++i) {
            val[i] = sys.forms[i].evaluate(z);
            for (std::size_t j = 0; j < n; ++j)
                jac[i][j] = sys.forms[i].derivative(free_vars[j]).evaluate(z);
        }
        // Gaussian elimination with partial pivoting
        std::vector<Complex> step(n);
        bool singular = false;
        for (std::size_t k = 0; k < n && !singular; ++k) {
            std::size_t piv = k;
            for (std::size_t i = k + 1; i < n; ++i)
                if (std::abs(jac[i][k]) > std::abs(jac[piv][k])) piv = i;
            if (std::abs(jac[piv][k]) < 1e-300) { singular = true; break; }
            std::swap(jac[k], jac[piv]);
            std::swap(val[k], val[piv]);
            for (std::size_t i = k + 1; i < n; ++i) {
                Complex f = jac[i][k] / jac[k][k];
                for (std::size_t j = k; j < n; ++j) jac[i][j] -= f * jac[k][j];
                val[i] -= f * val[k];
            }
        }
        if (singular) break;
        for (std::size_t k = n; k-- > 0;) {
            Complex s = val[k];
            for (std::size_t j = k + 1; j < n; ++j) s -= jac[k][j] * step[j];
            step[k] = s / jac[k][k];
        }
        for (std::size_t j = 0; j < n; ++j) z[free_vars[j]] -= step[j];
        double cur = max_residual(z);
        if (cur < best) { best = cur; best_z = z; }
        else break;
    }
    coords = best_z;
}

inline void canonicalize_ray(std::vector<Complex>& coords) {
    std::size_t arg = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        double a = std::abs(coords[i]);
        if (a > best + 1e-15) { best = a; arg = i; }
    }
    Complex pivot = coords[arg];
    for (auto& c : coords) c /= pivot;
    coords[arg] = 1.0;  // exact by construction
}

}  // namespace detail

/// Extracts all solution rays of a square-at-infinity system with
/// multiplicities via seeded line specializations of the u-resultant.
/// Coordinates are recovered by root-shift differencing with two shift
/// magnitudes cross-checked, then Newton-polished. The Bezout identity
/// sum(multiplicities) = prod(degrees) is enforced.
inline SolveResult solve_rays(const HomSystem& sys, const SolverConfig& cfg) {
    sys.validate();
    std::size_t n = sys.forms.size();
    std::size_t nv = sys.nvars();
    std::size_t chart = cfg.chart_variable;
    if (nv != n + 1)
        throw std::invalid_argument("solve_rays: need n forms in n+1 variables");
    if (chart >= nv) throw std::invalid_argument("solve_rays: chart variable out of range");

    InfinityCheck inf = at_infinity_check(sys, chart, cfg.matrix_size_cap);
    if (inf.has_infinite_solutions)
        throw DegenerateError("solve_rays: system has solutions at infinity in chart x" +
                              std::to_string(chart));

    long degree_D = 1;
    for (unsigned d : sys.degrees) degree_D *= d;

    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<int> coeff_dist(-9, 9);

    std::string last_failure = "no attempt made";
    for (int attempt = 0; attempt <= cfg.max_retries; ++attempt) {
        std::vector<Rational> r(nv);
        for (auto& c : r) c = coeff_dist(rng);

        SolveResult result;
        result.urep.degree_D = degree_D;
        result.urep.seed = cfg.seed;

        RatPoly p0;
        try {
            p0 = u_specialized_poly(sys, r, chart, cfg.matrix_size_cap);
        } catch (const DegenerateError&) {
            last_failure = "degenerate specialization";
            continue;
        }
        if (rp_degree(p0) != degree_D) {
            last_failure = "degree deficiency in specialized polynomial";
            continue;
        }
        result.urep.specializations.emplace_back(r, p0);

        auto roots0 = solve_univariate(p0, cfg.cluster_tol);
        long mult_sum = 0;
        for (const auto& rc : roots0) mult_sum += rc.multiplicity;
        if (mult_sum != degree_D) {
            last_failure = "root multiplicities do not sum to the Bezout number";
            continue;
        }

        // minimum separation between distinct roots, for the shift size
        double gap = 1.0;
        for (std::size_t i = 0; i < roots0.size(); ++i)
            for (std::size_t j = i + 1; j < roots0.size(); ++j)
                gap = std::min(gap, std::abs(roots0[i].value - roots0[j].value));

        // ratios[j][p] = xi_j / xi_chart for ray p
        std::vector<std::vector<Complex>> ratios(nv,
            std::vector<Complex>(roots0.size()));
        for (std::size_t p = 0; p < roots0.size(); ++p) ratios[chart][p] = 1.0;

        bool ok = true;
        for (std::size_t j = 0; j < nv && ok; ++j) {
            if (j == chart) continue;
            Rational delta(1, 8);
            while (delta.get_d() > gap / 8.0 && delta > Rational(1, 1 << 20))
                delta /= 2;
            bool coord_done = false;
            for (int shrink = 0; shrink < 6 && !coord_done; ++shrink, delta /= 4) {
                std::optional<std::vector<Complex>> m1, m2;
                RatPoly p1, p2;
                std::vector<Rational> r1 = r, r2 = r;
                r1[j] += delta;
                r2[j] += delta / 2;
                try {
                    p1 = u_specialized_poly(sys, r1, chart, cfg.matrix_size_cap);
                    p2 = u_specialized_poly(sys, r2, chart, cfg.matrix_size_cap);
                } catch (const DegenerateError&) {
                    continue;
                }
                if (rp_degree(p1) != degree_D || rp_degree(p2) != degree_D) continue;
                m1 = detail::match_roots(roots0, solve_univariate(p1, cfg.cluster_tol));
                m2 = detail::match_roots(roots0, solve_univariate(p2, cfg.cluster_tol));
                if (!m1 || !m2) continue;
                double d1 = delta.get_d(), d2 = d1 / 2;
                bool consistent = true;
                std::vector<Complex> coord(roots0.size());
                for (std::size_t p = 0; p < roots0.size(); ++p) {
                    Complex v1 = -((*m1)[p] - roots0[p].value) / d1;
                    Complex v2 = -((*m2)[p] - roots0[p].value) / d2;
                    double scale = std::max(1.0, std::max(std::abs(v1), std::abs(v2)));
                    if (std::abs(v1 - v2) > 1e-6 * scale) { consistent = false; break; }
                    coord[p] = v2;
                }
                if (!consistent) continue;
                ratios[j] = std::move(coord);
                result.urep.specializations.emplace_back(r1, p1);
                result.urep.specializations.emplace_back(r2, p2);
                coord_done = true;
            }
            if (!coord_done) {
                last_failure = "root-matching ambiguity while recovering coordinate x" +
                               std::to_string(j);
                ok = false;
            }
        }
        if (!ok) continue;

        for (std::size_t p = 0; p < roots0.size(); ++p) {
            SolutionRay ray;
            ray.coords.resize(nv);
            for (std::size_t j = 0; j < nv; ++j) ray.coords[j] = ratios[j][p];
            ray.multiplicity = roots0[p].multiplicity;
            ray.cluster_radius = roots0[p].radius;
            if (ray.multiplicity == 1) detail::polish_ray(sys, chart, ray.coords);
            detail::canonicalize_ray(ray.coords);
            double max_im = 0.0;
            for (const auto& c : ray.coords) max_im = std::max(max_im, std::abs(c.imag()));
            ray.is_real = max_im <= cfg.cluster_tol;
            for (const Poly& f : sys.forms)
                ray.residuals.push_back(std::abs(f.evaluate(ray.coords)));
            result.rays.push_back(std::move(ray));
        }

        std::sort(result.rays.begin(), result.rays.end(),
                  [](const SolutionRay& a, const SolutionRay& b) {
                      for (std::size_t i = 0; i < a.coords.size(); ++i) {
                          if (a.coords[i].real() != b.coords[i].real())
                              return a.coords[i].real() < b.coords[i].real();
                          if (a.coords[i].imag() != b.coords[i].imag())
                              return a.coords[i].imag() < b.coords[i].imag();
                      }
                      return false;
                  });

        result.bezout = bezout_check(result.rays, sys.degrees);
        if (!result.bezout.consistent)
            throw std::logic_error("solve_rays: Bezout identity violated");
        return result;
    }
    throw DegenerateError("solve_rays: retries exhausted (" + last_failure + ")");
}

}  // namespace solray
