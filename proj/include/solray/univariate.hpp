#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "solray/poly.hpp"
#include "solray/ratpoly.hpp"

namespace solray {

struct RootCluster {
    Complex value;
    int multiplicity = 1;
    double radius = 0.0;  // spread of the merged cluster
};

namespace detail {

inline std::vector<Complex> companion_roots(const std::vector<Complex>& monic) {
    // monic: c_0 + c_1 t + ... + t^d, coefficient of t^d omitted
    std::size_t d = monic.size();
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(d, d);
    for (std::size_t i = 1; i < d; ++i) c(i, i - 1) = 1.0;
    for (std::size_t i = 0; i < d; ++i) c(i, d - 1) = -monic[i];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(c, false);
    std::vector<Complex> roots(d);
    for (std::size_t i = 0; i < d; ++i) roots[i] = es.eigenvalues()(i);
    return roots;
}

inline Complex horner(const std::vector<Complex>& coeffs, Complex z) {
    Complex v = 0.0;
    for (std::size_t i = coeffs.size(); i-- > 0;) v = v * z + coeffs[i];
    return v;
}

inline void newton_polish(const std::vector<Complex>& coeffs, Complex& z) {
    std::vector<Complex> dcoeffs;
    for (std::size_t i = 1; i < coeffs.size(); ++i)
        dcoeffs.push_back(coeffs[i] * static_cast<double>(i));
    Complex best = z;
    double best_abs = std::abs(horner(coeffs, z));
    for (int it = 0; it < 32; ++it) {
        Complex d = horner(dcoeffs, z);
        if (std::abs(d) < 1e-300) break;
        z -= horner(coeffs, z) / d;
        double a = std::abs(horner(coeffs, z));
        if (a < best_abs) { best_abs = a; best = z; }
        if (a == 0.0) break;
    }
    z = best;
}

inline std::vector<RootCluster> cluster_merge(std::vector<RootCluster> roots,
                                              double tol) {
    double scale = 1.0;
    for (const auto& r : roots) scale = std::max(scale, std::abs(r.value));
    std::vector<RootCluster> out;
    std::sort(roots.begin(), roots.end(), [](const RootCluster& a, const RootCluster& b) {
        if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
        return a.value.imag() < b.value.imag();
    });
    for (const auto& r : roots) {
        bool merged = false;
        for (auto& c : out) {
            if (std::abs(c.value - r.value) <= tol * scale) {
                double w1 = c.multiplicity, w2 = r.multiplicity;
                Complex center = (c.value * w1 + r.value * w2) / (w1 + w2);
                c.radius = std::max({c.radius, std::abs(c.value - center),
                                     std::abs(r.value - center)});
                c.value = center;
                c.multiplicity += r.multiplicity;
                merged = true;
                break;
            }
        }
        if (!merged) out.push_back(r);
    }
    return out;
}

}  // namespace detail

/// All complex roots of a nonzero rational polynomial with multiplicities.
/// Multiplicity structure is taken exactly from Yun square-free
/// decomposition; the roots of each (square-free) factor come from the
/// companion matrix and are Newton-polished. Nearby roots are finally merged
/// by relative cluster radius `cluster_tol`.
inline std::vector<RootCluster> solve_univariate(const RatPoly& p,
                                                 double cluster_tol = 1e-6) {
    if (rp_is_zero(p)) throw std::invalid_argument("solve_univariate: zero polynomial");
    std::vector<RootCluster> roots;
    auto factors = rp_squarefree(p);
    for (std::size_t i = 0; i < factors.size(); ++i) {
        int deg = rp_degree(factors[i]);
        if (deg < 1) continue;
        // factors are monic; drop the leading 1
        std::vector<Complex> coeffs(factors[i].size());
        for (std::size_t k = 0; k < factors[i].size(); ++k)
            coeffs[k] = factors[i][k].get_d();
        std::vector<Complex> tail(coeffs.begin(), coeffs.end() - 1);
        for (Complex z : detail::companion_roots(tail)) {
            detail::newton_polish(coeffs, z);
            roots.push_back({z, static_cast<int>(i + 1), 0.0});
        }
    }
    return detail::cluster_merge(std::move(roots), cluster_tol);
}

/// Root extraction for complex coefficient vectors (no exact multiplicity
/// structure available; multiplicities come from clustering alone).
inline std::vector<RootCluster> solve_univariate(const std::vector<Complex>& coeffs_in,
                                                 double cluster_tol = 1e-6) {
    std::vector<Complex> coeffs = coeffs_in;
    while (!coeffs.empty() && std::abs(coeffs.back()) == 0.0) coeffs.pop_back();
    if (coeffs.empty()) throw std::invalid_argument("solve_univariate: zero polynomial");
    if (coeffs.size() == 1) return {};
    Complex lead = coeffs.back();
    std::vector<Complex> monic(coeffs.begin(), coeffs.end() - 1);
    for (auto& c : monic) c /= lead;
    std::vector<Complex> full = monic;
    full.push_back(1.0);
    std::vector<RootCluster> roots;
    for (Complex z : detail::companion_roots(monic)) {
        detail::newton_polish(full, z);
        roots.push_back({z, 1, 0.0});
    }
    return detail::cluster_merge(std::move(roots), cluster_tol);
}

}  // namespace solray
