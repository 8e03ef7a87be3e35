#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "solray/rational.hpp"

namespace solray {

/// Dense univariate polynomial over the rationals; coeffs[i] multiplies t^i.
using RatPoly = std::vector<Rational>;

inline void rp_trim(RatPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline int rp_degree(const RatPoly& p) {
    for (std::size_t i = p.size(); i-- > 0;)
        if (p[i] != 0) return static_cast<int>(i);
    return -1;
}

inline bool rp_is_zero(const RatPoly& p) { return rp_degree(p) < 0; }

inline Rational rp_eval(const RatPoly& p, const Rational& t) {
    Rational v = 0;
    for (std::size_t i = p.size(); i-- > 0;) v = v * t + p[i];
    return v;
}

inline RatPoly rp_derivative(const RatPoly& p) {
    RatPoly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
    rp_trim(d);
    return d;
}

inline RatPoly rp_sub(const RatPoly& a, const RatPoly& b) {
    RatPoly r = a;
    if (b.size() > r.size()) r.resize(b.size(), Rational(0));
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    rp_trim(r);
    return r;
}

inline RatPoly rp_monic(RatPoly p) {
    rp_trim(p);
    if (p.empty()) return p;
    Rational lead = p.back();
    for (auto& c : p) c /= lead;
    return p;
}

/// Long division; returns {quotient, remainder}.
inline std::pair<RatPoly, RatPoly> rp_divmod(const RatPoly& a, const RatPoly& b) {
    int db = rp_degree(b);
    if (db < 0) throw std::invalid_argument("rp_divmod: division by zero polynomial");
    RatPoly rem = a;
    rp_trim(rem);
    RatPoly quot;
    int da = rp_degree(rem);
    if (da >= db) quot.assign(da - db + 1, Rational(0));
    while ((da = rp_degree(rem)) >= db) {
        Rational c = rem[da] / b[db];
        quot[da - db] = c;
        for (int i = 0; i <= db; ++i) rem[da - db + i] -= c * b[i];
    }
    rp_trim(rem);
    return {quot, rem};
}

inline RatPoly rp_divide_exact(const RatPoly& a, const RatPoly& b) {
    auto [q, r] = rp_divmod(a, b);
    if (!rp_is_zero(r)) throw std::logic_error("rp_divide_exact: nonzero remainder");
    return q;
}

/// Monic gcd by the Euclidean algorithm.
inline RatPoly rp_gcd(RatPoly a, RatPoly b) {
    rp_trim(a);
    rp_trim(b);
    while (!rp_is_zero(b)) {
        RatPoly r = rp_divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return rp_monic(a);
}

/// Yun square-free decomposition. Returns factors f_1, f_2, ... with
/// p = lead * prod f_i^i and each f_i monic square-free; trailing entries may
/// be constant 1.
inline std::vector<RatPoly> rp_squarefree(const RatPoly& p_in) {
    RatPoly p = rp_monic(p_in);
    if (rp_degree(p) < 1) return {};
    std::vector<RatPoly> out;
    RatPoly dp = rp_derivative(p);
    RatPoly g = rp_gcd(p, dp);
    if (rp_degree(g) == 0) {
        out.push_back(p);
        return out;
    }
    RatPoly w = rp_divide_exact(p, g);
    RatPoly y = rp_divide_exact(dp, g);
    RatPoly z = rp_sub(y, rp_derivative(w));
    while (rp_degree(w) > 0) {
        RatPoly gi = rp_gcd(w, z);
        out.push_back(rp_monic(gi));
        w = rp_divide_exact(w, gi);
        y = rp_divide_exact(z, gi);
        z = rp_sub(y, rp_derivative(w));
    }
    return out;
}

/// Exact Lagrange interpolation through (xs[i], ys[i]) with distinct xs.
inline RatPoly rp_interpolate(const std::vector<Rational>& xs,
                              const std::vector<Rational>& ys) {
    if (xs.size() != ys.size() || xs.empty())
        throw std::invalid_argument("rp_interpolate: bad point count");
    std::size_t n = xs.size();
    RatPoly result;
    for (std::size_t i = 0; i < n; ++i) {
        RatPoly basis{Rational(1)};
        Rational denom = 1;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            // basis *= (t - xs[j])
            RatPoly next(basis.size() + 1, Rational(0));
            for (std::size_t k = 0; k < basis.size(); ++k) {
                next[k + 1] += basis[k];
                next[k] -= basis[k] * xs[j];
            }
            basis = std::move(next);
            denom *= xs[i] - xs[j];
        }
        Rational c = ys[i] / denom;
        if (basis.size() > result.size()) result.resize(basis.size(), Rational(0));
        for (std::size_t k = 0; k < basis.size(); ++k) result[k] += basis[k] * c;
    }
    rp_trim(result);
    return result;
}

}  // namespace solray
