#pragma once

#include <stdexcept>
#include <vector>

#include "solray/poly.hpp"

namespace solray {

/// n odd polynomial components in n+1 variables x_1..x_{n+1}
/// (stored with 0-based indices, so component variable i means x_{i+1}).
struct OddMap {
    std::size_t n = 0;
    std::vector<Poly> components;

    void validate() const {
        if (n < 1) throw std::invalid_argument("OddMap: n must be >= 1");
        if (components.size() != n)
            throw std::invalid_argument("OddMap: component count != n");
        for (const Poly& q : components) {
            if (q.nvars() != n + 1)
                throw std::invalid_argument("OddMap: component nvars != n+1");
            if (parity_check(q) != Parity::Odd)
                throw std::invalid_argument("OddMap: component is not odd");
        }
    }

    bool all_zero() const {
        for (const Poly& q : components)
            if (!q.is_zero()) return false;
        return true;
    }
};

/// Homogeneous system: forms in `nvars` variables with recorded degrees.
struct HomSystem {
    std::vector<Poly> forms;
    std::vector<unsigned> degrees;

    std::size_t nvars() const { return forms.empty() ? 0 : forms[0].nvars(); }

    void validate() const {
        if (forms.empty()) throw std::invalid_argument("HomSystem: no forms");
        if (forms.size() != degrees.size())
            throw std::invalid_argument("HomSystem: degree vector length mismatch");
        std::size_t k = forms[0].nvars();
        for (std::size_t j = 0; j < forms.size(); ++j) {
            if (forms[j].nvars() != k)
                throw std::invalid_argument("HomSystem: variable-count mismatch");
            if (!forms[j].is_homogeneous())
                throw std::invalid_argument("HomSystem: form is not homogeneous");
            if (forms[j].is_zero() || forms[j].total_degree() != static_cast<int>(degrees[j]))
                throw std::invalid_argument("HomSystem: form degree != recorded degree");
        }
    }
};

/// Homogenizes an odd polynomial by prepending x0: each term of degree e is
/// multiplied by x0^{d-e} with d the total degree. All pad exponents come out
/// even because every term degree is odd. Setting x0 = 1 recovers the input.
inline Poly homogenize_odd(const Poly& q) {
    if (q.is_zero()) throw std::invalid_argument("homogenize_odd: zero input");
    if (parity_check(q) != Parity::Odd)
        throw std::invalid_argument("homogenize_odd: input is not odd");
    unsigned d = static_cast<unsigned>(q.total_degree());
    Poly r(q.nvars() + 1);
    for (const auto& [m, c] : q.terms()) {
        Monomial h(q.nvars() + 1);
        h.exponents[0] = d - m.degree();
        for (std::size_t i = 0; i < q.nvars(); ++i)
            h.exponents[i + 1] = m.exponents[i];
        r.add_term(h, c);
    }
    return r;
}

/// Replaces every x0^{2k} factor by (x1^2 + ... + x_m^2)^k and drops x0,
/// returning a form of the same degree in one fewer variable.
inline Poly sphere_substitute(const Poly& f) {
    if (f.nvars() < 2)
        throw std::invalid_argument("sphere_substitute: need at least 2 variables");
    std::size_t m = f.nvars() - 1;
    Poly quadric(m);
    for (std::size_t i = 0; i < m; ++i) {
        Monomial sq(m);
        sq.exponents[i] = 2;
        quadric.add_term(sq, 1);
    }
    Poly r(m);
    for (const auto& [mon, c] : f.terms()) {
        unsigned e0 = mon.exponents[0];
        if (e0 % 2 != 0)
            throw std::invalid_argument("sphere_substitute: odd x0 exponent present");
        Monomial rest(m);
        for (std::size_t i = 0; i < m; ++i) rest.exponents[i] = mon.exponents[i + 1];
        r = r + Poly::term(m, rest, c) * quadric.pow(e0 / 2);
    }
    return r;
}

/// Odd part 1/2 (p(x) - p(-x)); drops every even-degree term.
inline Poly odd_symmetrize(const Poly& p) {
    Poly r(p.nvars());
    for (const auto& [m, c] : p.terms())
        if (m.degree() % 2 == 1) r.add_term(m, c);
    return r;
}

/// Sphere reduction: homogenize each component with even powers of x0,
/// then substitute the sphere quadric for x0^2. The result is a system of n
/// odd-degree forms in n+1 variables that agrees with the map on the sphere.
inline HomSystem build_odd_system(const OddMap& m) {
    m.validate();
    HomSystem sys;
    for (const Poly& q : m.components) {
        if (q.is_zero())
            throw std::invalid_argument("build_odd_system: zero component");
        Poly f = sphere_substitute(homogenize_odd(q));
        sys.degrees.push_back(static_cast<unsigned>(f.total_degree()));
        sys.forms.push_back(std::move(f));
    }
    return sys;
}

}  // namespace solray
