#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "solray/matrix.hpp"
#include "solray/parity.hpp"
#include "solray/poly.hpp"
#include "solray/ratpoly.hpp"

namespace solray {

/// Input that cannot be processed because a genuine degeneracy was detected
/// (e.g. a form divisible by the infinity variable, or an exhausted retry
/// budget). Distinct from usage errors.
struct DegenerateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when a request exceeds the configured matrix-size cap.
struct GuardrailError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultMatrixCap = 3000;

/// Macaulay coefficient matrix at the critical degree D = sum(d_i - 1) + 1.
/// Row r holds the coefficients of multiplier * form, listed against the
/// degree-D column monomials. Rows are ordered by their assigned column
/// monomial, so the pure-power system x_0^{d_1}, ..., x_{k-1}^{d_k} yields
/// the identity matrix.
struct MacaulayMatrix {
    unsigned degree_D = 0;
    std::vector<std::pair<std::size_t, Monomial>> row_index;  // (form, multiplier)
    std::vector<Monomial> col_index;
    std::vector<std::vector<Rational>> entries;
    // columns (= rows) whose monomial is divisible by x_i^{d_i} for >= 2
    // indices i; they index the denominator minor of Macaulay's quotient
    std::vector<std::size_t> minor_cols;
};

enum class ResultantMethod { DeterminantQuotient, GcpPerturbation };

struct ResultantValue {
    Rational value;
    ResultantMethod method = ResultantMethod::DeterminantQuotient;
    int degenerate_retries = 0;
};

namespace detail {

inline void enumerate_monomials(std::size_t k, unsigned deg, Monomial& cur,
                                std::size_t pos, std::vector<Monomial>& out) {
    if (pos + 1 == k) {
        cur.exponents[pos] = deg;
        out.push_back(cur);
        return;
    }
    for (unsigned e = deg + 1; e-- > 0;) {
        cur.exponents[pos] = e;
        enumerate_monomials(k, deg - e, cur, pos + 1, out);
    }
    cur.exponents[pos] = 0;
}

}  // namespace detail

/// All degree-`deg` monomials in k variables, graded-lex order (x0 highest).
inline std::vector<Monomial> monomials_of_degree(std::size_t k, unsigned deg) {
    std::vector<Monomial> out;
    Monomial cur(k);
    detail::enumerate_monomials(k, deg, cur, 0, out);
    return out;
}

inline MacaulayMatrix macaulay_matrix(const std::vector<Poly>& forms,
                                      const std::vector<unsigned>& degrees,
                                      std::size_t size_cap = kDefaultMatrixCap) {
    std::size_t k = forms.size();
    if (k < 1) throw std::invalid_argument("macaulay_matrix: no forms");
    if (degrees.size() != k)
        throw std::invalid_argument("macaulay_matrix: degree vector length mismatch");
    unsigned degree_D = 1;
    for (std::size_t i = 0; i < k; ++i) {
        if (forms[i].nvars() != k)
            throw std::invalid_argument("macaulay_matrix: forms must live in k variables");
        if (degrees[i] < 1)
            throw std::invalid_argument("macaulay_matrix: degrees must be positive");
        if (forms[i].is_zero() || !forms[i].is_homogeneous() ||
            forms[i].total_degree() != static_cast<int>(degrees[i]))
            throw std::invalid_argument(
                "macaulay_matrix: form " + std::to_string(i) +
                " is not homogeneous of its stated degree");
        degree_D += degrees[i] - 1;
    }

    MacaulayMatrix m;
    m.degree_D = degree_D;
    m.col_index = monomials_of_degree(k, degree_D);
    std::size_t ncols = m.col_index.size();
    if (ncols > size_cap)
        throw GuardrailError("macaulay_matrix: " + std::to_string(ncols) +
                             " columns exceed the size cap of " +
                             std::to_string(size_cap));

    std::map<Monomial, std::size_t, MonomialOrder> col_pos;
    for (std::size_t c = 0; c < ncols; ++c) col_pos.emplace(m.col_index[c], c);

    m.entries.assign(ncols, std::vector<Rational>(ncols, Rational(0)));
    for (std::size_t c = 0; c < ncols; ++c) {
        const Monomial& alpha = m.col_index[c];
        std::size_t assigned = k;
        std::size_t divisible = 0;
        for (std::size_t i = 0; i < k; ++i) {
            if (alpha.exponents[i] >= degrees[i]) {
                ++divisible;
                if (assigned == k) assigned = i;
            }
        }
        // D = sum(d_i - 1) + 1 forces at least one divisor by pigeonhole
        if (assigned == k)
            throw std::logic_error("macaulay_matrix: unassigned column monomial");
        if (divisible >= 2) m.minor_cols.push_back(c);

        Monomial mult = alpha;
        mult.exponents[assigned] -= degrees[assigned];
        m.row_index.emplace_back(assigned, mult);
        for (const auto& [mon, coeff] : forms[assigned].terms())
            m.entries[c][col_pos.at(mult * mon)] = coeff;
    }
    return m;
}

namespace detail {

inline std::vector<std::vector<Rational>> minor_of(
    const MacaulayMatrix& m, const std::vector<std::size_t>& idx) {
    std::vector<std::vector<Rational>> e(idx.size(),
                                         std::vector<Rational>(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < idx.size(); ++j)
            e[i][j] = m.entries[idx[i]][idx[j]];
    return e;
}

// det(A + s I) as an exact polynomial in s, by interpolation.
inline RatPoly char_like_poly(const std::vector<std::vector<Rational>>& a) {
    std::size_t n = a.size();
    std::vector<Rational> xs, ys;
    for (std::size_t p = 0; p <= n; ++p) {
        Rational s(static_cast<long>(p));
        auto b = a;
        for (std::size_t i = 0; i < n; ++i) b[i][i] += s;
        xs.push_back(s);
        ys.push_back(determinant(b));
    }
    return rp_interpolate(xs, ys);
}

}  // namespace detail

/// Exact Macaulay resultant, sign-normalized so that
/// Res(x_0^{d_1}, ..., x_{k-1}^{d_k}) = +1. Uses the quotient of two
/// determinants; when the denominator minor vanishes for the given input,
/// falls back to the generalized-characteristic-polynomial perturbation
/// F_i + s * x_i^{d_i} and reads off the value at s = 0.
inline ResultantValue macaulay_resultant(const std::vector<Poly>& forms,
                                         const std::vector<unsigned>& degrees,
                                         std::size_t size_cap = kDefaultMatrixCap) {
    MacaulayMatrix m = macaulay_matrix(forms, degrees, size_cap);
    Rational det_e = determinant(detail::minor_of(m, m.minor_cols));
    ResultantValue rv;
    if (det_e != 0) {
        Rational det_m = determinant(m.entries);
        rv.value = det_m / det_e;
        rv.method = ResultantMethod::DeterminantQuotient;
        return rv;
    }
    // GCP fallback: both det(M + sI) and det(E + sI) are monic in s and the
    // first divides by the second exactly, with quotient Res(s).
    std::vector<std::size_t> all(m.entries.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    RatPoly pm = detail::char_like_poly(detail::minor_of(m, all));
    RatPoly pe = detail::char_like_poly(detail::minor_of(m, m.minor_cols));
    RatPoly res_s = rp_divide_exact(pm, pe);
    rv.value = res_s.empty() ? Rational(0) : res_s[0];
    rv.method = ResultantMethod::GcpPerturbation;
    rv.degenerate_retries = 1;
    return rv;
}

struct InfinityCheck {
    bool has_infinite_solutions = false;
    ResultantValue resultant;
};

/// Specializes the designated infinity variable to zero and drops it.
inline Poly specialize_to_zero(const Poly& p, std::size_t var) {
    if (var >= p.nvars())
        throw std::invalid_argument("specialize_to_zero: index out of range");
    Poly r(p.nvars() - 1);
    for (const auto& [m, c] : p.terms()) {
        if (m.exponents[var] != 0) continue;
        Monomial red(p.nvars() - 1);
        std::size_t j = 0;
        for (std::size_t i = 0; i < p.nvars(); ++i)
            if (i != var) red.exponents[j++] = m.exponents[i];
        r.add_term(red, c);
    }
    return r;
}

/// Points-at-infinity test: the n forms specialized at x_infinity = 0 give a
/// square system of n forms in n variables whose Macaulay resultant vanishes
/// exactly when a nontrivial common zero (a solution ray at infinity) exists.
inline InfinityCheck at_infinity_check(const HomSystem& sys,
                                       std::size_t infinity_var = 0,
                                       std::size_t size_cap = kDefaultMatrixCap) {
    sys.validate();
    std::size_t n = sys.forms.size();
    if (sys.nvars() != n + 1)
        throw std::invalid_argument("at_infinity_check: need n forms in n+1 variables");
    std::vector<Poly> specialized;
    for (std::size_t j = 0; j < n; ++j) {
        Poly s = specialize_to_zero(sys.forms[j], infinity_var);
        if (s.is_zero())
            throw DegenerateError("at_infinity_check: form " + std::to_string(j) +
                                  " is divisible by the infinity variable");
        specialized.push_back(std::move(s));
    }
    InfinityCheck out;
    out.resultant = macaulay_resultant(specialized, sys.degrees, size_cap);
    out.has_infinite_solutions = (out.resultant.value == 0);
    return out;
}

/// Sum over j of binomial(n + d_j, d_j): the count of monomials available to
/// the coefficient vectors of the system.
inline Integer coefficient_count(unsigned n, const std::vector<unsigned>& degrees) {
    if (n < 1) throw std::invalid_argument("coefficient_count: n must be >= 1");
    Integer total = 0;
    for (unsigned d : degrees) {
        if (d < 1) throw std::invalid_argument("coefficient_count: degrees must be positive");
        Integer b;
        mpz_bin_uiui(b.get_mpz_t(), n + d, d);
        total += b;
    }
    return total;
}

}  // namespace solray
