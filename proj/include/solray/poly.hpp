#pragma once

#include <algorithm>
#include <complex>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "solray/rational.hpp"

namespace solray {

using Complex = std::complex<double>;

// Total degree reported for the zero polynomial.
inline constexpr int kZeroPolyDegree = -1;

enum class Parity { Odd, Even, Neither };

/// Exponent vector of a single power product; entry i is the exponent of
/// variable x_i (index 0 = x0 when the homogenizing variable is present).
struct Monomial {
    std::vector<unsigned> exponents;

    Monomial() = default;
    explicit Monomial(std::vector<unsigned> e) : exponents(std::move(e)) {}
    explicit Monomial(std::size_t nvars) : exponents(nvars, 0u) {}

    unsigned degree() const {
        return std::accumulate(exponents.begin(), exponents.end(), 0u);
    }

    bool operator==(const Monomial& o) const { return exponents == o.exponents; }

    bool divisible_by(const Monomial& o) const {
        for (std::size_t i = 0; i < exponents.size(); ++i)
            if (o.exponents[i] > exponents[i]) return false;
        return true;
    }

    Monomial operator*(const Monomial& o) const {
        Monomial r = *this;
        for (std::size_t i = 0; i < exponents.size(); ++i)
            r.exponents[i] += o.exponents[i];
        return r;
    }

    Monomial operator/(const Monomial& o) const {
        Monomial r = *this;
        for (std::size_t i = 0; i < exponents.size(); ++i) {
            if (o.exponents[i] > r.exponents[i])
                throw std::invalid_argument("monomial division not exact");
            r.exponents[i] -= o.exponents[i];
        }
        return r;
    }
};

// Graded lexicographic order with x0 highest; a "less" comparator that puts
// the leading monomial first in map iteration.
struct MonomialOrder {
    bool operator()(const Monomial& a, const Monomial& b) const {
        unsigned da = a.degree(), db = b.degree();
        if (da != db) return da > db;
        return a.exponents > b.exponents;
    }
};

/// Sparse multivariate polynomial with exact rational coefficients.
/// Canonical form: no zero coefficients, one entry per monomial.
class Poly {
public:
    using TermMap = std::map<Monomial, Rational, MonomialOrder>;

    explicit Poly(std::size_t nvars = 0) : nvars_(nvars) {}

    static Poly zero(std::size_t nvars) { return Poly(nvars); }

    static Poly constant(std::size_t nvars, const Rational& c) {
        Poly p(nvars);
        p.add_term(Monomial(nvars), c);
        return p;
    }

    static Poly variable(std::size_t nvars, std::size_t i) {
        if (i >= nvars) throw std::invalid_argument("variable index out of range");
        Poly p(nvars);
        Monomial m(nvars);
        m.exponents[i] = 1;
        p.add_term(m, 1);
        return p;
    }

    static Poly term(std::size_t nvars, const Monomial& m, const Rational& c) {
        if (m.exponents.size() != nvars)
            throw std::invalid_argument("monomial length != nvars");
        Poly p(nvars);
        p.add_term(m, c);
        return p;
    }

    std::size_t nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    void add_term(const Monomial& m, const Rational& c) {
        if (m.exponents.size() != nvars_)
            throw std::invalid_argument("monomial length != nvars");
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Rational coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    Poly operator+(const Poly& o) const {
        check_same_vars(o);
        Poly r = *this;
        for (const auto& [m, c] : o.terms_) r.add_term(m, c);
        return r;
    }

    Poly operator-() const {
        Poly r(nvars_);
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }

    Poly operator-(const Poly& o) const { return *this + (-o); }

    Poly operator*(const Poly& o) const {
        check_same_vars(o);
        Poly r(nvars_);
        for (const auto& [ma, ca] : terms_)
            for (const auto& [mb, cb] : o.terms_)
                r.add_term(ma * mb, ca * cb);
        return r;
    }

    Poly scale(const Rational& c) const {
        Poly r(nvars_);
        if (c == 0) return r;
        for (const auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
        return r;
    }

    Poly pow(unsigned e) const {
        Poly r = Poly::constant(nvars_, 1);
        for (unsigned i = 0; i < e; ++i) r = r * (*this);
        return r;
    }

    bool operator==(const Poly& o) const {
        return nvars_ == o.nvars_ && terms_ == o.terms_;
    }

    Complex evaluate(const std::vector<Complex>& point) const {
        if (point.size() != nvars_)
            throw std::invalid_argument("evaluation point length != nvars");
        Complex sum = 0.0;
        for (const auto& [m, c] : terms_) {
            Complex prod = c.get_d();
            for (std::size_t i = 0; i < nvars_; ++i)
                for (unsigned e = 0; e < m.exponents[i]; ++e) prod *= point[i];
            sum += prod;
        }
        return sum;
    }

    Rational evaluate_exact(const std::vector<Rational>& point) const {
        if (point.size() != nvars_)
            throw std::invalid_argument("evaluation point length != nvars");
        Rational sum = 0;
        for (const auto& [m, c] : terms_) {
            Rational prod = c;
            for (std::size_t i = 0; i < nvars_; ++i)
                for (unsigned e = 0; e < m.exponents[i]; ++e) prod *= point[i];
            sum += prod;
        }
        return sum;
    }

    /// Exact composition: replaces variable `var` by `replacement`.
    Poly substitute(std::size_t var, const Poly& replacement) const {
        if (var >= nvars_) throw std::invalid_argument("substitute: index out of range");
        check_same_vars(replacement);
        Poly r(nvars_);
        for (const auto& [m, c] : terms_) {
            Monomial rest = m;
            unsigned e = rest.exponents[var];
            rest.exponents[var] = 0;
            Poly t = Poly::term(nvars_, rest, c);
            r = r + t * replacement.pow(e);
        }
        return r;
    }

    Poly derivative(std::size_t var) const {
        if (var >= nvars_) throw std::invalid_argument("derivative: index out of range");
        Poly r(nvars_);
        for (const auto& [m, c] : terms_) {
            if (m.exponents[var] == 0) continue;
            Monomial d = m;
            unsigned e = d.exponents[var]--;
            r.add_term(d, c * e);
        }
        return r;
    }

    int total_degree() const {
        if (terms_.empty()) return kZeroPolyDegree;
        // leading term (first in graded-lex) carries the maximum degree
        return static_cast<int>(terms_.begin()->first.degree());
    }

    /// Zero polynomial counts as homogeneous.
    bool is_homogeneous() const {
        if (terms_.empty()) return true;
        unsigned d = terms_.begin()->first.degree();
        for (const auto& [m, c] : terms_)
            if (m.degree() != d) return false;
        return true;
    }

    // Decided syntactically from term degrees; the zero polynomial is odd.
    Parity parity() const {
        bool all_odd = true, all_even = true;
        for (const auto& [m, c] : terms_) {
            if (m.degree() % 2 == 0) all_odd = false;
            else all_even = false;
        }
        if (all_odd) return Parity::Odd;
        if (all_even) return Parity::Even;
        return Parity::Neither;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            Rational a = c;
            if (first) {
                if (a < 0) { os << "-"; a = -a; }
            } else {
                os << (a < 0 ? " - " : " + ");
                if (a < 0) a = -a;
            }
            first = false;
            bool has_vars = m.degree() > 0;
            bool wrote_coeff = false;
            if (a != 1 || !has_vars) {
                os << a.get_str();
                wrote_coeff = true;
            }
            for (std::size_t i = 0; i < nvars_; ++i) {
                unsigned e = m.exponents[i];
                if (e == 0) continue;
                if (wrote_coeff) os << "*";
                os << "x" << i;
                if (e > 1) os << "^" << e;
                wrote_coeff = true;
            }
        }
        return os.str();
    }

private:
    void check_same_vars(const Poly& o) const {
        if (nvars_ != o.nvars_)
            throw std::invalid_argument("variable-count mismatch");
    }

    std::size_t nvars_;
    TermMap terms_;
};

struct DegreeInfo {
    int total_degree;
    bool homogeneous;
};

inline DegreeInfo degree_info(const Poly& p) {
    return {p.total_degree(), p.is_homogeneous()};
}

inline Parity parity_check(const Poly& p) { return p.parity(); }

inline const char* parity_name(Parity p) {
    switch (p) {
        case Parity::Odd: return "odd";
        case Parity::Even: return "even";
        default: return "neither";
    }
}

}  // namespace solray
