#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "solray/rational.hpp"

namespace solray {

/// Exact determinant of a square rational matrix. Denominators are cleared
/// per row, then fraction-free (Bareiss) elimination runs over integers.
inline Rational determinant(std::vector<std::vector<Rational>> a) {
    std::size_t n = a.size();
    if (n == 0) return Rational(1);  // empty minor convention
    for (const auto& row : a)
        if (row.size() != n) throw std::invalid_argument("determinant: non-square matrix");

    std::vector<std::vector<Integer>> m(n, std::vector<Integer>(n));
    Integer row_scale = 1;
    for (std::size_t i = 0; i < n; ++i) {
        Integer l = 1;
        for (std::size_t j = 0; j < n; ++j)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a[i][j].get_den().get_mpz_t());
        for (std::size_t j = 0; j < n; ++j) {
            Rational v = a[i][j] * l;
            m[i][j] = v.get_num();  // exact: denominator is 1
        }
        row_scale *= l;
    }

    int sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && m[p][k] == 0) ++p;
            if (p == n) return Rational(0);
            std::swap(m[k], m[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer t = m[k][k] * m[i][j] - m[i][k] * m[k][j];
                mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    Rational det(m[n - 1][n - 1] * sign, row_scale);
    det.canonicalize();
    return det;
}

}  // namespace solray
