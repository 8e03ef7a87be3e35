#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace solray {

using Rational = mpq_class;
using Integer = mpz_class;

// Parses "a", "a/b", or a finite decimal like "0.25" into an exact rational.
inline Rational parse_rational(const std::string& text) {
    if (text.empty())
        throw std::invalid_argument("empty rational literal");
    auto dot = text.find('.');
    if (dot == std::string::npos) {
        Rational q;
        if (q.set_str(text, 10) != 0)
            throw std::invalid_argument("bad rational literal: " + text);
        if (q.get_den() == 0)
            throw std::invalid_argument("zero denominator: " + text);
        q.canonicalize();
        return q;
    }
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    std::size_t frac_len = text.size() - dot - 1;
    if (frac_len == 0 || digits.empty())
        throw std::invalid_argument("bad decimal literal: " + text);
    Integer num;
    if (num.set_str(digits, 10) != 0)
        throw std::invalid_argument("bad decimal literal: " + text);
    Integer den = 1;
    for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rational& q) {
    return q.get_str();
}

}  // namespace solray
