#pragma once

#include <cctype>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "solray/poly.hpp"
#include "solray/rational.hpp"

namespace solray {

struct ParseError : std::runtime_error {
    std::size_t position;
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)),
          position(pos) {}
};

struct PolyExpr {
    std::string source;
    Poly parsed{0};
    std::vector<std::size_t> variables_used;
};

namespace detail {

class ExprParser {
public:
    ExprParser(const std::string& text, std::size_t nvars)
        : text_(text), nvars_(nvars) {}

    Poly parse() {
        Poly result(nvars_);
        skip_ws();
        bool first = true;
        while (pos_ < text_.size() || first) {
            int sign = 1;
            skip_ws();
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
                if (text_[pos_] == '-') sign = -1;
                ++pos_;
            } else if (!first) {
                if (pos_ >= text_.size()) break;
                throw ParseError("expected '+' or '-'", pos_);
            }
            result = result + parse_term(sign);
            first = false;
            skip_ws();
            if (pos_ >= text_.size()) break;
        }
        if (first) throw ParseError("empty expression", 0);
        return result;
    }

private:
    Poly parse_term(int sign) {
        Rational coeff = sign;
        Monomial mono(nvars_);
        bool any = false;
        while (true) {
            skip_ws();
            if (pos_ >= text_.size()) break;
            char c = text_[pos_];
            if (c == '*') {
                if (!any) throw ParseError("unexpected '*'", pos_);
                ++pos_;
                continue;
            }
            if (c == 'x') {
                std::size_t start = pos_++;
                std::size_t idx = parse_index(start);
                unsigned exp = 1;
                skip_ws();
                if (pos_ < text_.size() && text_[pos_] == '^') {
                    ++pos_;
                    skip_ws();
                    exp = parse_exponent();
                }
                mono.exponents[idx] += exp;
                any = true;
                continue;
            }
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
                coeff *= parse_number();
                any = true;
                continue;
            }
            break;  // '+', '-' or junk; caller decides
        }
        if (!any) throw ParseError("expected a term", pos_);
        return Poly::term(nvars_, mono, coeff);
    }

    std::size_t parse_index(std::size_t start) {
        std::size_t begin = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (pos_ == begin) throw ParseError("variable needs an index", start);
        unsigned long idx = std::stoul(text_.substr(begin, pos_ - begin));
        if (idx >= nvars_)
            throw ParseError("variable index x" + std::to_string(idx) +
                                 " exceeds nvars=" + std::to_string(nvars_),
                             start);
        return idx;
    }

    unsigned parse_exponent() {
        std::size_t begin = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (pos_ == begin) throw ParseError("expected exponent", pos_);
        unsigned long e = std::stoul(text_.substr(begin, pos_ - begin));
        if (e == 0 || e > 1000) throw ParseError("exponent out of range", begin);
        return static_cast<unsigned>(e);
    }

    Rational parse_number() {
        std::size_t begin = pos_;
        while (pos_ < text_.size() &&
               (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
            ++pos_;
        std::string head = text_.substr(begin, pos_ - begin);
        // optional '/denominator' (only for integer heads)
        std::size_t save = pos_;
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == '/' && head.find('.') == std::string::npos) {
            ++pos_;
            skip_ws();
            std::size_t dbegin = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            if (pos_ == dbegin) throw ParseError("expected denominator", pos_);
            std::string den = text_.substr(dbegin, pos_ - dbegin);
            try {
                Rational q = parse_rational(head + "/" + den);
                if (q.get_den() == 0) throw ParseError("zero denominator", dbegin);
                return q;
            } catch (const std::invalid_argument&) {
                throw ParseError("bad rational literal", begin);
            }
        }
        pos_ = save;
        try {
            return parse_rational(head);
        } catch (const std::invalid_argument&) {
            throw ParseError("bad numeric literal", begin);
        }
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    const std::string& text_;
    std::size_t nvars_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses a polynomial expression: a signed sum of terms, where a term is an
/// optional rational coefficient times power-product factors like x1^3*x2.
/// Rationals may be written as "a", "a/b", or finite decimals.
inline PolyExpr parse_poly(const std::string& text, std::size_t nvars) {
    detail::ExprParser parser(text, nvars);
    PolyExpr out;
    out.source = text;
    out.parsed = parser.parse();
    std::vector<bool> used(nvars, false);
    for (const auto& [m, c] : out.parsed.terms())
        for (std::size_t i = 0; i < nvars; ++i)
            if (m.exponents[i] > 0) used[i] = true;
    for (std::size_t i = 0; i < nvars; ++i)
        if (used[i]) out.variables_used.push_back(i);
    return out;
}

}  // namespace solray
