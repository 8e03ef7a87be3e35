#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "solray/busolver.hpp"
#include "solray/parity.hpp"
#include "solray/parse.hpp"

namespace solray {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::vector<std::string> read_content_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open file: " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] == '#') continue;
        lines.push_back(line);
    }
    return lines;
}

inline long header_field(const std::string& header, const std::string& key,
                         const std::string& path) {
    std::istringstream is(header);
    std::string tok;
    while (is >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) continue;
        if (tok.substr(0, eq) == key) {
            try {
                return std::stol(tok.substr(eq + 1));
            } catch (...) {
                throw IoError(path + ": bad header value for " + key);
            }
        }
    }
    throw IoError(path + ": header is missing " + key + "=");
}

}  // namespace detail

/// System file: header `nvars=<k> forms=<m>`, then one homogeneous
/// polynomial expression per line in variables x0..x_{k-1}.
inline HomSystem read_system_file(const std::string& path) {
    auto lines = detail::read_content_lines(path);
    if (lines.empty()) throw IoError(path + ": empty system file");
    long nvars = detail::header_field(lines[0], "nvars", path);
    long nforms = detail::header_field(lines[0], "forms", path);
    if (nvars < 1 || nforms < 1) throw IoError(path + ": bad header counts");
    if (static_cast<long>(lines.size()) != nforms + 1)
        throw IoError(path + ": expected " + std::to_string(nforms) +
                      " polynomial lines");
    HomSystem sys;
    for (long i = 1; i <= nforms; ++i) {
        Poly p = parse_poly(lines[i], static_cast<std::size_t>(nvars)).parsed;
        if (p.is_zero() || !p.is_homogeneous())
            throw IoError(path + ": line " + std::to_string(i + 1) +
                          " is not a nonzero homogeneous form");
        sys.degrees.push_back(static_cast<unsigned>(p.total_degree()));
        sys.forms.push_back(std::move(p));
    }
    return sys;
}

/// Map file: header `nvars=<n+1> forms=<n>`, then one polynomial per line in
/// variables x1..x_{n+1} (x0 is reserved for homogenization and must not
/// appear). Components are stored internally with 0-based indices.
inline std::vector<Poly> read_map_file(const std::string& path) {
    auto lines = detail::read_content_lines(path);
    if (lines.empty()) throw IoError(path + ": empty map file");
    long nvars = detail::header_field(lines[0], "nvars", path);
    long nforms = detail::header_field(lines[0], "forms", path);
    if (nvars < 2 || nforms < 1) throw IoError(path + ": bad header counts");
    if (static_cast<long>(lines.size()) != nforms + 1)
        throw IoError(path + ": expected " + std::to_string(nforms) +
                      " polynomial lines");
    std::vector<Poly> components;
    for (long i = 1; i <= nforms; ++i) {
        // parse with one extra slot so x1..x_nvars are addressable
        Poly raw = parse_poly(lines[i], static_cast<std::size_t>(nvars) + 1).parsed;
        Poly shifted(static_cast<std::size_t>(nvars));
        for (const auto& [m, c] : raw.terms()) {
            if (m.exponents[0] != 0)
                throw IoError(path + ": line " + std::to_string(i + 1) +
                              " uses reserved variable x0");
            Monomial red(static_cast<std::size_t>(nvars));
            for (long v = 1; v <= nvars; ++v)
                red.exponents[v - 1] = m.exponents[v];
            shifted.add_term(red, c);
        }
        components.push_back(std::move(shifted));
    }
    return components;
}

/// Sample file: header `n=<n> degree_cap=<c> samples=<m>`, then one record
/// per line: n+1 unit-vector coordinates followed by n value coordinates.
inline SampleSet read_sample_file(const std::string& path) {
    auto lines = detail::read_content_lines(path);
    if (lines.empty()) throw IoError(path + ": empty sample file");
    long n = detail::header_field(lines[0], "n", path);
    long cap = detail::header_field(lines[0], "degree_cap", path);
    long count = detail::header_field(lines[0], "samples", path);
    if (n < 1 || cap < 1 || count < 1) throw IoError(path + ": bad header counts");
    if (static_cast<long>(lines.size()) != count + 1)
        throw IoError(path + ": expected " + std::to_string(count) + " sample lines");
    SampleSet s;
    s.n = static_cast<std::size_t>(n);
    s.degree_cap = static_cast<unsigned>(cap);
    for (long i = 1; i <= count; ++i) {
        std::istringstream is(lines[i]);
        std::vector<double> point(n + 1), value(n);
        for (auto& v : point)
            if (!(is >> v)) throw IoError(path + ": short sample record on line " +
                                          std::to_string(i + 1));
        for (auto& v : value)
            if (!(is >> v)) throw IoError(path + ": short sample record on line " +
                                          std::to_string(i + 1));
        s.points.push_back(std::move(point));
        s.values.push_back(std::move(value));
    }
    s.validate();
    return s;
}

/// Renders an internal map component (variables x1..x_{n+1} stored 0-based)
/// back in its file notation.
inline std::string map_component_str(const Poly& p) {
    Poly shifted(p.nvars() + 1);
    for (const auto& [m, c] : p.terms()) {
        Monomial up(p.nvars() + 1);
        for (std::size_t i = 0; i < p.nvars(); ++i) up.exponents[i + 1] = m.exponents[i];
        shifted.add_term(up, c);
    }
    return shifted.str();
}

}  // namespace solray
