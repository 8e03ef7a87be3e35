// Acceptance harness: one line per criterion, nonzero exit when any fails.
// All tolerances are pinned here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "solray/busolver.hpp"
#include "solray/parse.hpp"
#include "solray/realray.hpp"
#include "solray/report.hpp"
#include "solray/uresultant.hpp"

using namespace solray;

namespace {

constexpr double kResidualTol = 1e-8;
constexpr double kAntipodeTol = 1e-12;
constexpr double kGapTol = 1e-6;
constexpr double kPairingTol = 1e-6;
constexpr double kUnitNormTol = 1e-9;

int criteria_failed = 0;

void report(int index, const char* name, bool ok, const std::string& detail) {
    std::printf("%s criterion %d (%s): %s\n", ok ? "PASS" : "FAIL", index, name,
                detail.c_str());
    if (!ok) ++criteria_failed;
}

Poly random_form(std::mt19937_64& rng, std::size_t nvars, unsigned degree,
                 int lo = -5, int hi = 5) {
    std::uniform_int_distribution<int> coeff(lo, hi);
    Poly p(nvars);
    while (p.is_zero() || p.total_degree() != static_cast<int>(degree)) {
        p = Poly::zero(nvars);
        for (const Monomial& m : monomials_of_degree(nvars, degree))
            p.add_term(m, coeff(rng));
    }
    return p;
}

HomSystem random_system(std::mt19937_64& rng, std::size_t n,
                        const std::vector<unsigned>& degree_choices) {
    std::uniform_int_distribution<std::size_t> pick(0, degree_choices.size() - 1);
    HomSystem sys;
    for (std::size_t j = 0; j < n; ++j) {
        unsigned d = degree_choices[pick(rng)];
        sys.degrees.push_back(d);
        sys.forms.push_back(random_form(rng, n + 1, d));
    }
    return sys;
}

bool infinity_ok(const HomSystem& sys, std::size_t chart) {
    try {
        return !at_infinity_check(sys, chart).has_infinite_solutions;
    } catch (const DegenerateError&) {
        return false;
    }
}

// criteria 1 and 3 share the solve runs
void bezout_and_pairing() {
    auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(1001);
    std::uniform_int_distribution<std::size_t> npick(1, 2);
    int accepted = 0, bezout_failures = 0, pairing_violations = 0;
    while (accepted < 200) {
        std::size_t n = npick(rng);
        HomSystem sys = random_system(rng, n, {1, 2, 3});
        if (!infinity_ok(sys, 0)) continue;
        SolverConfig cfg;
        cfg.seed = static_cast<std::uint64_t>(accepted);
        ++accepted;
        try {
            SolveResult res = solve_rays(sys, cfg);
            if (!res.bezout.consistent) ++bezout_failures;
            try {
                conjugate_pairing(res.rays, kPairingTol);
            } catch (const std::logic_error&) {
                ++pairing_violations;
            }
        } catch (const std::exception&) {
            ++bezout_failures;
        }
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                      .count();
    report(1, "Bezout completeness", bezout_failures == 0 && secs <= 120.0,
           "200 systems, " + std::to_string(bezout_failures) + " failures, " +
               std::to_string(secs) + " s (limit 120)");
    report(3, "conjugate pairing", pairing_violations == 0,
           std::to_string(pairing_violations) + " violations in 200 solves");
}

void real_ray() {
    auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(2002);
    std::uniform_int_distribution<std::size_t> npick(1, 2);
    int failures = 0;
    for (int i = 0; i < 100; ++i) {
        std::size_t n = npick(rng);
        HomSystem sys = random_system(rng, n, {1, 3});
        SolverConfig cfg;
        cfg.seed = static_cast<std::uint64_t>(i);
        try {
            auto [b, trail] = find_real_ray_odd(sys, cfg);
            double norm = 0.0;
            for (double v : b) norm += v * v;
            if (std::abs(std::sqrt(norm) - 1.0) > kUnitNormTol ||
                trail.final_residual > kResidualTol)
                ++failures;
        } catch (const std::exception&) {
            ++failures;
        }
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                      .count();
    report(2, "odd-degree real ray", failures == 0 && secs <= 120.0,
           "100 systems, " + std::to_string(failures) + " failures, " +
               std::to_string(secs) + " s (limit 120)");
}

Poly binary_form_from(const std::vector<Rational>& coeffs) {
    unsigned d = static_cast<unsigned>(coeffs.size() - 1);
    Poly p(2);
    for (unsigned i = 0; i <= d; ++i)
        p.add_term(Monomial({d - i, i}), coeffs[i]);
    return p;
}

// independent oracle: Sylvester determinant of two binary forms using their
// formal (homogeneous) coefficient vectors
Rational sylvester_resultant(const std::vector<Rational>& f,
                             const std::vector<Rational>& g) {
    std::size_t d1 = f.size() - 1, d2 = g.size() - 1;
    std::size_t n = d1 + d2;
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t r = 0; r < d2; ++r)
        for (std::size_t i = 0; i <= d1; ++i) m[r][r + i] = f[i];
    for (std::size_t r = 0; r < d1; ++r)
        for (std::size_t i = 0; i <= d2; ++i) m[d2 + r][r + i] = g[i];
    return determinant(m);
}

void resultant_oracles() {
    std::mt19937_64 rng(3003);
    std::uniform_int_distribution<int> c(-5, 5);
    int linear_failures = 0;
    int done = 0;
    while (done < 100) {
        Rational a = c(rng), b = c(rng), cc = c(rng), e = c(rng);
        if ((a == 0 && b == 0) || (cc == 0 && e == 0)) continue;
        ++done;
        Rational res =
            macaulay_resultant({binary_form_from({a, b}), binary_form_from({cc, e})},
                               {1, 1})
                .value;
        if (res != a * e - b * cc) ++linear_failures;
    }

    // relative sign between the two conventions, per degree pair, fixed by the
    // pure-power reference Res(x0^d1, x1^d2)
    int sylvester_failures = 0;
    std::uniform_int_distribution<unsigned> dpick(1, 4);
    done = 0;
    while (done < 100) {
        unsigned d1 = dpick(rng), d2 = dpick(rng);
        std::vector<Rational> f(d1 + 1), g(d2 + 1);
        for (auto& x : f) x = c(rng);
        for (auto& x : g) x = c(rng);
        Poly pf = binary_form_from(f), pg = binary_form_from(g);
        if (pf.total_degree() != static_cast<int>(d1) ||
            pg.total_degree() != static_cast<int>(d2))
            continue;
        ++done;
        std::vector<Rational> ref_f(d1 + 1, Rational(0)), ref_g(d2 + 1, Rational(0));
        ref_f[0] = 1;   // x0^d1
        ref_g[d2] = 1;  // x1^d2
        Rational sigma = sylvester_resultant(ref_f, ref_g);  // macaulay reference is +1
        Rational expect = sylvester_resultant(f, g) / sigma;
        Rational res = macaulay_resultant({pf, pg}, {d1, d2}).value;
        if (res != expect) ++sylvester_failures;
    }
    report(4, "resultant oracles", linear_failures == 0 && sylvester_failures == 0,
           std::to_string(linear_failures) + " linear and " +
               std::to_string(sylvester_failures) + " Sylvester mismatches in 100+100");
}

void multihomogeneity() {
    std::mt19937_64 rng(4004);
    std::uniform_int_distribution<unsigned> dpick(1, 3);
    std::uniform_int_distribution<std::size_t> kpick(2, 3);
    const std::vector<Rational> lambdas{Rational(2), Rational(-3), Rational(5, 7)};
    int failures = 0;
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t k = kpick(rng);
        std::vector<Poly> forms;
        std::vector<unsigned> degrees;
        for (std::size_t i = 0; i < k; ++i) {
            unsigned d = k == 3 ? dpick(rng) % 2 + 1 : dpick(rng);
            degrees.push_back(d);
            forms.push_back(random_form(rng, k, d, -3, 3));
        }
        Rational base = macaulay_resultant(forms, degrees).value;
        for (std::size_t j = 0; j < k; ++j) {
            long exponent = 1;
            for (std::size_t i = 0; i < k; ++i)
                if (i != j) exponent *= degrees[i];
            for (const Rational& lambda : lambdas) {
                Rational factor = 1;
                for (long e = 0; e < exponent; ++e) factor *= lambda;
                auto scaled = forms;
                scaled[j] = scaled[j].scale(lambda);
                if (macaulay_resultant(scaled, degrees).value != base * factor)
                    ++failures;
            }
        }
    }
    report(5, "multihomogeneity", failures == 0,
           std::to_string(failures) + " scaling mismatches in 50 systems");
}

Poly random_odd_component(std::mt19937_64& rng, std::size_t nvars, bool allow_even) {
    std::uniform_int_distribution<int> coeff(-5, 5);
    std::uniform_int_distribution<int> nterms(2, 5);
    std::uniform_int_distribution<unsigned> deg(0, 3);
    Poly p(nvars);
    while (odd_symmetrize(p).is_zero()) {
        p = Poly::zero(nvars);
        int t = nterms(rng);
        for (int i = 0; i < t; ++i) {
            unsigned d = deg(rng);
            if (!allow_even && d % 2 == 0) d = (d + 1) % 4;
            auto monos = monomials_of_degree(nvars, d == 0 ? 1 : d);
            std::uniform_int_distribution<std::size_t> mpick(0, monos.size() - 1);
            p.add_term(monos[mpick(rng)], coeff(rng));
        }
        if (!allow_even) p = odd_symmetrize(p);
    }
    return p;
}

// keeps the harness on maps the solver supports: singular or
// positive-dimensional zero sets fail the infinity check in every chart
bool solvable_in_some_chart(const OddMap& m) {
    HomSystem sys = build_odd_system(m);
    for (std::size_t chart = 0; chart < sys.nvars(); ++chart)
        if (infinity_ok(sys, chart)) return true;
    return false;
}

void bu_pipeline() {
    std::mt19937_64 rng(5005);
    int failures = 0;
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t n = (trial % 2) + 1;  // alternate S^1 and S^2
        OddMap m;
        do {
            m = OddMap{};
            m.n = n;
            for (std::size_t j = 0; j < n; ++j)
                m.components.push_back(random_odd_component(rng, n + 1, false));
        } while (!solvable_in_some_chart(m));
        SolverConfig cfg;
        cfg.seed = static_cast<std::uint64_t>(trial);
        try {
            BUResult r = bu_zero(m, cfg);
            std::vector<Complex> y(r.point.begin(), r.point.end());
            std::vector<Complex> ny(r.antipode.begin(), r.antipode.end());
            for (const Poly& q : m.components) {
                Complex vy = q.evaluate(y);
                if (std::abs(vy) > kResidualTol) { ++failures; break; }
                if (std::abs(q.evaluate(ny) + vy) > kAntipodeTol) { ++failures; break; }
            }
        } catch (const std::exception&) {
            ++failures;
        }
    }
    report(6, "pipeline fidelity", failures == 0,
           std::to_string(failures) + " failures in 50 maps");
}

void worked_example() {
    bool ok = true;
    std::string detail = "round-trip and 25 sphere points exact";
    Poly q = parse_poly("2*x0 - x1*x2^2 + x0^3*x1*x2 - 3*x0*x2^2 + x1^2*x2", 3).parsed;
    Poly h = homogenize_odd(q);

    // x0 = 1 restores q (with indices shifted up by the homogenizer slot)
    Poly at_one = h.substitute(0, Poly::constant(4, 1));
    Poly shifted(4);
    for (const auto& [m, c] : q.terms()) {
        Monomial big(4);
        for (std::size_t i = 0; i < 3; ++i) big.exponents[i + 1] = m.exponents[i];
        shifted.add_term(big, c);
    }
    if (at_one != shifted) { ok = false; detail = "x0=1 does not restore q"; }

    Poly s = sphere_substitute(h);
    int checked = 0;
    for (int a = -2; a <= 2 && ok; ++a) {
        for (int b = -2; b <= 2 && ok; ++b) {
            Rational u(a, 3), v(b, 3);
            Rational denom = 1 + u * u + v * v;
            std::vector<Rational> pt{2 * u / denom, 2 * v / denom,
                                     (1 - u * u - v * v) / denom};
            if (s.evaluate_exact(pt) != q.evaluate_exact(pt)) {
                ok = false;
                detail = "sphere point mismatch";
            }
            ++checked;
        }
    }
    if (ok && checked != 25) { ok = false; detail = "wrong point count"; }
    report(7, "worked example round-trip", ok, detail);
}

void coincidence_maps() {
    std::mt19937_64 rng(6006);
    int failures = 0;
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<Poly> g;
        OddMap odd;
        do {
            g.clear();
            odd = OddMap{};
            odd.n = 2;
            for (int j = 0; j < 2; ++j) {
                Poly gj = random_odd_component(rng, 3, true);
                if (parity_check(gj) == Parity::Odd)
                    gj = gj + Poly::constant(3, 2);  // force a non-odd map
                g.push_back(gj);
                odd.components.push_back(odd_symmetrize(gj));
            }
        } while (!solvable_in_some_chart(odd));
        SolverConfig cfg;
        cfg.seed = static_cast<std::uint64_t>(trial);
        try {
            BUResult r = coincidence(g, cfg);
            for (double gap : r.coincidence_gaps)
                if (gap > kGapTol) { ++failures; break; }
        } catch (const std::exception&) {
            ++failures;
        }
    }
    report(8, "coincidence maps", failures == 0,
           std::to_string(failures) + " failures in 25 maps");
}

void determinism() {
    bool ok = true;
    std::string detail = "byte-identical reports";

    HomSystem sys{{parse_poly("x0^3 + x1^3", 2).parsed}, {3}};
    SolverConfig cfg;
    cfg.seed = 31337;
    auto dump_solve = [&] {
        RunReport r;
        r.command = "solve";
        r.seed = cfg.seed;
        r.outputs = {{"solve", to_json(solve_rays(sys, cfg))}};
        return r.dump();
    };
    if (dump_solve() != dump_solve()) { ok = false; detail = "solve reports differ"; }

    OddMap m{1, {parse_poly("x0^3 + x0*x1^2 - x1^3", 2).parsed}};
    auto dump_bu = [&] {
        RunReport r;
        r.command = "bu-zero";
        r.seed = cfg.seed;
        r.outputs = {{"result", to_json(bu_zero(m, cfg))}};
        return r.dump();
    };
    if (ok && dump_bu() != dump_bu()) { ok = false; detail = "bu-zero reports differ"; }

    report(9, "determinism", ok, detail);
}

}  // namespace

int main() {
    bezout_and_pairing();
    real_ray();
    resultant_oracles();
    multihomogeneity();
    bu_pipeline();
    worked_example();
    coincidence_maps();
    determinism();
    if (criteria_failed) {
        std::printf("%d criteria failed\n", criteria_failed);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
