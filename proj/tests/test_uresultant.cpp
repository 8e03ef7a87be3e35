#include <catch_amalgamated.hpp>

#include <cmath>

#include "solray/parse.hpp"
#include "solray/uresultant.hpp"

using namespace solray;

namespace {

HomSystem one_form(const std::string& text, std::size_t nvars) {
    Poly f = parse_poly(text, nvars).parsed;
    return {{f}, {static_cast<unsigned>(f.total_degree())}};
}

const SolutionRay* ray_near(const std::vector<SolutionRay>& rays,
                            const std::vector<Complex>& target, double tol = 1e-8) {
    for (const auto& r : rays) {
        double d = 0.0;
        for (std::size_t i = 0; i < target.size(); ++i)
            d = std::max(d, std::abs(r.coords[i] - target[i]));
        if (d <= tol) return &r;
    }
    return nullptr;
}

}  // namespace

TEST_CASE("u_specialized_poly worked examples") {
    SECTION("double ray at t = 0") {
        HomSystem sys = one_form("x1^2", 2);
        RatPoly p = u_specialized_poly(sys, {Rational(0), Rational(1)}, 0);
        CHECK(p == RatPoly{Rational(0), Rational(0), Rational(1)});
    }
    SECTION("conjugate rays at t = +-i") {
        HomSystem sys = one_form("x0^2 + x1^2", 2);
        RatPoly p = u_specialized_poly(sys, {Rational(0), Rational(1)}, 0);
        CHECK(p == RatPoly{Rational(1), Rational(0), Rational(1)});
    }
    SECTION("input validation") {
        HomSystem sys = one_form("x1^2", 2);
        CHECK_THROWS_AS(u_specialized_poly(sys, {Rational(1)}, 0), std::invalid_argument);
        CHECK_THROWS_AS(u_specialized_poly(sys, {Rational(0), Rational(1)}, 5),
                        std::invalid_argument);
    }
}

TEST_CASE("solve_univariate examples") {
    SECTION("t^2 + 1") {
        auto roots = solve_univariate(RatPoly{Rational(1), Rational(0), Rational(1)});
        REQUIRE(roots.size() == 2);
        CHECK(roots[0].multiplicity == 1);
        CHECK(roots[1].multiplicity == 1);
        CHECK(std::abs(roots[0].value - Complex(0, -1)) < 1e-12);
        CHECK(std::abs(roots[1].value - Complex(0, 1)) < 1e-12);
    }
    SECTION("t^2") {
        auto roots = solve_univariate(RatPoly{Rational(0), Rational(0), Rational(1)});
        REQUIRE(roots.size() == 1);
        CHECK(roots[0].multiplicity == 2);
        CHECK(std::abs(roots[0].value) < 1e-12);
    }
    SECTION("t^3 - t") {
        auto roots =
            solve_univariate(RatPoly{Rational(0), Rational(-1), Rational(0), Rational(1)});
        REQUIRE(roots.size() == 3);
        CHECK(std::abs(roots[0].value - Complex(-1, 0)) < 1e-12);
        CHECK(std::abs(roots[1].value) < 1e-12);
        CHECK(std::abs(roots[2].value - Complex(1, 0)) < 1e-12);
    }
    SECTION("triple root with exact multiplicity") {
        // (t - 1/3)^3
        RatPoly p{Rational(-1, 27), Rational(1, 3), Rational(-1), Rational(1)};
        auto roots = solve_univariate(p);
        REQUIRE(roots.size() == 1);
        CHECK(roots[0].multiplicity == 3);
        CHECK(std::abs(roots[0].value - Complex(1.0 / 3.0, 0)) < 1e-9);
    }
    SECTION("zero polynomial rejected") {
        CHECK_THROWS_AS(solve_univariate(RatPoly{}), std::invalid_argument);
    }
}

TEST_CASE("solve_rays on a split cubic") {
    HomSystem sys = one_form("x0^3 - x0*x1^2", 2);
    SolverConfig cfg;
    cfg.chart_variable = 1;  // every term contains x0, so chart x0 degenerates
    SolveResult res = solve_rays(sys, cfg);
    REQUIRE(res.rays.size() == 3);
    CHECK(res.bezout.consistent);
    CHECK(res.bezout.degree_product == 3);
    CHECK(ray_near(res.rays, {Complex(0), Complex(1)}) != nullptr);
    CHECK(ray_near(res.rays, {Complex(1), Complex(1)}) != nullptr);
    CHECK(ray_near(res.rays, {Complex(1), Complex(-1)}) != nullptr);
    for (const auto& r : res.rays) {
        CHECK(r.is_real);
        CHECK(r.multiplicity == 1);
        for (double e : r.residuals) CHECK(e <= 1e-8);
    }
    CHECK(res.urep.degree_D == 3);
    CHECK_FALSE(res.urep.specializations.empty());
}

TEST_CASE("solve_rays finds conjugate pairs") {
    HomSystem sys = one_form("x0^3 + x1^3", 2);
    SolverConfig cfg;
    SolveResult res = solve_rays(sys, cfg);
    REQUIRE(res.rays.size() == 3);
    int real_count = 0;
    for (const auto& r : res.rays) real_count += r.is_real ? 1 : 0;
    CHECK(real_count == 1);
    CHECK(ray_near(res.rays, {Complex(1), Complex(-1)}) != nullptr);
    // the nonreal rays x1/x0 = exp(+-i pi/3) come in a conjugate pair
    double half = 0.5, s3 = std::sqrt(3.0) / 2.0;
    CHECK(ray_near(res.rays, {Complex(1), Complex(half, s3)}, 1e-7) != nullptr);
    CHECK(ray_near(res.rays, {Complex(1), Complex(half, -s3)}, 1e-7) != nullptr);
}

TEST_CASE("solve_rays reports multiplicity") {
    HomSystem sys = one_form("x1^2", 2);
    SolverConfig cfg;
    SolveResult res = solve_rays(sys, cfg);
    REQUIRE(res.rays.size() == 1);
    CHECK(res.rays[0].multiplicity == 2);
    CHECK(ray_near(res.rays, {Complex(1), Complex(0)}, 1e-6) != nullptr);
    CHECK(res.bezout.consistent);
}

TEST_CASE("solve_rays on a 2x2 system") {
    HomSystem sys{{parse_poly("x0^2 - x2^2", 3).parsed, parse_poly("x1 - x2", 3).parsed},
                  {2, 1}};
    SolverConfig cfg;
    cfg.chart_variable = 2;
    SolveResult res = solve_rays(sys, cfg);
    REQUIRE(res.rays.size() == 2);
    CHECK(ray_near(res.rays, {Complex(1), Complex(1), Complex(1)}) != nullptr);
    CHECK(ray_near(res.rays, {Complex(1), Complex(-1), Complex(-1)}) != nullptr);
}

TEST_CASE("solve_rays rejects charts with solutions at infinity") {
    HomSystem sys = one_form("x0^3 - x0*x1^2", 2);
    SolverConfig cfg;
    cfg.chart_variable = 0;
    CHECK_THROWS_AS(solve_rays(sys, cfg), DegenerateError);
}

TEST_CASE("solve_rays is chart independent up to tolerance") {
    HomSystem sys = one_form("x0^3 + x1^3", 2);
    SolverConfig c0, c1;
    c1.chart_variable = 1;
    SolveResult a = solve_rays(sys, c0);
    SolveResult b = solve_rays(sys, c1);
    REQUIRE(a.rays.size() == b.rays.size());
    for (const auto& r : a.rays)
        CHECK(ray_near(b.rays, r.coords, 1e-7) != nullptr);
}

TEST_CASE("solve_rays is deterministic for a fixed seed") {
    HomSystem sys = one_form("x0^3 + x1^3", 2);
    SolverConfig cfg;
    cfg.seed = 99;
    SolveResult a = solve_rays(sys, cfg);
    SolveResult b = solve_rays(sys, cfg);
    REQUIRE(a.rays.size() == b.rays.size());
    for (std::size_t i = 0; i < a.rays.size(); ++i) {
        for (std::size_t j = 0; j < a.rays[i].coords.size(); ++j) {
            CHECK(a.rays[i].coords[j].real() == b.rays[i].coords[j].real());
            CHECK(a.rays[i].coords[j].imag() == b.rays[i].coords[j].imag());
        }
    }
    CHECK(a.urep.seed == b.urep.seed);
}

TEST_CASE("bezout_check examples") {
    SolutionRay r1;
    r1.multiplicity = 2;
    SolutionRay r2;
    r2.multiplicity = 1;
    BezoutReport rep = bezout_check({r1, r2}, {3});
    CHECK(rep.consistent);
    CHECK(rep.degree_product == 3);
    CHECK(rep.multiplicity_sum == 3);

    BezoutReport bad = bezout_check({}, {2});
    CHECK_FALSE(bad.consistent);
    CHECK(bad.multiplicity_sum == 0);
}
