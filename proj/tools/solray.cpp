// Command-line front end for the solray library: polynomial parsing,
// resultants, u-resultant ray solving, real-ray extraction, and the
// Borsuk-Ulam drivers. Structured JSON reports by default, --text for a
// plain summary.

#include <CLI11.hpp>

#include <cctype>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>

#include "solray/busolver.hpp"
#include "solray/io.hpp"
#include "solray/macaulay.hpp"
#include "solray/parse.hpp"
#include "solray/realray.hpp"
#include "solray/report.hpp"
#include "solray/uresultant.hpp"

namespace {

using namespace solray;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitParse = 3;
constexpr int kExitDegenerate = 4;
constexpr int kExitInternal = 5;

struct Options {
    SolverConfig cfg;
    std::string poly_text;
    std::string system_file;
    std::string map_file;
    std::string samples_file;
    std::string out_file;
    std::size_t nvars = 0;  // 0 = infer
    bool text = false;
    bool perturb = false;
    double epsilon = 1e-6;
    long sample_count = 200;
    unsigned degree_cap = 0;  // 0 = take from sample file
    std::vector<std::string> text_lines;  // --text summary
};

std::size_t infer_nvars(const std::string& text) {
    std::size_t best = 0;
    for (std::size_t i = 0; i + 1 < text.size(); ++i) {
        if (text[i] != 'x' || !std::isdigit(static_cast<unsigned char>(text[i + 1])))
            continue;
        std::size_t j = i + 1;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
        best = std::max(best, static_cast<std::size_t>(std::stoul(text.substr(i + 1, j - i - 1))) + 1);
        i = j - 1;
    }
    return std::max<std::size_t>(best, 1);
}

// Parses a map-style polynomial written in x1..x_k, returning it 0-based in
// k variables.
Poly parse_map_poly(const std::string& text, std::size_t declared_nvars) {
    std::size_t k = declared_nvars ? declared_nvars : infer_nvars(text) - 1;
    if (k < 1) k = 1;
    Poly raw = parse_poly(text, k + 1).parsed;
    Poly shifted(k);
    for (const auto& [m, c] : raw.terms()) {
        if (m.exponents[0] != 0)
            throw ParseError("variable x0 is reserved for homogenization", 0);
        Monomial red(k);
        for (std::size_t v = 1; v <= k; ++v) red.exponents[v - 1] = m.exponents[v];
        shifted.add_term(red, c);
    }
    return shifted;
}

Json system_json(const HomSystem& sys) {
    Json forms = Json::array();
    for (const auto& f : sys.forms) forms.push_back(f.str());
    return Json{{"nvars", sys.nvars()}, {"forms", forms}, {"degrees", sys.degrees}};
}

void emit(const Options& opt, const RunReport& report) {
    std::string payload;
    if (opt.text) {
        for (const auto& line : opt.text_lines) payload += line + "\n";
    } else {
        payload = report.dump();
    }
    if (!opt.out_file.empty()) {
        std::ofstream out(opt.out_file);
        if (!out) throw IoError("cannot write output file: " + opt.out_file);
        out << payload;
    } else {
        std::cout << payload;
    }
}

void add_solver_flags(CLI::App* cmd, Options& opt) {
    cmd->add_option("--seed", opt.cfg.seed, "random seed for specializations");
    cmd->add_option("--residual-bound", opt.cfg.residual_bound, "accepted ray residual bound");
    cmd->add_option("--cluster-tol", opt.cfg.cluster_tol, "relative root-cluster radius");
    cmd->add_option("--precision", opt.cfg.float_precision_bits,
                    "floating precision bits (hardware double = 53)");
    cmd->add_option("--max-retries", opt.cfg.max_retries, "specialization retry budget");
    cmd->add_option("--chart", opt.cfg.chart_variable, "chart / infinity variable index");
    cmd->add_option("--matrix-cap", opt.cfg.matrix_size_cap, "Macaulay column guardrail");
}

void add_output_flags(CLI::App* cmd, Options& opt) {
    cmd->add_flag("--text", opt.text, "plain-text output instead of JSON");
    cmd->add_option("--out", opt.out_file, "write the report to a file");
}

int dispatch(int argc, char** argv) {
    CLI::App app{"real solution rays and Borsuk-Ulam zeros of polynomial systems"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read defaults from a config file");
    Options opt;
    std::function<RunReport()> action;

    auto* parity_cmd = app.add_subcommand("parity", "classify a polynomial as odd/even/neither");
    parity_cmd->add_option("--poly", opt.poly_text, "polynomial expression")->required();
    parity_cmd->add_option("--nvars", opt.nvars, "variable count (default: inferred)");
    add_output_flags(parity_cmd, opt);
    parity_cmd->callback([&] {
        action = [&] {
            std::size_t nv = opt.nvars ? opt.nvars : infer_nvars(opt.poly_text);
            PolyExpr e = parse_poly(opt.poly_text, nv);
            const char* name = parity_name(parity_check(e.parsed));
            RunReport r;
            r.command = "parity";
            r.inputs = {{"poly", opt.poly_text}, {"nvars", nv}};
            r.outputs = {{"parity", name}, {"canonical", e.parsed.str()}};
            opt.text_lines = {std::string(name)};
            return r;
        };
    });

    auto* homog_cmd = app.add_subcommand(
        "homogenize", "homogenize an odd polynomial with even powers of x0");
    homog_cmd->add_option("--poly", opt.poly_text, "odd polynomial in x1..xk")->required();
    homog_cmd->add_option("--nvars", opt.nvars, "number of map variables k (default: inferred)");
    add_output_flags(homog_cmd, opt);
    homog_cmd->callback([&] {
        action = [&] {
            Poly q = parse_map_poly(opt.poly_text, opt.nvars);
            Poly h = homogenize_odd(q);
            RunReport r;
            r.command = "homogenize";
            r.inputs = {{"poly", opt.poly_text}};
            r.outputs = {{"homogeneous", h.str()},
                         {"degree", h.total_degree()},
                         {"nvars", h.nvars()}};
            opt.text_lines = {h.str()};
            return r;
        };
    });

    auto* build_cmd = app.add_subcommand(
        "system-build", "build the odd homogeneous system of a map on the sphere");
    build_cmd->add_option("--map", opt.map_file, "map file")->required();
    add_output_flags(build_cmd, opt);
    build_cmd->callback([&] {
        action = [&] {
            auto components = read_map_file(opt.map_file);
            OddMap m;
            m.n = components.size();
            m.components = components;
            HomSystem sys = build_odd_system(m);
            RunReport r;
            r.command = "system-build";
            r.inputs = {{"map", opt.map_file}};
            r.outputs = {{"system", system_json(sys)}};
            opt.text_lines.push_back("nvars=" + std::to_string(sys.nvars()) +
                                     " forms=" + std::to_string(sys.forms.size()));
            for (const auto& f : sys.forms) opt.text_lines.push_back(f.str());
            return r;
        };
    });

    auto* res_cmd = app.add_subcommand("resultant",
                                       "Macaulay resultant of k forms in k variables");
    res_cmd->add_option("--system", opt.system_file, "system file")->required();
    res_cmd->add_option("--matrix-cap", opt.cfg.matrix_size_cap, "Macaulay column guardrail");
    add_output_flags(res_cmd, opt);
    res_cmd->callback([&] {
        action = [&] {
            HomSystem sys = read_system_file(opt.system_file);
            ResultantValue rv =
                macaulay_resultant(sys.forms, sys.degrees, opt.cfg.matrix_size_cap);
            RunReport r;
            r.command = "resultant";
            r.inputs = {{"system", opt.system_file}};
            r.outputs = {{"resultant", to_json(rv)}};
            opt.text_lines = {rv.value.get_str()};
            return r;
        };
    });

    auto* inf_cmd = app.add_subcommand("infinity-check",
                                       "solutions-at-infinity test via the specialized resultant");
    inf_cmd->add_option("--system", opt.system_file, "system file")->required();
    inf_cmd->add_option("--chart", opt.cfg.chart_variable, "infinity variable index");
    inf_cmd->add_option("--matrix-cap", opt.cfg.matrix_size_cap, "Macaulay column guardrail");
    add_output_flags(inf_cmd, opt);
    inf_cmd->callback([&] {
        action = [&] {
            HomSystem sys = read_system_file(opt.system_file);
            InfinityCheck chk =
                at_infinity_check(sys, opt.cfg.chart_variable, opt.cfg.matrix_size_cap);
            RunReport r;
            r.command = "infinity-check";
            r.inputs = {{"system", opt.system_file}, {"chart", opt.cfg.chart_variable}};
            r.outputs = {{"has_infinite_solutions", chk.has_infinite_solutions},
                         {"resultant", to_json(chk.resultant)}};
            opt.text_lines = {chk.has_infinite_solutions ? "solutions at infinity"
                                                         : "no solutions at infinity"};
            return r;
        };
    });

    auto run_solve = [&](const char* command, bool bezout_only) {
        HomSystem sys = read_system_file(opt.system_file);
        RunReport r;
        r.command = command;
        r.seed = opt.cfg.seed;
        r.inputs = {{"system", opt.system_file}, {"chart", opt.cfg.chart_variable}};
        if (opt.perturb) {
            GenericityCertificate cert =
                perturb_to_generic(sys, parse_rational("1/1024"), opt.cfg);
            sys = cert.system;
            r.inputs["perturbed"] = true;
        }
        SolveResult res = solve_rays(sys, opt.cfg);
        if (bezout_only) {
            r.outputs = {{"bezout", to_json(res.bezout)}};
        } else {
            r.outputs = {{"solve", to_json(res)}};
        }
        opt.text_lines.push_back("rays: " + std::to_string(res.rays.size()) +
                                 "  bezout " + res.bezout.degree_product.get_str() +
                                 " = " + res.bezout.multiplicity_sum.get_str());
        for (const auto& ray : res.rays) {
            std::string line = "  (";
            for (std::size_t i = 0; i < ray.coords.size(); ++i) {
                if (i) line += " : ";
                line += std::to_string(ray.coords[i].real());
                if (std::abs(ray.coords[i].imag()) > 1e-12)
                    line += (ray.coords[i].imag() > 0 ? "+" : "") +
                            std::to_string(ray.coords[i].imag()) + "i";
            }
            line += ")  mult " + std::to_string(ray.multiplicity) +
                    (ray.is_real ? "  real" : "");
            opt.text_lines.push_back(line);
        }
        return r;
    };

    auto* solve_cmd = app.add_subcommand("solve",
                                         "extract all solution rays with multiplicities");
    solve_cmd->add_option("--system", opt.system_file, "system file")->required();
    solve_cmd->add_flag("--perturb", opt.perturb, "perturb to genericity first if needed");
    add_solver_flags(solve_cmd, opt);
    add_output_flags(solve_cmd, opt);
    solve_cmd->callback([&] { action = [&] { return run_solve("solve", false); }; });

    auto* bez_cmd = app.add_subcommand("bezout", "solve and report the Bezout identity");
    bez_cmd->add_option("--system", opt.system_file, "system file")->required();
    bez_cmd->add_flag("--perturb", opt.perturb, "perturb to genericity first if needed");
    add_solver_flags(bez_cmd, opt);
    add_output_flags(bez_cmd, opt);
    bez_cmd->callback([&] { action = [&] { return run_solve("bezout", true); }; });

    auto* ray_cmd = app.add_subcommand("real-ray",
                                       "real solution ray of an odd-degree system");
    ray_cmd->add_option("--system", opt.system_file, "system file")->required();
    add_solver_flags(ray_cmd, opt);
    add_output_flags(ray_cmd, opt);
    ray_cmd->callback([&] {
        action = [&] {
            HomSystem sys = read_system_file(opt.system_file);
            auto [b, trail] = find_real_ray_odd(sys, opt.cfg);
            RunReport r;
            r.command = "real-ray";
            r.seed = opt.cfg.seed;
            r.inputs = {{"system", opt.system_file}};
            r.outputs = {{"ray", b},
                         {"antipode_equally_valid", true},
                         {"final_residual", trail.final_residual},
                         {"perturbation_trail", to_json(trail)}};
            std::string line = "b = (";
            for (std::size_t i = 0; i < b.size(); ++i)
                line += (i ? ", " : "") + std::to_string(b[i]);
            opt.text_lines = {line + ")"};
            return r;
        };
    });

    auto run_bu = [&](const char* command) {
        auto components = read_map_file(opt.map_file);
        RunReport r;
        r.command = command;
        r.seed = opt.cfg.seed;
        r.inputs = {{"map", opt.map_file}};
        BUResult res;
        if (std::string(command) == "bu-zero") {
            OddMap m;
            m.n = components.size();
            m.components = components;
            res = bu_zero(m, opt.cfg);
        } else {
            res = coincidence(components, opt.cfg);
        }
        r.outputs = {{"result", to_json(res)}};
        std::string line = "y = (";
        for (std::size_t i = 0; i < res.point.size(); ++i)
            line += (i ? ", " : "") + std::to_string(res.point[i]);
        opt.text_lines = {line + ")"};
        if (res.degenerate_map)
            opt.text_lines.push_back("degenerate map: every point qualifies");
        return r;
    };

    auto* bu_cmd = app.add_subcommand("bu-zero",
                                      "antipodal zero of an odd polynomial map on the sphere");
    bu_cmd->add_option("--map", opt.map_file, "map file")->required();
    add_solver_flags(bu_cmd, opt);
    add_output_flags(bu_cmd, opt);
    bu_cmd->callback([&] { action = [&] { return run_bu("bu-zero"); }; });

    auto* co_cmd = app.add_subcommand("coincidence",
                                      "point y with g(y) = g(-y) for an arbitrary map");
    co_cmd->add_option("--map", opt.map_file, "map file")->required();
    add_solver_flags(co_cmd, opt);
    add_output_flags(co_cmd, opt);
    co_cmd->callback([&] { action = [&] { return run_bu("coincidence"); }; });

    auto* fit_cmd = app.add_subcommand("fit", "fit an odd polynomial map to sphere samples");
    fit_cmd->add_option("--samples", opt.samples_file, "sample file")->required();
    fit_cmd->add_option("--degree-cap", opt.degree_cap, "override the file's degree cap");
    add_output_flags(fit_cmd, opt);
    fit_cmd->callback([&] {
        action = [&] {
            SampleSet s = read_sample_file(opt.samples_file);
            if (opt.degree_cap) s.degree_cap = opt.degree_cap;
            auto [map, report] = fit_odd_poly(s, opt.cfg);
            RunReport r;
            r.command = "fit";
            r.inputs = {{"samples", opt.samples_file}, {"degree_cap", s.degree_cap}};
            Json comps = Json::array();
            for (const auto& c : map.components) comps.push_back(map_component_str(c));
            r.outputs = {{"components", comps}, {"fit_report", to_json(report)}};
            opt.text_lines.push_back("max deviation " + std::to_string(report.max_deviation));
            for (const auto& c : map.components)
                opt.text_lines.push_back(map_component_str(c));
            return r;
        };
    });

    auto* guard_cmd = app.add_subcommand(
        "guard", "estimate how far a map is bounded away from zero on the sphere");
    guard_cmd->add_option("--map", opt.map_file, "map file")->required();
    guard_cmd->add_option("--epsilon", opt.epsilon, "approximation error to compare against");
    guard_cmd->add_option("--sample-count", opt.sample_count, "number of sphere samples");
    guard_cmd->add_option("--seed", opt.cfg.seed, "sampling seed");
    add_output_flags(guard_cmd, opt);
    guard_cmd->callback([&] {
        action = [&] {
            auto components = read_map_file(opt.map_file);
            std::size_t n = components[0].nvars() - 1;
            auto pts = sphere_points(n, static_cast<std::size_t>(opt.sample_count),
                                     opt.cfg.seed);
            GuardReport g = delta_epsilon_guard(components, opt.epsilon, pts);
            RunReport r;
            r.command = "guard";
            r.seed = opt.cfg.seed;
            r.inputs = {{"map", opt.map_file},
                        {"epsilon", opt.epsilon},
                        {"sample_count", opt.sample_count}};
            r.outputs = {{"guard", to_json(g)}};
            opt.text_lines = {"delta_hat " + std::to_string(g.delta_hat) +
                              (g.bounded_away ? " > " : " <= ") + std::to_string(g.epsilon)};
            return r;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    auto emit_error = [&](const char* code, const std::string& message, int exit_code) {
        if (opt.text) {
            std::cerr << "error (" << code << "): " << message << "\n";
        } else {
            Json err{{"error", {{"code", code}, {"message", message}}}};
            std::cout << err.dump(2) << "\n";
        }
        return exit_code;
    };

    try {
        emit(opt, action());
        return kExitOk;
    } catch (const ParseError& e) {
        return emit_error("parse", e.what(), kExitParse);
    } catch (const IoError& e) {
        return emit_error("io", e.what(), kExitParse);
    } catch (const GuardrailError& e) {
        return emit_error("guardrail", e.what(), kExitDegenerate);
    } catch (const DegenerateError& e) {
        return emit_error("solver-degenerate", e.what(), kExitDegenerate);
    } catch (const std::invalid_argument& e) {
        return emit_error("usage", e.what(), kExitUsage);
    } catch (const std::logic_error& e) {
        return emit_error("internal-invariant", e.what(), kExitInternal);
    }
}

}  // namespace

int main(int argc, char** argv) { return dispatch(argc, argv); }
