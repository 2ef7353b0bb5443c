#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mpbvp/errors.hpp"
#include "mpbvp/fucik.hpp"
#include "mpbvp/io.hpp"
#include "mpbvp/shooting.hpp"
#include "mpbvp/solvability.hpp"
#include "mpbvp/spectrum.hpp"
#include "mpbvp/verification.hpp"

namespace {

using namespace mpbvp;

// exit-code contract: 0 success (including an empty search),
// 1 verification failure, 2 input validation, 3 internal enumeration failure
int run_guarded(const std::function<int()>& body) {
    try {
        return body();
    } catch (const InvalidProblem& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NotSplitInterval& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ConditionFails& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NonPositiveGamma& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

ProblemSpec load_spec(const std::string& path, bool allow_outside_cone) {
    ProblemFile f = load_problem(path);
    if (allow_outside_cone) f.allow_outside_cone = true;
    return f.to_spec();
}

std::string nodal_text(const std::optional<NodalClass>& nc) {
    if (!nc) return "";
    return std::to_string(nc->k) + (nc->nu > 0 ? ",+" : ",-");
}

// JSON value for an interval endpoint; infinities have no JSON literal
nlohmann::json bound_json(double v) {
    if (std::isinf(v)) return nullptr;
    return v;
}

int cmd_spectrum(const std::string& problem, double a, double b, int kmax,
                 const std::string& out, bool allow_outside_cone) {
    const ProblemSpec spec = load_spec(problem, allow_outside_cone);
    const auto recs = half_eigenvalues(spec, a, b, kmax);
    std::vector<std::vector<double>> rows;
    rows.reserve(recs.size());
    for (const auto& r : recs)
        rows.push_back({static_cast<double>(r.k), static_cast<double>(r.nu), r.lambda,
                        r.s, r.delta.value(), r.residual});
    write_csv(out, "k,nu,lambda,s,delta,residual", rows);
    std::cout << "wrote " << rows.size() << " records to " << out << "\n";
    return 0;
}

void write_fucik_svg(const std::string& path, const std::vector<FucikSample>& samples) {
    // plot limit: generous multiple of the typical coordinate, so the
    // asymptotic tails do not flatten the interesting region
    std::vector<double> coords;
    for (const auto& s : samples) {
        if (std::isfinite(s.point_a)) coords.push_back(s.point_a);
        if (std::isfinite(s.point_b)) coords.push_back(s.point_b);
    }
    if (coords.empty()) throw Error("no finite curve samples to plot");
    std::sort(coords.begin(), coords.end());
    const double limit = 1.05 * coords[static_cast<size_t>(0.9 * (coords.size() - 1))];

    const double W = 640, H = 640, M = 50;
    auto px = [&](double a) { return M + (W - 2 * M) * a / limit; };
    auto py = [&](double b) { return H - M - (H - 2 * M) * b / limit; };

    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\""
        << H << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    out << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    // axes
    out << "<line x1=\"" << px(0) << "\" y1=\"" << py(0) << "\" x2=\"" << px(limit)
        << "\" y2=\"" << py(0) << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << px(0) << "\" y1=\"" << py(0) << "\" x2=\"" << px(0)
        << "\" y2=\"" << py(limit) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << W - M + 8 << "\" y=\"" << py(0) + 4 << "\" font-size=\"14\">a</text>\n";
    out << "<text x=\"" << px(0) - 4 << "\" y=\"" << M - 8 << "\" font-size=\"14\">b</text>\n";
    for (double t : {0.0, 0.5, 1.0}) {
        const double v = t * limit;
        out << "<text x=\"" << px(v) << "\" y=\"" << py(0) + 18
            << "\" font-size=\"10\" text-anchor=\"middle\">" << format_float(std::round(v * 100) / 100)
            << "</text>\n";
        if (t > 0)
            out << "<text x=\"" << px(0) - 6 << "\" y=\"" << py(v) + 3
                << "\" font-size=\"10\" text-anchor=\"end\">" << format_float(std::round(v * 100) / 100)
                << "</text>\n";
    }
    // diagonal a = b
    out << "<line x1=\"" << px(0) << "\" y1=\"" << py(0) << "\" x2=\"" << px(limit)
        << "\" y2=\"" << py(limit) << "\" stroke=\"gray\" stroke-dasharray=\"6,4\"/>\n";

    static const char* palette[] = {"#1b6ca8", "#c23b22", "#2a9d3f", "#8a4fbf",
                                     "#d47f00", "#0f8f8f", "#b0246e", "#6b6b2a"};
    std::map<std::pair<int, int>, std::vector<const FucikSample*>> curves;
    for (const auto& s : samples) curves[{s.k, s.nu}].push_back(&s);
    size_t color = 0;
    for (auto& [key, pts] : curves) {
        std::sort(pts.begin(), pts.end(),
                  [](const FucikSample* x, const FucikSample* y) { return x->theta < y->theta; });
        out << "<polyline fill=\"none\" stroke=\"" << palette[color % 8]
            << "\" stroke-width=\"1.5\" points=\"";
        bool open = false;
        for (const auto* s : pts) {
            if (!std::isfinite(s->point_a) || !std::isfinite(s->point_b) ||
                s->point_a > limit || s->point_b > limit) {
                if (open) { // break the line, restart a fresh polyline
                    out << "\"/>\n<polyline fill=\"none\" stroke=\"" << palette[color % 8]
                        << "\" stroke-width=\"1.5\" points=\"";
                    open = false;
                }
                continue;
            }
            out << px(s->point_a) << "," << py(s->point_b) << " ";
            open = true;
        }
        out << "\"/>\n";
        ++color;
    }
    out << "</svg>\n";
}

int cmd_fucik(const std::string& problem, int kmax, int grid, const std::string& out,
              const std::string& svg, bool allow_outside_cone) {
    const ProblemSpec spec = load_spec(problem, allow_outside_cone);
    const auto samples = trace_all(spec, kmax, default_theta_grid(grid));
    std::vector<std::vector<double>> rows;
    rows.reserve(samples.size());
    for (const auto& s : samples)
        rows.push_back({static_cast<double>(s.k), static_cast<double>(s.nu), s.theta,
                        s.lambda, s.point_a, s.point_b});
    write_csv(out, "k,nu,theta,lambda,a,b", rows);
    std::cout << "wrote " << rows.size() << " samples to " << out << "\n";
    if (!svg.empty()) {
        write_fucik_svg(svg, samples);
        std::cout << "wrote plot to " << svg << "\n";
    }
    return 0;
}

int cmd_classify(const std::string& problem, double a, double b, double lambda,
                 bool allow_outside_cone) {
    const ProblemSpec spec = load_spec(problem, allow_outside_cone);
    const LambdaClassification c = classify_lambda(spec, a, b, lambda);
    nlohmann::json j;
    switch (c.kind) {
    case IntervalKind::gap: j["kind"] = "gap"; break;
    case IntervalKind::split: j["kind"] = "split"; break;
    case IntervalKind::near_half_eigenvalue: j["kind"] = "near_half_eigenvalue"; break;
    }
    j["k"] = c.k;
    j["degree"] = c.degree ? nlohmann::json(*c.degree) : nlohmann::json(nullptr);
    j["b_sign"] = c.b_sign;
    j["bounds"] = {bound_json(c.lower), bound_json(c.upper)};
    if (c.kind == IntervalKind::split) {
        const ForcingFunction f = nonsolvable_forcing(spec, a, b, lambda);
        j["forcing"] = {{"x0", f.x0}, {"level", f.level}};
    }
    std::cout << j.dump(2) << "\n";
    return 0;
}

int write_solutions(const std::vector<ShootResult>& sols, const std::string& out,
                    const std::string& mode, const std::string& empty_message) {
    nlohmann::json summary;
    summary["mode"] = mode;
    summary["count"] = sols.size();
    summary["message"] = sols.empty() ? empty_message : "ok";
    auto list = nlohmann::json::array();
    for (size_t i = 0; i < sols.size(); ++i) {
        const auto& s = sols[i];
        const std::string csv = out + "_sol" + std::to_string(i) + ".csv";
        std::vector<std::vector<double>> rows;
        rows.reserve(s.trajectory.grid.size());
        for (size_t r = 0; r < s.trajectory.grid.size(); ++r)
            rows.push_back({s.trajectory.grid[r], s.trajectory.values[r],
                            s.trajectory.derivatives[r]});
        write_csv(csv, "x,u,du", rows);
        nlohmann::json rec;
        rec["csv"] = csv;
        rec["c"] = s.state.c;
        rec["d"] = s.state.d;
        rec["residual_minus"] = s.state.residual_minus;
        rec["residual_plus"] = s.state.residual_plus;
        rec["amplitude"] = s.trajectory.amplitude();
        rec["nodal"] = s.nodal ? nlohmann::json(nodal_text(s.nodal)) : nlohmann::json(nullptr);
        list.push_back(std::move(rec));
    }
    summary["solutions"] = std::move(list);
    const std::string spath = out + "_summary.json";
    std::ofstream sf(spath, std::ios::binary);
    if (!sf) throw Error("cannot open '" + spath + "' for writing");
    sf << summary.dump(2) << "\n";
    std::cout << summary["message"].get<std::string>() << ": " << sols.size()
              << " solution(s); summary in " << spath << "\n";
    return 0;
}

int cmd_solve(const std::string& problem, bool has_ab, double a, double b, double lambda,
              const std::string& f_text, const std::string& h_text,
              const std::string& nodal_text_arg, const std::string& out,
              bool allow_outside_cone) {
    const ProblemSpec spec = load_spec(problem, allow_outside_cone);
    const auto starts = multistart_lattice();
    const std::string empty_message =
        "search exhausted: no solution over the start lattice (not a non-existence proof)";

    if (!nodal_text_arg.empty()) {
        if (f_text.empty())
            throw InvalidProblem("--nodal needs a nonlinearity (--f family:params)");
        if (h_text != "zero")
            throw InvalidProblem("the nodal search solves -u'' = f(u); use --h zero");
        const NodalClass target = parse_nodal(nodal_text_arg);
        const Nonlinearity nl = parse_nonlinearity(f_text);
        const ShootResult sol = find_nodal(spec, nl, target.k, target.nu);
        return write_solutions({sol}, out, "nodal", empty_message);
    }
    if (!f_text.empty()) {
        if (has_ab)
            throw InvalidProblem(
                "choose one mode: --f for the nonlinear equation, or --a/--b/--lambda "
                "for the jumping linear one");
        const Nonlinearity nl = parse_nonlinearity(f_text);
        const Forcing h = parse_forcing(h_text);
        return write_solutions(solve_nonlinear(spec, nl, h, starts), out, "nonlinear",
                               empty_message);
    }
    if (!has_ab)
        throw InvalidProblem("solve needs either --f or all of --a, --b, --lambda");
    const Forcing h = parse_forcing(h_text);
    return write_solutions(solve_halflinear(spec, a, b, lambda, h, starts), out,
                           "halflinear", empty_message);
}

int cmd_branch(const std::string& problem, const std::string& f_text,
               const std::string& nodal_text_arg, int steps, const std::string& out,
               bool allow_outside_cone) {
    const ProblemSpec spec = load_spec(problem, allow_outside_cone);
    const Nonlinearity nl = parse_nonlinearity(f_text);
    const NodalClass target = parse_nodal(nodal_text_arg);
    const auto pts = continue_branch(spec, nl, target.k, target.nu, steps);
    std::vector<std::vector<double>> rows;
    rows.reserve(pts.size());
    for (const auto& p : pts) rows.push_back({p.lambda, p.amplitude, p.c, p.d});
    write_csv(out, "lambda,amplitude,c,d", rows);
    std::cout << "wrote " << rows.size() << " branch points to " << out << "\n";
    return 0;
}

int cmd_verify_examples() {
    const auto checks = verify_examples();
    bool all = true;
    for (const auto& c : checks) {
        all = all && c.passed;
        std::cout << (c.passed ? "PASS" : "FAIL") << "  " << c.name << "  (observed "
                  << format_float(c.observed) << ", bound " << format_float(c.bound) << ")";
        if (!c.detail.empty()) std::cout << "  " << c.detail;
        std::cout << "\n";
    }
    std::cout << (all ? "all checks passed" : "some checks FAILED") << "\n";
    return all ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"half-eigenvalues, Fucik curves, solvability certificates and nodal "
                 "solutions for -u'' = lambda(a u+ - b u-) with multi-point boundary "
                 "conditions u(+-1) = sum alpha_i u(eta_i)"};
    // long-only help: the forcing option is spelled --h, which would collide
    // with the default short help flag
    app.set_help_flag("--help", "print this help message and exit");
    app.require_subcommand(1);

    std::string problem, out, svg, f_text, h_text = "zero", nodal;
    double a = 0, b = 0, lambda = 0;
    int kmax = 5, grid = 101, steps = 200;
    bool allow_outside = false;

    auto* sp = app.add_subcommand("spectrum", "list half-eigenvalues up to level kmax");
    sp->add_option("--problem", problem, "problem JSON file")->required();
    sp->add_option("--a", a, "positive part coefficient")->required();
    sp->add_option("--b", b, "negative part coefficient")->required();
    sp->add_option("--kmax", kmax, "highest level to enumerate");
    sp->add_option("--out", out, "output CSV path")->required();
    sp->add_flag("--allow-outside-cone", allow_outside, "accept coefficients outside the positive cone");

    auto* fk = app.add_subcommand("fucik", "trace the curves of the two-coefficient spectrum");
    fk->add_option("--problem", problem, "problem JSON file")->required();
    fk->add_option("--kmax", kmax, "highest curve level");
    fk->add_option("--grid", grid, "number of ray angles (>= 3)");
    fk->add_option("--out", out, "output CSV path")->required();
    fk->add_option("--svg", svg, "also write an SVG plot here");
    fk->add_flag("--allow-outside-cone", allow_outside, "accept coefficients outside the positive cone");

    auto* cl = app.add_subcommand("classify", "classify lambda against the half-eigenvalue intervals");
    cl->add_option("--problem", problem, "problem JSON file")->required();
    cl->add_option("--a", a, "positive part coefficient")->required();
    cl->add_option("--b", b, "negative part coefficient")->required();
    cl->add_option("--lambda", lambda, "spectral parameter to classify")->required();
    cl->add_flag("--allow-outside-cone", allow_outside, "accept coefficients outside the positive cone");

    auto* sv = app.add_subcommand("solve", "shooting search for boundary value solutions");
    sv->add_option("--problem", problem, "problem JSON file")->required();
    auto* opt_a = sv->add_option("--a", a, "positive part coefficient");
    auto* opt_b = sv->add_option("--b", b, "negative part coefficient");
    auto* opt_l = sv->add_option("--lambda", lambda, "spectral parameter");
    sv->add_option("--f", f_text, "nonlinearity family (linear:c | rational_bump:f0,finf | atan_shift:finf,fminf,amp)");
    sv->add_option("--h", h_text, "forcing family (zero | one | step:x0[,level] | samples:path)");
    sv->add_option("--nodal", nodal, "search a nodal class k,{+,-} by branch continuation");
    sv->add_option("--out", out, "output prefix for per-solution CSVs and the JSON summary")->required();
    sv->add_flag("--allow-outside-cone", allow_outside, "accept coefficients outside the positive cone");

    auto* br = app.add_subcommand("branch", "trace a bifurcation branch of -u'' = lambda f(u)");
    br->add_option("--problem", problem, "problem JSON file")->required();
    br->add_option("--f", f_text, "nonlinearity family with a declared f0")->required();
    br->add_option("--nodal", nodal, "branch label k,{+,-}")->required();
    br->add_option("--steps", steps, "maximum continuation steps");
    br->add_option("--out", out, "output CSV path")->required();
    br->add_flag("--allow-outside-cone", allow_outside, "accept coefficients outside the positive cone");

    auto* ve = app.add_subcommand("verify-examples",
                                  "golden checks of the two closed-form boundary instances");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2; // parse problems are input validation
    }

    return run_guarded([&]() -> int {
        if (sp->parsed()) return cmd_spectrum(problem, a, b, kmax, out, allow_outside);
        if (fk->parsed()) return cmd_fucik(problem, kmax, grid, out, svg, allow_outside);
        if (cl->parsed()) return cmd_classify(problem, a, b, lambda, allow_outside);
        if (sv->parsed()) {
            const bool has_ab = opt_a->count() && opt_b->count() && opt_l->count();
            if ((opt_a->count() || opt_b->count() || opt_l->count()) && !has_ab &&
                f_text.empty())
                throw InvalidProblem("the jumping linear mode needs all of --a, --b, --lambda");
            return cmd_solve(problem, has_ab, a, b, lambda, f_text, h_text, nodal, out,
                             allow_outside);
        }
        if (br->parsed()) return cmd_branch(problem, f_text, nodal, steps, out, allow_outside);
        if (ve->parsed()) return cmd_verify_examples();
        return 2;
    });
}
