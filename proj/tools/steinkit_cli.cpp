// steinkit command-line front-end: analyze / solve / bench over JSON
// equation files. Reports are JSON on stdout; diagnostics go to stderr.
//
// Exit codes: 0 ok, 2 parse error, 3 dimension error, 4 unsolvable,
// 5 non-unique without --general, 6 no convergence, 1 other failure.

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "steinkit/io.hpp"
#include "steinkit/steinkit.hpp"

namespace {

using namespace steinkit;

constexpr int kExitParse = 2;
constexpr int kExitDimension = 3;
constexpr int kExitUnsolvable = 4;
constexpr int kExitNotUnique = 5;
constexpr int kExitNoConvergence = 6;

std::string num(double x) {
    if (std::isinf(x)) return x > 0 ? "\"inf\"" : "\"-inf\"";
    return detail::format_number(x);
}

std::string opt_num(const std::optional<double>& x) { return x ? num(*x) : "null"; }

std::string opt_bool(const std::optional<bool>& b) {
    if (!b) return "null";
    return *b ? "true" : "false";
}

std::string report_json(const AnalysisReport& rep) {
    std::ostringstream os;
    os << "{\"solvable\":" << (rep.solvable ? "true" : "false")
       << ",\"unique_exact\":" << opt_bool(rep.unique_exact)
       << ",\"unique_sufficient\":" << (rep.unique_sufficient ? "true" : "false")
       << ",\"dof_real\":" << (rep.dof_real ? std::to_string(*rep.dof_real) : "null")
       << ",\"rho_product\":" << num(rep.rho_product)
       << ",\"predicted_rate\":" << opt_num(rep.predicted_rate)
       << ",\"lifted_dim\":" << rep.lifted_dim << "}";
    return os.str();
}

double default_tol(double fallback) {
    if (const char* env = std::getenv("STEINKIT_TOL")) {
        try {
            return std::stod(env);
        } catch (...) {
            std::cerr << "warning: ignoring malformed STEINKIT_TOL\n";
        }
    }
    return fallback;
}

int cmd_analyze(const std::string& path, double tol) {
    const EquationSpec spec = load_equation_file(path);
    std::cout << report_json(analyze(spec, tol)) << "\n";
    return 0;
}

struct MethodSpec {
    std::string name; // smith | smith-l | r-smith | closed | lifted | auto
    unsigned param = 0;
};

MethodSpec parse_method(const std::string& raw) {
    MethodSpec m;
    const auto open = raw.find('(');
    if (open == std::string::npos) {
        m.name = raw;
        return m;
    }
    if (raw.back() != ')') throw ParseError("method: malformed '" + raw + "'");
    m.name = raw.substr(0, open);
    m.param = static_cast<unsigned>(std::stoul(raw.substr(open + 1, raw.size() - open - 2)));
    return m;
}

IterationTrace run_iteration(const EquationSpec& spec, const MethodSpec& m,
                             const SolveOptions& base) {
    SolveOptions opts = base;
    if (m.name == "smith") return smith(spec, opts);
    if (m.name == "smith-l") {
        if (m.param) opts.l = m.param;
        return smith_l(spec, opts);
    }
    if (m.name == "r-smith") {
        if (m.param) opts.r = m.param;
        return r_smith(spec, opts);
    }
    throw ParseError("method: unknown iteration '" + m.name + "'");
}

int cmd_solve(const std::string& path, const std::string& method, const SolveOptions& opts,
              bool general, double tol) {
    const EquationSpec spec = load_equation_file(path);

    if (general) {
        GeneralSolution sol = general_solution(spec, tol);
        std::cout << "{\"X\":" << to_json(sol.particular) << ",\"residual\":"
                  << num(residual(spec, sol.particular)) << ",\"basis\":[";
        for (std::size_t i = 0; i < sol.basis.size(); ++i)
            std::cout << (i ? "," : "") << to_json(sol.basis[i]);
        std::cout << "],\"parameter_field\":\""
                  << (sol.field == ParameterField::real_params ? "real" : "complex") << "\"}"
                  << "\n";
        return 0;
    }

    CMatrix x = CMatrix::zero(1, 1);
    if (method == "closed")
        x = solve_unique(spec, SolveRoute::charpoly);
    else if (method == "lifted")
        x = solve_unique(spec, SolveRoute::lifted);
    else if (method == "auto")
        x = solve_unique(spec, SolveRoute::automatic);
    else
        x = run_iteration(spec, parse_method(method), opts).iterate;

    std::cout << "{\"X\":" << to_json(x) << ",\"residual\":" << num(residual(spec, x)) << "}"
              << "\n";
    return 0;
}

int cmd_bench(const std::string& path, const std::string& methods, const SolveOptions& opts) {
    const EquationSpec spec = load_equation_file(path);

    std::vector<std::string> names;
    std::stringstream ss(methods);
    for (std::string tok; std::getline(ss, tok, ',');)
        if (!tok.empty()) names.push_back(tok);
    if (names.empty()) throw ParseError("--methods: empty list");

    bool any_converged = false;
    std::ostringstream rows;
    for (std::size_t i = 0; i < names.size(); ++i) {
        const MethodSpec m = parse_method(names[i]);
        IterationTrace trace;
        bool converged = true;
        try {
            trace = run_iteration(spec, m, opts);
        } catch (const NoConvergence& e) {
            trace = e.trace;
            converged = false;
        } catch (const DivergenceDetected& e) {
            trace = e.trace;
            converged = false;
        } catch (const PrecheckFailed&) {
            converged = false;
        }
        any_converged = any_converged || converged;
        rows << (i ? "," : "") << "{\"method\":\"" << names[i] << "\""
             << ",\"converged\":" << (converged ? "true" : "false")
             << ",\"steps\":" << trace.steps
             << ",\"empirical_rate\":" << opt_num(trace.empirical_rate)
             << ",\"predicted_rate\":" << opt_num(trace.predicted_rate) << "}";
    }
    std::cout << "{\"rows\":[" << rows.str() << "]}" << "\n";
    if (!any_converged) {
        std::cerr << "error: no method converged\n";
        return kExitNoConvergence;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"steinkit: analyze and solve X = A f(X) B + C"};
    app.require_subcommand(1);

    std::string path, method = "auto", methods = "smith,smith-l,r-smith";
    double tol = default_tol(1e-10);
    double analyze_tol = default_tol(0.0);
    SolveOptions opts;
    opts.tol = tol;
    bool general = false;

    CLI::App* analyze_cmd = app.add_subcommand("analyze", "solvability/uniqueness report");
    analyze_cmd->add_option("file", path, "equation JSON file")->required();
    analyze_cmd->add_option("--tol", analyze_tol, "rank threshold (0 = automatic)");

    CLI::App* solve_cmd = app.add_subcommand("solve", "compute a solution");
    solve_cmd->add_option("file", path, "equation JSON file")->required();
    solve_cmd->add_option("--method", method,
                          "closed | lifted | auto | smith | smith-l | r-smith");
    solve_cmd->add_option("--tol", opts.tol, "residual tolerance");
    solve_cmd->add_option("--max-iter", opts.max_iter, "iteration cap");
    solve_cmd->add_option("--l", opts.l, "Smith(l) block length");
    solve_cmd->add_option("--r", opts.r, "r-Smith base");
    solve_cmd->add_flag("--general", general, "emit the full solution family");

    CLI::App* bench_cmd = app.add_subcommand("bench", "empirical vs predicted rates");
    bench_cmd->add_option("file", path, "equation JSON file")->required();
    bench_cmd->add_option("--methods", methods, "comma list, e.g. smith,smith-l(3),r-smith(2)");
    bench_cmd->add_option("--steps", opts.max_iter, "iteration cap");
    bench_cmd->add_option("--tol", opts.tol, "residual tolerance");

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze_cmd->parsed()) return cmd_analyze(path, analyze_tol);
        if (solve_cmd->parsed()) return cmd_solve(path, method, opts, general, opts.tol);
        return cmd_bench(path, methods, opts);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const DimensionError& e) {
        std::cerr << "dimension error: " << e.what() << "\n";
        return kExitDimension;
    } catch (const NotSolvable& e) {
        std::cerr << "unsolvable: " << e.what() << "\n";
        return kExitUnsolvable;
    } catch (const NotUnique& e) {
        std::cerr << "not unique: " << e.what() << " (use --general for the family)\n";
        return kExitNotUnique;
    } catch (const NoConvergence& e) {
        std::cerr << "no convergence: " << e.what() << "\n";
        return kExitNoConvergence;
    } catch (const DivergenceDetected& e) {
        std::cerr << "divergence: " << e.what() << "\n";
        return kExitNoConvergence;
    } catch (const PrecheckFailed& e) {
        std::cerr << "precheck failed: " << e.what() << "\n";
        return kExitNoConvergence;
    } catch (const SingularDenominator& e) {
        std::cerr << "closed form unavailable: " << e.what()
                  << " (try --method lifted)\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
