// Command-line front end: solve, table, check, eval.
//
//   cornerlayer solve --problem example23 --eps 2^-12 --N 64 --M 64 --out run/
//   cornerlayer table --problem example23 --N 64,128,256 --out table.csv
//   cornerlayer check --problem example23
//   cornerlayer eval  --problem example23 --eps 2^-12 --N 64 --M 64 --at 0.1,0.01
//
// Exit codes: 0 success, 1 configuration or IO error, 2 numerical breakdown.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "cornerlayer/harness.hpp"
#include "cornerlayer/interp.hpp"
#include "cornerlayer/io.hpp"

namespace fs = std::filesystem;
using namespace cornerlayer;

namespace {

struct CommonOptions {
    std::string problem = "example23";
    std::string eps;
    std::string beta;
};

ProblemSpec load_problem(const CommonOptions& o) {
    ProblemSource src = load_problem_source(o.problem);
    if (!o.eps.empty()) src.eps = parse_real_literal(o.eps);
    if (!o.beta.empty()) {
        if (o.beta == "auto") src.beta.reset();
        else src.beta = parse_real_literal(o.beta);
    }
    return make_problem(src);
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            std::size_t used = 0;
            const int v = std::stoi(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw ConfigError("malformed integer '" + item + "'");
        }
    }
    return out;
}

std::string number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void print_condition(const ConditionResult& c) {
    std::cout << "  " << c.name << ": ";
    if (!c.available()) {
        std::cout << "unavailable (missing";
        for (const auto& m : c.missing) std::cout << ' ' << m;
        std::cout << ")\n";
        return;
    }
    std::cout << (c.satisfied() ? "satisfied" : "VIOLATED") << "  residual=" << number(*c.residual) << '\n';
}

int run_check(const CommonOptions& common) {
    const ProblemSpec p = load_problem(common);
    const CompatibilityReport report = check_compatibility(p);
    const Amplitudes a = amplitudes(p);
    std::cout << "compatibility report (eps=" << number(p.eps) << ", tolerance " << kCompatibilityTolerance
              << " relative)\n";
    for (const ConditionResult* c : report.all()) print_condition(*c);
    std::cout << "amplitudes\n  A0=" << number(a.A0) << '\n';
    std::cout << "  A1=" << (a.A1 ? number(*a.A1) : "unavailable") << '\n';
    std::cout << "  A2=" << (a.A2 ? number(*a.A2) : "unavailable") << '\n';
    if (a.A1) std::cout << "  eps*A1=" << number(p.eps * *a.A1) << '\n';
    if (a.A2) std::cout << "  eps^2*A2=" << number(p.eps * p.eps * *a.A2) << '\n';
    return 0;
}

struct SolveOptions {
    int N = 64;
    int M = 64;
    std::string out = "solution";
    bool reconstructed = false;
    bool dump_mesh = false;
    bool plot_data = false;
    bool no_timing = false;
};

int run_solve(const CommonOptions& common, const SolveOptions& o) {
    const ProblemSpec p = load_problem(common);
    auto mesh = std::make_shared<const TensorMesh>(shishkin_mesh(o.N, o.M, p.eps, p.beta, p.T));

    const auto start = std::chrono::steady_clock::now();
    const GridFunction Y = solve_y(p, mesh);
    const double A0 = amplitude_A0(p);
    const GridFunction U = reconstruct_u(Y, A0, p);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const fs::path dir(o.out);
    write_text(dir / "solution_Y.csv", solution_csv(Y));
    write_text(dir / "solution_U.csv", solution_csv(U));
    nlohmann::json meta = metadata_json({p.eps, p.beta, p.T, o.N, o.M, mesh->sigma, mesh->tau, A0, secs});
    if (o.no_timing) meta.erase("wall_time_seconds");
    write_text(dir / "metadata.json", meta.dump(2) + "\n");

    if (o.dump_mesh) {
        write_text(dir / "mesh_x.csv", mesh_csv(mesh->space));
        write_text(dir / "mesh_t.csv", mesh_csv(mesh->time));
    }
    if (o.plot_data) {
        const GridFunction& shown = o.reconstructed ? U : Y;
        const double xz = 4.0 * mesh->sigma;
        const double tz = 4.0 * mesh->tau;
        write_text(dir / "figure1_full.csv", solution_csv(U));
        write_text(dir / "figure1_zoom.csv", solution_csv_window(U, xz, tz));

        auto fine_mesh = std::make_shared<const TensorMesh>(two_mesh_pair(p, o.N, o.M, FineTimeTransition::Coarse).second);
        GridFunction fine = solve_y(p, fine_mesh);
        if (o.reconstructed) fine = reconstruct_u(fine, A0, p);
        const GridFunction diffs = nodal_differences(shown, fine);
        write_text(dir / "figure2_full.csv", solution_csv(diffs));
        write_text(dir / "figure2_zoom.csv", solution_csv_window(diffs, xz, tz));
    }
    std::cerr << "solved N=" << o.N << " M=" << o.M << " eps=" << number(p.eps) << " in " << secs << " s; wrote "
              << dir.string() << '\n';
    return 0;
}

struct TableCliOptions {
    std::string Ns = "64,128,256,512,1024,2048,4096";
    std::string Ms;
    int m_divisor = 4;
    int eps_min = 0;
    int eps_max = 30;
    std::string eps_list;
    std::string out;
    std::string format = "csv";
    bool reconstructed = false;
    bool own_tau = false;
    unsigned threads = 0;
    bool quiet = false;
};

int run_table(const CommonOptions& common, const TableCliOptions& o) {
    const ProblemSpec p = load_problem(common);
    TableOptions t;
    t.Ns = parse_int_list(o.Ns);
    if (t.Ns.empty()) throw ConfigError("empty N list");
    if (!o.Ms.empty()) t.Ms = parse_int_list(o.Ms);
    t.m_divisor = o.m_divisor;
    if (!o.eps_list.empty()) {
        t.eps_exponents = parse_int_list(o.eps_list);
    } else {
        if (o.eps_max < o.eps_min) throw ConfigError("--eps-max below --eps-min");
        for (int k = o.eps_min; k <= o.eps_max; ++k) t.eps_exponents.push_back(k);
    }
    t.reconstructed = o.reconstructed;
    t.fine_tau = o.own_tau ? FineTimeTransition::Own : FineTimeTransition::Coarse;
    t.threads = o.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : o.threads;
    if (!o.quiet) {
        t.progress = [](int k, double secs) { std::cerr << "  eps=2^-" << k << " done in " << secs << " s\n"; };
    }

    const ConvergenceTable table = build_table(p, t);
    const std::string text = emit(table, o.format == "pretty" ? TableFormat::Pretty : TableFormat::Csv);
    if (o.out.empty()) std::cout << text;
    else write_text(o.out, text);
    return 0;
}

struct EvalOptions {
    int N = 64;
    int M = 64;
    std::vector<std::string> points;
    bool reconstructed = false;
};

int run_eval(const CommonOptions& common, const EvalOptions& o) {
    const ProblemSpec p = load_problem(common);
    auto mesh = std::make_shared<const TensorMesh>(shishkin_mesh(o.N, o.M, p.eps, p.beta, p.T));
    GridFunction Y = solve_y(p, mesh);
    if (o.reconstructed) Y = reconstruct_u(Y, amplitude_A0(p), p);
    std::cout << "x,t," << (o.reconstructed ? "U" : "Y") << '\n';
    for (const auto& pt : o.points) {
        const auto comma = pt.find(',');
        if (comma == std::string::npos) throw ConfigError("point '" + pt + "' must be x,t");
        double x = 0.0, t = 0.0;
        try {
            x = parse_real_literal(pt.substr(0, comma));
            t = parse_real_literal(pt.substr(comma + 1));
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
        std::cout << number(x) << ',' << number(t) << ',' << number(bilinear_eval(Y, x, t)) << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Singularly perturbed parabolic problems with incompatible corner data"};
    app.require_subcommand(1);

    CommonOptions common;
    auto add_common = [&common](CLI::App* cmd) {
        cmd->add_option("--problem", common.problem, "builtin name (example23) or JSON problem file");
        cmd->add_option("--eps", common.eps, "override eps, decimal or 2^-k");
        cmd->add_option("--beta", common.beta, "override beta, number or 'auto'");
    };

    SolveOptions solve;
    auto* solve_cmd = app.add_subcommand("solve", "solve on one Shishkin mesh and write CSV + metadata");
    add_common(solve_cmd);
    solve_cmd->add_option("--N", solve.N, "space intervals (multiple of 4)");
    solve_cmd->add_option("--M", solve.M, "time steps (even)");
    solve_cmd->add_option("--out", solve.out, "output directory");
    solve_cmd->add_flag("--reconstructed", solve.reconstructed, "two-mesh plot data for U instead of Y");
    solve_cmd->add_flag("--dump-mesh", solve.dump_mesh, "write mesh_x.csv and mesh_t.csv");
    solve_cmd->add_flag("--plot-data", solve.plot_data, "write surface and two-mesh difference data, full and corner zoom");
    solve_cmd->add_flag("--no-timing", solve.no_timing, "omit wall time from metadata.json");

    TableCliOptions table;
    auto* table_cmd = app.add_subcommand("table", "two-mesh convergence table over an eps sweep");
    add_common(table_cmd);
    table_cmd->add_option("--N", table.Ns, "comma-separated N list");
    table_cmd->add_option("--M", table.Ms, "comma-separated M list (default M = N / m-divisor)");
    table_cmd->add_option("--m-divisor", table.m_divisor, "pair M = N / divisor");
    table_cmd->add_option("--eps-min", table.eps_min, "smallest k in eps = 2^-k");
    table_cmd->add_option("--eps-max", table.eps_max, "largest k in eps = 2^-k");
    table_cmd->add_option("--eps-list", table.eps_list, "comma-separated k values, overrides the range");
    table_cmd->add_option("--out", table.out, "CSV output path (default stdout)");
    table_cmd->add_option("--format", table.format, "csv or pretty")->check(CLI::IsMember({"csv", "pretty"}));
    table_cmd->add_flag("--reconstructed", table.reconstructed, "compare U = A0 z0 + Y instead of Y");
    table_cmd->add_flag("--own-tau", table.own_tau, "fine mesh recomputes tau with ln 2M instead of reusing the coarse tau");
    table_cmd->add_option("--threads", table.threads, "worker threads (0 = hardware)");
    table_cmd->add_flag("--quiet", table.quiet, "no progress on stderr");

    auto* check_cmd = app.add_subcommand("check", "print compatibility diagnostics and amplitudes");
    add_common(check_cmd);

    EvalOptions ev;
    auto* eval_cmd = app.add_subcommand("eval", "evaluate the bilinear interpolant at points");
    add_common(eval_cmd);
    eval_cmd->add_option("--N", ev.N, "space intervals (multiple of 4)");
    eval_cmd->add_option("--M", ev.M, "time steps (even)");
    eval_cmd->add_option("--at", ev.points, "point x,t (repeatable)")->required();
    eval_cmd->add_flag("--reconstructed", ev.reconstructed, "evaluate U instead of Y");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*solve_cmd) return run_solve(common, solve);
        if (*table_cmd) return run_table(common, table);
        if (*check_cmd) return run_check(common);
        if (*eval_cmd) return run_eval(common, ev);
    } catch (const NumericalBreakdown& e) {
        std::cerr << "numerical breakdown: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
