#include "raqmod/analysis.hpp"
#include "raqmod/errors.hpp"
#include "raqmod/forms.hpp"
#include "raqmod/json_io.hpp"
#include "raqmod/lattice.hpp"
#include "raqmod/operators.hpp"
#include "raqmod/parallel.hpp"
#include "raqmod/primitives.hpp"
#include "raqmod/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace raqmod;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

const char* kSchemas = R"(JSON schemas:
  scalar  {"terms":[{"zetas":[3,3],"symbols":["c"],"rat":"-1/2"}]}
  series  {"weights":[r,s],"order":N,"terms":[{"m":0,"n":0,"k":1,"coeff":<scalar>}]}
          terms sorted by (m,n,k); the series is exact modulo q^{N+1}, qbar^{N+1}
  family  {"r,s":<series>,...,"constants":[names]}
  graph   {"vertices":["v1","v2"],"edges":[{"tail":"v1","head":"v2"},{"tail":null,"head":"v1"}]}
          a null endpoint is a half-edge
  numeric {"value":...,"error_estimate":...,"config":{...}}
  report  {"suite":name,"status":"pass"|"fail","checks":[{"id","status","kind","measured","threshold","detail"}]}

Exit codes: 0 success, 1 verification failure or obstructed primitive, 2 usage or input error.
RAQMOD_CACHE_DIR, when set, caches named forms on disk as series JSON.)";

json read_json_file(const std::string& path)
{
    std::ifstream is(path);
    if (!is)
        throw InputError("cannot open '" + path + "'");
    try {
        return json::parse(is);
    } catch (const json::exception& e) {
        throw InputError("malformed JSON in '" + path + "': " + e.what());
    }
}

RAForm read_form(const std::string& path)
{
    try {
        return series_from_json(read_json_file(path));
    } catch (const json::exception& e) {
        throw InputError("bad series in '" + path + "': " + e.what());
    }
}

void emit(const json& j, const std::string& out)
{
    const std::string text = dump_json(j) + "\n";
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(out);
    if (!os)
        throw InputError("cannot write '" + out + "'");
    os << text;
}

cplx parse_point(const std::string& s)
{
    std::istringstream is(s);
    double x = 0, y = 0;
    char comma = 0;
    if (!(is >> x >> comma >> y) || comma != ',' || y <= 0)
        throw InputError("--z expects x,y with y > 0, got '" + s + "'");
    return {x, y};
}

json complex_json(cplx v) { return json{{"re", v.real()}, {"im", v.imag()}}; }

SymbolValues parse_symbols(const std::vector<std::string>& defs)
{
    SymbolValues out;
    for (const auto& d : defs) {
        const auto eq = d.find('=');
        if (eq == std::string::npos)
            throw InputError("--symbol expects name=value, got '" + d + "'");
        try {
            out[d.substr(0, eq)] = std::stod(d.substr(eq + 1));
        } catch (const std::exception&) {
            throw InputError("--symbol value is not a number: '" + d + "'");
        }
    }
    return out;
}

struct Globals {
    int order = -1;
    int cutoff = -1;
    double tolerance = -1;
    int jobs = default_jobs();
};

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact and numeric toolkit for real-analytic modular forms"};
    app.footer(kSchemas);
    app.require_subcommand(1);
    Globals g;
    app.add_option("--order", g.order, "series truncation order N (default per command)")->check(CLI::NonNegativeNumber);
    app.add_option("--cutoff", g.cutoff, "lattice cutoff M (default per command)")->check(CLI::PositiveNumber);
    app.add_option("--tolerance", g.tolerance, "numeric tolerance (default per command)")->check(CLI::PositiveNumber);
    app.add_option("--jobs", g.jobs, "worker threads; results do not depend on it")->check(CLI::PositiveNumber);
    app.fallthrough();

    int code = kExitOk;
    std::string out;

    auto* expand = app.add_subcommand("expand", "q-expansion of a named form: G<k>, G2star, m, delta, E:r,s");
    std::string form_name;
    expand->add_option("--form", form_name)->required();
    expand->add_option("--out", out, "output file (default stdout)");
    expand->callback([&] {
        emit(series_to_json(named_form(form_name, g.order >= 0 ? g.order : 10)), out);
    });

    auto* apply = app.add_subcommand("apply", "apply an operator to series JSON");
    std::string op, in, in2;
    apply->add_option("--op", op)->required()->check(CLI::IsMember({"del", "dbar", "laplace", "h", "rc1", "rc2", "sym2"}));
    apply->add_option("--in", in)->required();
    apply->add_option("--in2", in2, "second argument of rc1, rc2, sym2");
    apply->add_option("--out", out);
    apply->callback([&] {
        const RAForm f = read_form(in);
        const bool binary = op == "rc1" || op == "rc2" || op == "sym2";
        if (binary && in2.empty())
            throw InputError("--op " + op + " needs --in2");
        RAForm r;
        if (op == "del")
            r = del(f);
        else if (op == "dbar")
            r = dbar(f);
        else if (op == "laplace")
            r = laplace(f);
        else if (op == "h")
            r = h_op(f);
        else {
            const RAForm h = read_form(in2);
            r = op == "rc1" ? rc_bracket1(f, h) : op == "rc2" ? rc_bracket2(f, h) : sym_bracket2(f, h);
        }
        emit(series_to_json(r), out);
    });

    auto* solve = app.add_subcommand("solve", "combinatorial primitive F with del F = f");
    int target_r = 0;
    solve->add_option("--in", in)->required();
    solve->add_option("--target-r", target_r, "weight r of the primitive; f must have weights (r+1, s-1)")->required();
    solve->add_option("--out", out);
    solve->callback([&] {
        const auto sol = solve_del_primitive(read_form(in), target_r, false);
        emit(json{{"status", sol.ok() ? "ok" : "obstructed"},
                  {"primitive", series_to_json(sol.primitive)},
                  {"free_parameters", sol.free_parameters},
                  {"obstructions", sol.obstruction_report}},
             out);
        if (!sol.ok())
            code = kExitFail;
    });

    auto* deis = app.add_subcommand("double-eis", "equivariant double Eisenstein family F^(k) for (a,b)");
    int a = 1, b = 1, k = 0;
    deis->add_option("--a", a)->required()->check(CLI::PositiveNumber);
    deis->add_option("--b", b)->required()->check(CLI::PositiveNumber);
    deis->add_option("--k", k)->required()->check(CLI::NonNegativeNumber);
    deis->add_option("--out", out);
    deis->callback([&] {
        const auto fam = build_double_eisenstein(a, b, k, g.order >= 0 ? g.order : 12);
        emit(family_to_json(fam.members, fam.undetermined_constants), out);
    });

    auto* eval = app.add_subcommand("eval", "evaluate series JSON at a point");
    std::string zs;
    std::vector<std::string> symbols;
    eval->add_option("--in", in)->required();
    eval->add_option("--z", zs, "x,y")->required();
    eval->add_option("--symbol", symbols, "name=value for a named constant");
    eval->callback([&] {
        EvalConfig cfg;
        cfg.symbols = parse_symbols(symbols);
        if (g.tolerance > 0)
            cfg.target_abs_error = g.tolerance;
        const RAForm f = read_form(in);
        const cplx z = parse_point(zs);
        const NumericSeries ns = compile_series(f, cfg);
        const cplx v = eval_series(ns, z, cfg.target_abs_error);
        emit(json{{"value", complex_json(v)},
                  {"error_estimate", tail_bound(ns, z) + cfg.zeta_error * std::abs(v)},
                  {"modularity_residual", modularity_residual(ns, z, cfg.target_abs_error)},
                  {"config", {{"z", complex_json(z)}, {"order", f.order()}, {"target_abs_error", cfg.target_abs_error}}}},
             out);
    });

    auto* gsum = app.add_subcommand("graph-sum", "Richardson-extrapolated lattice sum I_G");
    std::string graph;
    gsum->add_option("--graph", graph, "graph JSON file, or the built-in names c111, c211")->required();
    gsum->add_option("--z", zs, "x,y")->required();
    gsum->add_flag("--json", "JSON output (always on)");
    gsum->add_option("--out", out);
    gsum->callback([&] {
        GraphSpec spec;
        if (graph == "c111")
            spec = graph_c111();
        else if (graph == "c211")
            spec = graph_c211();
        else {
            try {
                spec = graph_from_json(read_json_file(graph));
            } catch (const json::exception& e) {
                throw InputError("bad graph in '" + graph + "': " + e.what());
            }
        }
        const int M = g.cutoff > 0 ? g.cutoff : 50;
        json j = lattice_to_json(graph_sum(spec, parse_point(zs), M, g.jobs));
        j["config"] = {{"graph", graph_to_json(canonical_graph(spec))}, {"z", complex_json(parse_point(zs))},
                       {"cutoff", M}};
        emit(j, out);
    });

    auto* pet = app.add_subcommand("petersson", "Petersson pairing over the truncated fundamental domain");
    std::string fpath, gpath;
    int n = 12;
    QuadratureGrid grid;
    pet->add_option("--f", fpath)->required();
    pet->add_option("--g", gpath)->required();
    pet->add_option("--n", n, "weight n = r_f + s_g");
    pet->add_option("--nx", grid.nx)->check(CLI::PositiveNumber);
    pet->add_option("--ny", grid.ny)->check(CLI::PositiveNumber);
    pet->add_option("--y-max", grid.y_max)->check(CLI::PositiveNumber);
    pet->add_option("--symbol", symbols, "name=value for a named constant");
    pet->add_option("--out", out);
    pet->callback([&] {
        EvalConfig cfg;
        cfg.symbols = parse_symbols(symbols);
        const PeterssonResult r = petersson(read_form(fpath), read_form(gpath), n, grid, cfg, g.jobs);
        emit(json{{"value", complex_json(r.value)},
                  {"error_estimate", r.error_estimate},
                  {"abs_integral", r.abs_integral},
                  {"config", {{"n", n}, {"nx", grid.nx}, {"ny", grid.ny}, {"y_max", grid.y_max}}}},
             out);
    });

    auto* ver = app.add_subcommand("verify", "run a verification suite");
    std::string suite;
    VerifyOptions vopt;
    ver->add_option("--suite", suite)->required()->check(CLI::IsMember(suite_names()));
    ver->add_option("--samples", vopt.samples, "random inputs per property")->check(CLI::PositiveNumber);
    ver->add_option("--seed", vopt.seed);
    ver->add_option("--out", out);
    ver->callback([&] {
        vopt.order = g.order;
        vopt.cutoff = g.cutoff;
        vopt.tolerance = g.tolerance;
        vopt.jobs = g.jobs;
        const VerifyReport rep = run_suite(suite, vopt);
        emit(report_to_json(rep), out);
        if (!rep.passed())
            code = kExitFail;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << dump_json(json{{"error", e.what()}}) << "\n";
        return kExitUsage;
    }
    return code;
}
