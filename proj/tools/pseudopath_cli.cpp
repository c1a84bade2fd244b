// pseudopath: command line surface over the library. One command per
// invocation; JSON artifacts use [re, im] pairs for complex numbers.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "pseudopath/oscillatory.hpp"
#include "pseudopath/path_functional.hpp"
#include "pseudopath/semigroup.hpp"

using json = nlohmann::json;
using namespace pseudopath;

namespace {

int g_threads = 1; // PSEUDOPATH_THREADS cap; current kernels are single threaded

json to_json(cd z) { return json::array({z.real(), z.imag()}); }

cd complex_from(const json& j) {
    if (!j.is_array() || j.size() != 2)
        throw std::runtime_error("complex values must be [re, im] arrays");
    return cd(j.at(0).get<double>(), j.at(1).get<double>());
}

json atoms_to_json(const AtomicComplexMeasure& m) {
    json out = json::array();
    for (const auto& a : m.atoms) out.push_back({{"y", a.y}, {"w", to_json(a.w)}});
    return out;
}

AtomicComplexMeasure atoms_from_json(const json& j, std::size_t dim) {
    std::vector<Atom> atoms;
    for (const auto& item : j) {
        Atom a;
        a.y = item.at("y").get<std::vector<double>>();
        a.w = complex_from(item.at("w"));
        atoms.push_back(std::move(a));
    }
    return AtomicComplexMeasure(dim, std::move(atoms));
}

json cylinder_to_json(const CylinderFunction& f) {
    return {{"horizon", f.grid.horizon},
            {"times", f.grid.times},
            {"atoms", atoms_to_json(f.fourier)}};
}

CylinderFunction cylinder_from_json(const json& j) {
    TimeGrid grid(j.at("horizon").get<double>(), j.at("times").get<std::vector<double>>());
    const std::size_t dim = grid.size();
    return CylinderFunction(grid, atoms_from_json(j.at("atoms"), dim));
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return json::parse(in);
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

void write_json(const std::string& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

EvolutionSpec make_spec(int p, const std::vector<double>& alpha) {
    return EvolutionSpec(p, cd(alpha.at(0), alpha.at(1)));
}

Grid1D make_grid(const std::vector<double>& g) {
    return Grid1D(g.at(0), g.at(1), static_cast<std::size_t>(g.at(2)));
}

int config_error(const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
}

int run_error(const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
}

// ---- kernel ---------------------------------------------------------------

int cmd_kernel(int p, std::vector<double> alpha, double t, std::vector<double> grid_spec,
               const std::string& out) {
    EvolutionSpec spec;
    Grid1D grid;
    try {
        spec = make_spec(p, alpha);
        grid = make_grid(grid_spec);
    } catch (const std::exception& e) {
        return config_error(e);
    }
    try {
        auto k = compute_kernel(spec, t, grid);
        std::ostringstream csv;
        write_kernel_csv(k, csv);
        write_text(out, csv.str());
    } catch (const std::exception& e) {
        return run_error(e);
    }
    return 0;
}

// ---- tvgrowth -------------------------------------------------------------

int cmd_tvgrowth(int p, std::vector<double> alpha, double t, std::size_t n,
                 std::vector<double> grid_spec, const std::string& out) {
    EvolutionSpec spec;
    Grid1D grid;
    try {
        spec = make_spec(p, alpha);
        grid = grid_spec.empty() ? recommended_grid(spec, 1.0) : make_grid(grid_spec);
    } catch (const std::exception& e) {
        return config_error(e);
    }
    try {
        auto rep = marginal_variation(spec, t, n, grid);
        write_json(out, {{"p", p},
                         {"alpha", to_json(spec.alpha)},
                         {"t", t},
                         {"n", n},
                         {"per_slice_tv", rep.per_slice_tv},
                         {"total", rep.total},
                         {"verdict", to_string(rep.verdict)}});
    } catch (const std::exception& e) {
        return run_error(e);
    }
    return 0;
}

// ---- fk -------------------------------------------------------------------

int cmd_fk(int p, std::vector<double> alpha, double t, std::size_t nslices,
           std::vector<double> grid_spec, const std::string& u0_path,
           const std::string& pot_path, const std::string& out, const std::string& report_path) {
    PathFunctionalSpec pf;
    Grid1D grid;
    InitialDatum u0;
    PotentialSpec V;
    try {
        pf = PathFunctionalSpec(make_spec(p, alpha), t);
        grid = make_grid(grid_spec);
        u0 = InitialDatum(atoms_from_json(load_json_file(u0_path).at("atoms"), 1));
        if (!pot_path.empty())
            V = PotentialSpec(atoms_from_json(load_json_file(pot_path).at("atoms"), 1));
        if (nslices == 0) throw InadmissibleSpec("fk: nslices must be positive");
    } catch (const std::exception& e) {
        return config_error(e);
    }
    try {
        auto u = fk_time_sliced(pf, u0, V, nslices, grid);
        std::ostringstream csv;
        csv << "x,re,im\n" << std::setprecision(15);
        for (std::size_t i = 0; i < grid.n_points; ++i)
            csv << grid.point(i) << "," << u[i].real() << "," << u[i].imag() << "\n";
        write_text(out, csv.str());

        // convergence report along a doubling ladder ending at nslices
        std::vector<std::size_t> ladder;
        for (std::size_t n = nslices; n >= 4 && ladder.size() < 5; n /= 2)
            ladder.insert(ladder.begin(), n);
        if (ladder.empty()) ladder.push_back(nslices);
        auto rep = fk_convergence_report(pf, u0, V, grid, ladder);
        json points = json::array();
        for (const auto& pt : rep)
            points.push_back({{"n_slices", pt.n_slices}, {"l2_error", pt.l2_error}});
        write_json(report_path, {{"p", p},
                                 {"alpha", to_json(pf.spec.alpha)},
                                 {"t", t},
                                 {"points", points}});
    } catch (const std::exception& e) {
        return run_error(e);
    }
    return 0;
}

// ---- parseval -------------------------------------------------------------

int cmd_parseval(const std::string& in_path, const std::string& method_name,
                 const std::string& out) {
    FiniteRankOperator B;
    FresnelIntegrand f;
    QuadMethod method;
    try {
        const json in = load_json_file(in_path);
        const auto d = in.at("d").get<std::size_t>();
        auto evals = in.at("eigenvalues").get<std::vector<double>>();
        std::vector<std::vector<double>> frame(d, std::vector<double>(d, 0.0));
        for (std::size_t i = 0; i < d; ++i) frame[i][i] = 1.0;
        B = FiniteRankOperator(d, std::move(evals), std::move(frame));
        f = FresnelIntegrand(d, atoms_from_json(in.at("atoms"), d),
                             in.value("hbar", 1.0));
        if (method_name == "regularized") method = QuadMethod::Regularized;
        else if (method_name == "growingbox") method = QuadMethod::GrowingBox;
        else throw std::runtime_error("unknown method " + method_name);
    } catch (const std::exception& e) {
        return config_error(e);
    }
    try {
        const cd rhs = parseval_rhs(B, f);
        const cd lhs = fresnel_quadrature_lhs(B, f, method);
        const double rel = std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-300);
        write_json(out, {{"lhs", to_json(lhs)},
                         {"rhs", to_json(rhs)},
                         {"rel_err", rel},
                         {"method", method_name}});
    } catch (const std::exception& e) {
        return run_error(e);
    }
    return 0;
}

// ---- cylinder -------------------------------------------------------------

int cmd_cylinder(const std::string& in_path, int p, std::vector<double> alpha,
                 const std::string& out) {
    CylinderFunction f;
    EvolutionSpec spec;
    try {
        f = cylinder_from_json(load_json_file(in_path));
        spec = make_spec(p, alpha);
    } catch (const std::exception& e) {
        return config_error(e);
    }
    try {
        const cd value = eval_LJ(f, CylinderMarginal(spec, f.grid));
        json report = cylinder_to_json(f);
        report["value"] = to_json(value);
        report["fresnel_norm"] = f.fourier.fresnel_norm();
        write_json(out, report);
    } catch (const std::exception& e) {
        return run_error(e);
    }
    return 0;
}

// ---- check ----------------------------------------------------------------

struct CheckItem {
    std::string name;
    double measured = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

void run_checks(std::uint64_t seed, std::vector<CheckItem>& items) {
    std::mt19937 rng(static_cast<std::uint32_t>(seed));
    const EvolutionSpec heat(2, cd(-0.5, 0.0));
    const EvolutionSpec airy(3, cd(0.0, 1.0 / 3.0));
    const EvolutionSpec quartic(4, cd(-1.0, 0.0));

    {
        Grid1D g(-10.0, 10.0, 1 << 12);
        auto k = compute_kernel(heat, 1.0, g);
        double sup = 0.0;
        for (std::size_t i = 0; i < g.n_points; ++i) {
            const double x = g.point(i);
            const double exact = std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
            sup = std::max(sup, std::abs(k.values[i] - cd(exact, 0.0)));
        }
        items.push_back({"heat_kernel_exactness", sup, 1e-8, sup <= 1e-8});
    }
    for (const auto& [name, spec] :
         {std::pair<const char*, EvolutionSpec>{"mass_heat", heat},
          {"mass_airy", airy},
          {"mass_quartic", quartic}}) {
        auto k = compute_kernel(spec, 1.0, recommended_grid(spec, 1.0));
        const double err = std::abs(kernel_mass(k) - cd(1.0, 0.0));
        items.push_back({name, err, 1e-6, err <= 1e-6});
    }
    {
        ConvolutionSemigroupProbe probe(heat, Grid1D(-16.0, 16.0, 2048), {0.3, 0.7});
        const double res = chapman_kolmogorov_residual(probe, 0.3, 0.7);
        items.push_back({"chapman_kolmogorov_heat", res, 1e-8, res <= 1e-8});
    }
    {
        auto heat_rep = marginal_variation(heat, 1.0, 4, Grid1D(-16.0, 16.0, 4096));
        const double err = std::abs(heat_rep.total - 1.0);
        items.push_back({"variation_gate_heat", err, 1e-6,
                         err <= 1e-6 && heat_rep.verdict == Verdict::ProjectiveLimitPossible});
        auto q_rep = marginal_variation(quartic, 1.0, 4, Grid1D(-32.0, 32.0, 16384));
        items.push_back({"variation_blowup_quartic", q_rep.per_slice_tv, 1.001,
                         q_rep.per_slice_tv > 1.001 &&
                             q_rep.verdict == Verdict::NoBoundedComplexMeasure});
    }
    {
        std::uniform_real_distribution<double> uy(-2.0, 2.0);
        double worst = 0.0;
        for (int rep = 0; rep < 20; ++rep) {
            TimeGrid J(1.0, {0.3, 0.6});
            TimeGrid K(1.0, {0.15, 0.3, 0.6, 0.85});
            CylinderFunction f(J, AtomicComplexMeasure(
                                      2, {{{uy(rng), uy(rng)}, cd(uy(rng), uy(rng))}}));
            worst = std::max(worst, compatibility_check(f, K, CylinderMarginal(quartic, J),
                                                        CylinderMarginal(quartic, K)));
        }
        items.push_back({"projectivity", worst, 1e-5, worst <= 1e-5});
    }
    {
        std::uniform_real_distribution<double> ul(-0.8, 0.8);
        std::uniform_real_distribution<double> uy(-2.0, 2.0);
        double worst = 0.0;
        for (int rep = 0; rep < 10; ++rep) {
            std::vector<std::vector<double>> frame = {{1.0, 0.0}, {0.0, 1.0}};
            FiniteRankOperator B(2, {ul(rng), ul(rng)}, frame);
            FresnelIntegrand f(2,
                               AtomicComplexMeasure(
                                   2, {{{uy(rng), uy(rng)}, cd(uy(rng), uy(rng))}}),
                               1.0);
            const cd rhs = parseval_rhs(B, f);
            for (auto m : {QuadMethod::Regularized, QuadMethod::GrowingBox})
                worst = std::max(worst, std::abs(fresnel_quadrature_lhs(B, f, m) - rhs) /
                                            (1.0 + std::abs(rhs)));
        }
        items.push_back({"parseval_identity", worst, 1e-4, worst <= 1e-4});
    }
    {
        std::uniform_real_distribution<double> uy(-3.0, 3.0);
        PathFunctionalSpec pf(quartic, 1.0);
        TimeGrid J(1.0, {0.25, 0.5, 0.75});
        int violations = 0;
        for (int rep = 0; rep < 200; ++rep) {
            CylinderFunction f(J, AtomicComplexMeasure(
                                      3, {{{uy(rng), uy(rng), uy(rng)}, cd(uy(rng), uy(rng))}}));
            if (!continuity_bound_check(pf, f)) ++violations;
        }
        items.push_back({"continuity_bound", static_cast<double>(violations), 0.0,
                         violations == 0});
    }
}

int cmd_check(std::uint64_t seed, const std::string& out) {
    try {
        std::vector<CheckItem> items;
        run_checks(seed, items);
        bool overall = true;
        json jitems = json::array();
        for (const auto& it : items) {
            overall = overall && it.pass;
            jitems.push_back({{"name", it.name},
                              {"status", it.pass ? "pass" : "fail"},
                              {"measured", it.measured},
                              {"tolerance", it.tolerance}});
        }
        write_json(out, {{"seed", seed},
                         {"threads", g_threads},
                         {"items", jitems},
                         {"overall", overall ? "pass" : "fail"}});
        return overall ? 0 : 1;
    } catch (const std::exception& e) {
        return run_error(e);
    }
}

} // namespace

int main(int argc, char** argv) {
    if (const char* env = std::getenv("PSEUDOPATH_THREADS"))
        g_threads = std::max(1, std::atoi(env));

    CLI::App app{"pseudopath: complex fundamental-solution kernels, pseudo-path "
                 "functionals and oscillatory integrals"};
    app.require_subcommand(1);

    int p = 2;
    std::vector<double> alpha = {-0.5, 0.0};
    double t = 1.0;
    std::size_t n = 1, nslices = 8;
    std::vector<double> grid_spec;
    std::string out, in_path, u0_path, pot_path, report_path, method = "regularized";
    std::uint64_t seed = 20240824ULL;

    auto* kernel = app.add_subcommand("kernel", "sample a fundamental solution to CSV");
    kernel->add_option("--p", p)->required();
    kernel->add_option("--alpha", alpha, "re,im")->delimiter(',')->expected(2);
    kernel->add_option("--t", t)->required();
    kernel->add_option("--grid", grid_spec, "xmin,xmax,n")->delimiter(',')->expected(3)->required();
    kernel->add_option("--out", out);

    auto* tvgrowth = app.add_subcommand("tvgrowth", "marginal total-variation growth report");
    tvgrowth->add_option("--p", p)->required();
    tvgrowth->add_option("--alpha", alpha, "re,im")->delimiter(',')->expected(2);
    tvgrowth->add_option("--t", t)->required();
    tvgrowth->add_option("--n", n, "number of slices")->required();
    tvgrowth->add_option("--grid", grid_spec, "xmin,xmax,n")->delimiter(',')->expected(3);
    tvgrowth->add_option("--out", out);

    auto* fk = app.add_subcommand("fk", "time-sliced Feynman-Kac solver");
    fk->add_option("--p", p)->required();
    fk->add_option("--alpha", alpha, "re,im")->delimiter(',')->expected(2);
    fk->add_option("--t", t)->required();
    fk->add_option("--nslices", nslices)->required();
    fk->add_option("--grid", grid_spec, "xmin,xmax,n")->delimiter(',')->expected(3)->required();
    fk->add_option("--u0", u0_path, "JSON {atoms:[{y,w}]}")->required();
    fk->add_option("--potential", pot_path, "JSON {atoms:[{y,w}]}");
    fk->add_option("--out", out, "solution CSV");
    fk->add_option("--report", report_path, "convergence report JSON");

    auto* parseval = app.add_subcommand("parseval", "Cameron-Martin/Parseval identity");
    parseval->add_option("--in", in_path, "JSON {d, eigenvalues, atoms, hbar}")->required();
    parseval->add_option("--method", method, "regularized | growingbox");
    parseval->add_option("--out", out);

    auto* cylinder = app.add_subcommand("cylinder", "evaluate a cylinder functional");
    cylinder->add_option("--in", in_path, "JSON {horizon, times, atoms}")->required();
    cylinder->add_option("--p", p)->required();
    cylinder->add_option("--alpha", alpha, "re,im")->delimiter(',')->expected(2);
    cylinder->add_option("--out", out);

    auto* check = app.add_subcommand("check", "run the invariant suite");
    check->add_option("--seed", seed);
    check->add_option("--out", out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (kernel->parsed()) return cmd_kernel(p, alpha, t, grid_spec, out);
    if (tvgrowth->parsed()) return cmd_tvgrowth(p, alpha, t, n, grid_spec, out);
    if (fk->parsed())
        return cmd_fk(p, alpha, t, nslices, grid_spec, u0_path, pot_path, out, report_path);
    if (parseval->parsed()) return cmd_parseval(in_path, method, out);
    if (cylinder->parsed()) return cmd_cylinder(in_path, p, alpha, out);
    if (check->parsed()) return cmd_check(seed, out);
    return 2;
}
