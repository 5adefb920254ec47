#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fracseries/csv.hpp"
#include "fracseries/expansion.hpp"
#include "fracseries/fde.hpp"
#include "fracseries/gl_discrete.hpp"
#include "fracseries/grid.hpp"
#include "fracseries/metrics.hpp"
#include "fracseries/specials.hpp"

namespace fs = fracseries;

namespace {

std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        double v = 0.0;
        auto [p, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (ec != std::errc{} || p != item.data() + item.size()) {
            throw std::invalid_argument("bad number '" + item + "' in list '" + s + "'");
        }
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument("empty list '" + s + "'");
    return out;
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    for (double v : parse_double_list(s)) {
        if (v != std::floor(v)) throw std::invalid_argument("expected integers in '" + s + "'");
        out.push_back(static_cast<int>(v));
    }
    return out;
}

// output sink: --out path or stdout
struct Sink {
    std::ofstream file;
    std::ostream* os = &std::cout;

    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file.open(path, std::ios::binary);
            if (!file) throw std::invalid_argument("cannot open output file '" + path + "'");
            os = &file;
        }
    }
};

int run_deriv(const std::string& fn, const std::string& def, double q, double x,
              int terms, double base, const std::string& out) {
    const fs::CatalogFn f = fs::parse_catalog_fn(fn);
    const fs::Definition d = fs::parse_definition(def);
    const fs::ExpansionConfig cfg(d, fs::Order(q), terms, base);
    const fs::ExpansionResult r = fs::frac_derivative(f, x, cfg);

    Sink sink(out);
    fs::CsvWriter w(*sink.os);
    w.comment("fracseries deriv");
    w.comment("fn=" + f.name() + " def=" + fs::definition_name(d) +
              " q=" + fs::format_double(q) + " x=" + fs::format_double(x) +
              " terms=" + std::to_string(terms) + " base=" + fs::format_double(base));
    w.comment("value=" + fs::format_double(r.value));
    w.row("k,weight,derivative_value,contribution,partial_sum");
    double partial = 0.0;
    for (const fs::SeriesTerm& t : r.terms) {
        partial += t.contribution;
        w.cells(t.k, t.weight, t.derivative_value, t.contribution, partial);
    }
    return 0;
}

int run_sweep(const std::string& fn, const std::string& def, const std::string& qs,
              const std::string& terms, const std::string& xgrid, bool log_grid,
              int ref, const std::string& out) {
    const fs::CatalogFn f = fs::parse_catalog_fn(fn);
    const fs::Definition d = fs::parse_definition(def);
    const std::vector<double> q_list = parse_double_list(qs);
    const std::vector<int> n_list = parse_int_list(terms);
    const fs::GridRange range = fs::GridRange::parse(xgrid, log_grid);
    const fs::SweepResult s = fs::truncation_sweep(f, d, q_list, n_list, range.make(), ref);

    Sink sink(out);
    fs::CsvWriter w(*sink.os);
    w.comment("fracseries sweep");
    w.comment("fn=" + f.name() + " def=" + fs::definition_name(d) + " q=" + qs +
              " terms=" + terms + " xgrid=" + xgrid +
              " log-grid=" + (log_grid ? std::string("true") : std::string("false")) +
              " ref=" + std::to_string(ref));
    for (size_t iq = 0; iq < s.orders.size(); ++iq) {
        for (size_t in = 0; in < s.truncations.size(); ++in) {
            const fs::RowStats& st = s.stats[iq * s.truncations.size() + in];
            w.comment("stats q=" + fs::format_double(s.orders[iq]) +
                      " terms=" + std::to_string(s.truncations[in]) +
                      " max_abs_err=" + fs::format_double(st.max_abs_err) +
                      " mean_abs_err=" + fs::format_double(st.mean_abs_err) +
                      " excluded=" + std::to_string(st.excluded));
        }
    }
    w.row("q,terms,x,value,reference,rel_error");
    for (size_t iq = 0; iq < s.orders.size(); ++iq) {
        for (size_t in = 0; in < s.truncations.size(); ++in) {
            const int row = static_cast<int>(iq * s.truncations.size() + in);
            for (int ix = 0; ix < s.grid.size(); ++ix) {
                w.cells(s.orders[iq], s.truncations[in], s.grid[ix], s.values(row, ix),
                        s.reference(static_cast<int>(iq), ix), s.errors(row, ix));
            }
        }
    }
    return 0;
}

int run_fde(const std::string& kind, double lambda, double q, int terms,
            const std::string& grid, bool log_grid, double eps, double xmax,
            long steps, const std::string& out) {
    fs::FdeProblem prob;
    if (kind == "constant") {
        prob.kind = fs::FdeKind::ConstantCoeff;
    } else if (kind == "variable") {
        prob.kind = fs::FdeKind::VariableCoeff;
    } else {
        throw std::invalid_argument("--kind must be constant or variable");
    }
    prob.lambda = lambda;
    prob.q = q;
    prob.n_terms = terms;
    const fs::GridRange range = fs::GridRange::parse(grid, log_grid);
    const fs::SolveOptions opts{eps, xmax, steps};
    const fs::SolveReport rep = fs::solve_and_compare(prob, range, opts);

    Sink sink(out);
    fs::CsvWriter w(*sink.os);
    w.comment("fracseries fde");
    w.comment("kind=" + kind + " lambda=" + fs::format_double(lambda) +
              " q=" + fs::format_double(q) + " terms=" + std::to_string(terms) +
              " grid=" + grid +
              " log-grid=" + (log_grid ? std::string("true") : std::string("false")) +
              " eps=" + fs::format_double(eps) + " xmax=" + fs::format_double(xmax) +
              " steps=" + std::to_string(steps));
    w.comment("anchor=" + fs::format_double(rep.anchor));
    w.row("x,numeric,exact,rel_error");
    for (int i = 0; i < rep.grid.size(); ++i) {
        w.cells(rep.grid[i], rep.numeric[i], rep.exact[i], rep.rel_err[i]);
    }
    return 0;
}

int run_special(const std::optional<double>& gamma_z, const std::optional<double>& rgamma_z,
                const std::string& binom, const std::string& ml, const std::string& hermite,
                const std::string& foxwright, const std::string& out) {
    Sink sink(out);
    fs::CsvWriter w(*sink.os);
    const auto quoted = [](const std::string& s) { return "\"" + s + "\""; };
    w.comment("fracseries special");
    w.row("function,arguments,value");
    if (gamma_z) {
        w.cells(std::string("gamma"), fs::format_double(*gamma_z),
                fs::gamma(*gamma_z));
    }
    if (rgamma_z) {
        w.cells(std::string("recip_gamma"), fs::format_double(*rgamma_z),
                fs::recip_gamma(*rgamma_z));
    }
    if (!binom.empty()) {
        const auto v = parse_double_list(binom);
        if (v.size() != 2) throw std::invalid_argument("--binom expects q,j");
        w.cells(std::string("binom"), quoted(binom), fs::binom_general(v[0], static_cast<int>(v[1])));
    }
    if (!ml.empty()) {
        const auto v = parse_double_list(ml);
        if (v.size() != 3) throw std::invalid_argument("--ml expects alpha,beta,z");
        bool warn = false;
        const double val = fs::mittag_leffler(fs::MLParams{v[0], v[1], v[2]}, &warn);
        if (warn) std::cerr << "warning: |z| beyond the cancellation threshold\n";
        w.cells(std::string("mittag_leffler"), quoted(ml), val);
    }
    if (!hermite.empty()) {
        const auto v = parse_double_list(hermite);
        if (v.size() != 2) throw std::invalid_argument("--hermite expects k,x");
        w.cells(std::string("hermite"), quoted(hermite), fs::hermite(static_cast<int>(v[0]), v[1]));
    }
    if (!foxwright.empty()) {
        // upper;lower;z with each list a:A[,b:B...] or '-' for empty
        fs::FoxWrightParams p;
        std::stringstream ss(foxwright);
        std::string upper, lower, zs;
        if (!std::getline(ss, upper, ';') || !std::getline(ss, lower, ';') ||
            !std::getline(ss, zs, ';')) {
            throw std::invalid_argument("--fox-wright expects upper;lower;z");
        }
        auto parse_pairs = [](const std::string& s) {
            std::vector<std::pair<double, double>> pairs;
            if (s == "-") return pairs;
            std::stringstream ps(s);
            std::string pair;
            while (std::getline(ps, pair, ',')) {
                const size_t colon = pair.find(':');
                if (colon == std::string::npos) {
                    throw std::invalid_argument("fox-wright pair needs a:A, got '" + pair + "'");
                }
                pairs.emplace_back(std::stod(pair.substr(0, colon)),
                                   std::stod(pair.substr(colon + 1)));
            }
            return pairs;
        };
        p.upper = parse_pairs(upper);
        p.lower = parse_pairs(lower);
        p.z = std::stod(zs);
        w.cells(std::string("fox_wright"), quoted(foxwright), fs::fox_wright(p));
    }
    return 0;
}

int run_selftest() {
    struct Check {
        std::string name;
        bool ok;
        std::string detail;
    };
    std::vector<Check> checks;
    auto push = [&](const std::string& name, double got, double want, double tol) {
        const double err = std::abs(got - want) / std::max({std::abs(got), std::abs(want), 1e-300});
        checks.push_back({name, err < tol,
                          "got " + fs::format_double(got) + " want " + fs::format_double(want)});
    };

    push("gamma(1/2) = sqrt(pi)", fs::gamma(0.5), std::sqrt(std::acos(-1.0)), 1e-13);
    push("recip_gamma(-3) = 0", fs::recip_gamma(-3.0), 0.0, 1.0);
    checks.back().ok = fs::recip_gamma(-3.0) == 0.0;
    push("E_{1,1}(1) = e", fs::mittag_leffler(1.0, 1.0, 1.0), std::exp(1.0), 1e-12);
    push("E_{2,1}(-1) = cos 1", fs::mittag_leffler(2.0, 1.0, -1.0), std::cos(1.0), 1e-12);
    push("fox-wright gaussian at z=2", fs::fox_wright({{}, {{0.5, -0.5}}, 2.0}),
         std::exp(-1.0) / std::sqrt(std::acos(-1.0)), 1e-11);
    push("inner sum direct = closed", fs::inner_sum(0.5, 1, 5, fs::InnerSumMode::direct),
         fs::inner_sum(0.5, 1, 5, fs::InnerSumMode::closed), 1e-12);
    push("half-derivative power rule",
         fs::frac_derivative_value(fs::CatalogFn::power(1), 1.0,
                                   fs::ExpansionConfig(fs::Definition::GL, fs::Order(0.5), 2)),
         2.0 / std::sqrt(std::acos(-1.0)), 1e-13);
    push("integer collapse q=2 on sin",
         fs::frac_derivative_value(fs::CatalogFn::sin(), 1.3,
                                   fs::ExpansionConfig(fs::Definition::Caputo, fs::Order(2.0), 8)),
         -std::sin(1.3), 1e-13);
    push("hermite form = jet form (gaussian)",
         fs::gaussian_hermite_series(0.5, fs::Order(1.5), 3),
         fs::frac_derivative_value(fs::CatalogFn::gaussian(), 0.5,
                                   fs::ExpansionConfig(fs::Definition::GL, fs::Order(1.5), 3)),
         1e-12);
    push("GL discrete ~ GL series (sech)",
         fs::gl_sum(fs::CatalogFn::sech(), 0.5, fs::GridSpec(1.0, 100000)),
         fs::frac_derivative_value(fs::CatalogFn::sech(), 1.0,
                                   fs::ExpansionConfig(fs::Definition::GL, fs::Order(0.5), 30)),
         1e-3);
    {
        fs::OdeSystem osc;
        osc.c2 = [](double) { return 1.0; };
        osc.c1 = [](double) { return 0.0; };
        osc.c0 = [](double) { return 1.0; };
        osc.source = [](double) { return 0.0; };
        const auto t = fs::rk4_integrate(osc, 0.0, std::acos(-1.0), 1000, {0.0, 1.0});
        checks.push_back({"rk4 sine endpoint", std::abs(t.back().f) < 1e-9,
                          "f(pi) = " + fs::format_double(t.back().f)});
    }
    push("Eq-25-style c2 weight", fs::series_weight(fs::Order(0.5), 2, 1.0, 0.0) *
                                      std::sqrt(std::acos(-1.0)),
         -1.0 / 6.0, 1e-13);

    int failed = 0;
    for (const Check& c : checks) {
        std::cout << (c.ok ? "[ ok ] " : "[FAIL] ") << c.name;
        if (!c.ok) {
            std::cout << "  (" << c.detail << ")";
            ++failed;
        }
        std::cout << "\n";
    }
    std::cout << (failed == 0 ? "selftest: all checks passed"
                              : "selftest: " + std::to_string(failed) + " check(s) failed")
              << "\n";
    return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"integer-derivative series for fractional derivatives"};
    app.require_subcommand(1);

    // deriv
    auto* deriv = app.add_subcommand("deriv", "truncated series value with per-term trace");
    std::string d_fn, d_def = "caputo", d_out;
    double d_q = 0.5, d_x = 1.0, d_base = 0.0;
    int d_terms = 3;
    deriv->add_option("--fn", d_fn, "catalog function (sech, tanh, sin, cos, gaussian, exp, power:P, constant:C)")->required();
    deriv->add_option("--def", d_def, "definition: gl | rl | caputo");
    deriv->add_option("--q", d_q, "fractional order q > 0")->required();
    deriv->add_option("--x", d_x, "evaluation point")->required();
    deriv->add_option("--terms", d_terms, "number of series terms");
    deriv->add_option("--base", d_base, "base point a (gl requires 0)");
    deriv->add_option("--out", d_out, "output CSV path (default stdout)");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "truncation-error table over (q, N, x)");
    std::string s_fn, s_def = "caputo", s_q = "0.5", s_terms, s_xgrid, s_out;
    bool s_log = false;
    int s_ref = 40;
    sweep->add_option("--fn", s_fn, "catalog function")->required();
    sweep->add_option("--def", s_def, "definition: gl | rl | caputo");
    sweep->add_option("--q", s_q, "comma-separated fractional orders");
    sweep->add_option("--terms", s_terms, "comma-separated truncation counts")->required();
    sweep->add_option("--xgrid", s_xgrid, "grid as lo:hi:count")->required();
    sweep->add_flag("--log-grid", s_log, "geometric grid spacing");
    sweep->add_option("--ref", s_ref, "reference truncation (series reference)");
    sweep->add_option("--out", s_out, "output CSV path (default stdout)");

    // fde
    auto* fde = app.add_subcommand("fde", "solve a truncated fractional ODE and compare");
    std::string f_kind, f_grid, f_out;
    double f_lambda = 1.0, f_q = 0.5, f_eps = 1e-4, f_xmax = 20.0;
    int f_terms = 3;
    long f_steps = 100000;
    bool f_log = false;
    fde->add_option("--kind", f_kind, "constant | variable")->required();
    fde->add_option("--lambda", f_lambda, "coefficient lambda");
    fde->add_option("--q", f_q, "fractional order");
    fde->add_option("--terms", f_terms, "series terms in the reduction");
    fde->add_option("--grid", f_grid, "report grid as lo:hi:count")->required();
    fde->add_flag("--log-grid", f_log, "geometric grid spacing");
    fde->add_option("--eps", f_eps, "integration start offset");
    fde->add_option("--xmax", f_xmax, "far boundary");
    fde->add_option("--steps", f_steps, "RK4 steps over the span");
    fde->add_option("--out", f_out, "output CSV path (default stdout)");

    // special
    auto* special = app.add_subcommand("special", "evaluate the scalar special functions");
    std::optional<double> sp_gamma, sp_rgamma;
    std::string sp_binom, sp_ml, sp_hermite, sp_fw, sp_out;
    special->add_option("--gamma", sp_gamma, "gamma(z)");
    special->add_option("--recip-gamma", sp_rgamma, "1/gamma(z)");
    special->add_option("--binom", sp_binom, "generalized binomial, q,j");
    special->add_option("--ml", sp_ml, "Mittag-Leffler, alpha,beta,z");
    special->add_option("--hermite", sp_hermite, "Hermite polynomial, k,x");
    special->add_option("--fox-wright", sp_fw, "Fox-Wright, 'a:A,...;b:B,...;z' ('-' = empty list)");
    special->add_option("--out", sp_out, "output CSV path (default stdout)");

    // selftest
    auto* selftest = app.add_subcommand("selftest", "run the built-in invariant checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*deriv) return run_deriv(d_fn, d_def, d_q, d_x, d_terms, d_base, d_out);
        if (*sweep) return run_sweep(s_fn, s_def, s_q, s_terms, s_xgrid, s_log, s_ref, s_out);
        if (*fde) return run_fde(f_kind, f_lambda, f_q, f_terms, f_grid, f_log, f_eps,
                                 f_xmax, f_steps, f_out);
        if (*special)
            return run_special(sp_gamma, sp_rgamma, sp_binom, sp_ml, sp_hermite, sp_fw, sp_out);
        if (*selftest) return run_selftest();
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::runtime_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
