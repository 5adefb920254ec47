// Acceptance suite: one numbered criterion per run (or all without
// arguments). Each criterion prints a single PASS/FAIL line with the
// measured quantities and its runtime; the exit code is the number of
// failed criteria. The last argument may be the CLI binary path, used by
// the determinism criterion.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fracseries/expansion.hpp"
#include "fracseries/fde.hpp"
#include "fracseries/gl_discrete.hpp"
#include "fracseries/metrics.hpp"
#include "fracseries/specials.hpp"

using namespace fracseries;

namespace {

constexpr double kPi = std::numbers::pi;

std::string g_cli_path;

double rel(double a, double b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

const std::vector<CatalogFn> kCatalog = {
    CatalogFn::sech(),     CatalogFn::tanh(), CatalogFn::sin(),      CatalogFn::cos(),
    CatalogFn::gaussian(), CatalogFn::exp(),  CatalogFn::power(3.0), CatalogFn::constant(2.0)};

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok) { pass = pass && ok; }
    void note(const std::string& s) {
        if (!detail.empty()) detail += "  ";
        detail += s;
    }
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

// 1: GL and RL share termwise sums; Caputo equals the RL bridge
Outcome criterion_01() {
    Outcome o;
    std::mt19937 rng(101);
    std::uniform_real_distribution<double> ux(0.05, 5.0);
    std::uniform_real_distribution<double> uq(0.02, 1.98);
    double worst_termwise = 0.0, worst_bridge = 0.0;
    for (const CatalogFn& f : kCatalog) {
        int done = 0;
        while (done < 20) {
            const double x = ux(rng);
            const double qv = uq(rng);
            if (std::abs(qv - 1.0) < 1e-3) continue;
            const Order q(qv);
            const auto gl = frac_derivative(f, x, ExpansionConfig(Definition::GL, q, 10));
            const auto rl = frac_derivative(f, x, ExpansionConfig(Definition::RL, q, 10, 0.0));
            for (size_t k = 0; k < gl.terms.size(); ++k) {
                const double a = gl.terms[k].contribution, b = rl.terms[k].contribution;
                if (a == 0.0 && b == 0.0) continue;
                worst_termwise = std::max(worst_termwise, rel(a, b));
            }
            const double cap = frac_derivative_value(f, x, ExpansionConfig(Definition::Caputo, q, 15));
            const double bridge = caputo_from_rl(f, x, q, 0.0, 15);
            if (!(cap == 0.0 && bridge == 0.0)) {
                worst_bridge = std::max(worst_bridge, rel(cap, bridge));
            }
            ++done;
        }
    }
    o.require(worst_termwise < 1e-13);
    o.require(worst_bridge < 1e-10);
    o.note("termwise=" + fmt(worst_termwise) + " (<1e-13)");
    o.note("bridge=" + fmt(worst_bridge) + " (<1e-10)");
    return o;
}

// 2: integer collapse
Outcome criterion_02() {
    Outcome o;
    double worst = 0.0;
    for (const CatalogFn& f : kCatalog) {
        for (int qi : {1, 2, 3}) {
            for (double x : {0.7, 1.3, 2.5}) {
                const double want = derivative(f, x, qi);
                for (Definition def : {Definition::GL, Definition::RL, Definition::Caputo}) {
                    const double got = frac_derivative_value(
                        f, x, ExpansionConfig(def, Order(double(qi)), qi + 4));
                    if (want == 0.0) {
                        o.require(got == 0.0);
                    } else {
                        worst = std::max(worst, rel(got, want));
                    }
                }
            }
        }
    }
    o.require(worst < 1e-12);
    o.note("worst=" + fmt(worst) + " (<1e-12)");
    return o;
}

// 3: inner-sum identity
Outcome criterion_03() {
    Outcome o;
    std::mt19937 rng(103);
    std::uniform_real_distribution<double> uq(0.0, 4.0);
    std::uniform_int_distribution<int> un(1, 25);
    double worst = 0.0;
    int done = 0;
    while (done < 200) {
        const double q = uq(rng);
        if (std::abs(q - std::round(q)) < 1e-3) continue;
        const int N = un(rng);
        const int k = std::uniform_int_distribution<int>(0, N - 1)(rng);
        worst = std::max(worst, rel(inner_sum(q, k, N, InnerSumMode::direct),
                                    inner_sum(q, k, N, InnerSumMode::closed)));
        ++done;
    }
    o.require(worst < 1e-10);
    o.note("worst=" + fmt(worst) + " (<1e-10)");
    return o;
}

// 4: finite-N weight reaches the series weight at rate < 10/N
Outcome criterion_04() {
    Outcome o;
    struct Case { double q; int k; };
    for (const Case c : {Case{0.5, 0}, Case{0.5, 1}, Case{1.5, 1}}) {
        for (long N : {1000L, 10000L}) {
            const double w = weight_exact(c.q, c.k, N, 1.0 / double(N));
            const double s = series_weight(Order(c.q), c.k, 1.0, 0.0);
            const double gap = rel(w, s);
            o.require(gap < 10.0 / double(N));
            if (N == 10000) o.note("q=" + fmt(c.q) + ",k=" + std::to_string(c.k) +
                                   ": gap=" + fmt(gap) + " (<" + fmt(10.0 / double(N)) + ")");
        }
    }
    return o;
}

// 5: discrete GL converges to the series
Outcome criterion_05() {
    Outcome o;
    const double series = frac_derivative_value(
        CatalogFn::sech(), 1.0, ExpansionConfig(Definition::GL, Order(0.5), 40));
    double prev = -1.0, last = 0.0;
    for (long n : {1000L, 10000L, 100000L}) {
        last = std::abs(gl_sum(CatalogFn::sech(), 0.5, GridSpec(1.0, n)) - series);
        if (prev >= 0.0) o.require(last < prev);
        prev = last;
    }
    o.require(last < 1e-2);
    o.note("final gap=" + fmt(last) + " (<0.01, shrinking over 1e3->1e4->1e5)");
    return o;
}

// 6: documented truncation levels (sech/tanh N=3, cos N=15)
Outcome criterion_06() {
    Outcome o;
    const Eigen::ArrayXd grid = Eigen::ArrayXd::LinSpaced(512, 0.1, 5.0);
    const auto max_eps = [&](const CatalogFn& f, int n) {
        return truncation_sweep(f, Definition::Caputo, {0.5}, {n}, grid, 40).stats[0].max_abs_err;
    };
    const double sech3 = max_eps(CatalogFn::sech(), 3);
    const double tanh3 = max_eps(CatalogFn::tanh(), 3);
    const double cos15 = max_eps(CatalogFn::cos(), 15);
    o.require(sech3 < 0.1);
    o.require(tanh3 < 0.1);
    o.require(cos15 < 0.1);
    o.note("sech N=3 max=" + fmt(sech3) + " (<0.1)");
    o.note("tanh N=3 max=" + fmt(tanh3) + " (<0.1)");
    o.note("cos N=15 max=" + fmt(cos15) + " (<0.1)");
    return o;
}

// 7: sin average-error claims (averaging domain [0.1, 1]; unstated upstream)
Outcome criterion_07() {
    Outcome o;
    const double mean2 = average_error_claim(CatalogFn::sin(), 2, 0.1, 1.0);
    const double mean10 = average_error_claim(CatalogFn::sin(), 10, 0.1, 1.0);
    o.require(mean2 >= 0.001 && mean2 <= 0.05);
    o.require(mean10 < 0.002);
    o.require(mean10 < mean2);
    o.note("mean N=2: " + fmt(mean2) + " (in [0.001,0.05])");
    o.note("mean N=10: " + fmt(mean10) + " (<0.002)");
    return o;
}

// 8: gaussian divergence on [2,4] and the Hermite closed form
Outcome criterion_08() {
    Outcome o;
    const Order q(1.5);
    double m20 = 0.0, m40 = 0.0;
    for (int i = 0; i <= 400; ++i) {
        const double x = 2.0 + 0.005 * i;
        m20 = std::max(m20, std::abs(gaussian_hermite_series(x, q, 20)));
        m40 = std::max(m40, std::abs(gaussian_hermite_series(x, q, 40)));
    }
    o.require(m40 >= 10.0 * m20);
    o.note("max|S40|/max|S20| on [2,4] = " + fmt(m40 / m20) + " (>=10)");
    double worst = 0.0;
    for (double x : {0.5, 1.0, 2.0, 3.0}) {
        worst = std::max(worst, rel(gaussian_hermite_series(x, q, 3),
                                    frac_derivative_value(CatalogFn::gaussian(), x,
                                                          ExpansionConfig(Definition::GL, q, 3))));
    }
    o.require(worst < 1e-12);
    o.note("hermite-vs-jet=" + fmt(worst) + " (<1e-12)");
    return o;
}

// 9: Fox-Wright gaussian reduction on 61 points
Outcome criterion_09() {
    Outcome o;
    double worst = 0.0;
    for (int i = 0; i <= 60; ++i) {
        const double z = -3.0 + 0.1 * i;
        const double got = fox_wright({{}, {{0.5, -0.5}}, z});
        worst = std::max(worst, std::abs(got - std::exp(-z * z / 4.0) / std::sqrt(kPi)));
    }
    o.require(worst < 1e-10);
    o.note("worst abs=" + fmt(worst) + " (<1e-10)");
    return o;
}

// 10: constant-coefficient pipeline vs the Mittag-Leffler solution
Outcome criterion_10() {
    Outcome o;
    const SolveReport rep =
        solve_and_compare({FdeKind::ConstantCoeff, 1.0, 0.5, 3}, {0.1, 10.0, 200});
    const double worst = rep.rel_err.abs().maxCoeff();
    o.require(worst < 0.02);
    o.note("max rel err on [0.1,10] = " + fmt(worst) + " (<0.02)");
    return o;
}

// 11: variable-coefficient pipeline vs the closed-form reference
Outcome criterion_11() {
    Outcome o;
    const SolveReport rep =
        solve_and_compare({FdeKind::VariableCoeff, 1.0, 0.5, 3}, {1.0, 10.0, 200});
    const double worst = rep.rel_err.abs().maxCoeff();
    o.require(worst < 0.10);
    o.note("max rel err on [1,10] = " + fmt(worst) + " (<0.10)");
    return o;
}

// 12: reduced-equation reconstruction
Outcome criterion_12() {
    Outcome o;
    std::mt19937 rng(112);
    std::uniform_real_distribution<double> ux(0.01, 10.0);
    const OdeSystem c = build_truncated_ode({FdeKind::ConstantCoeff, 1.0, 0.5, 3});
    const OdeSystem v = build_truncated_ode({FdeKind::VariableCoeff, 1.0, 0.5, 3});
    const OdeSystem r = substitute_reciprocal(v);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double x = ux(rng);
        worst = std::max({worst, rel(c.c2(x), -x * x / 6.0), rel(c.c1(x), x),
                          rel(c.c0(x), std::sqrt(kPi * x) + 1.0)});
        worst = std::max({worst, rel(v.c2(x), -x * x * x / 6.0), rel(v.c1(x), x * x),
                          rel(v.c0(x), x + std::sqrt(kPi * x))});
        const double y = 1.0 / x;
        worst = std::max({worst, rel(r.c2(y), y * y), rel(r.c1(y), 8.0 * y),
                          rel(r.c0(y), -6.0 * (std::sqrt(kPi * y) + 1.0))});
    }
    o.require(worst < 1e-12);
    o.note("worst coefficient mismatch=" + fmt(worst) + " (<1e-12)");
    return o;
}

// 13: byte-identical CLI output across repeated invocations
Outcome criterion_13() {
    Outcome o;
    if (g_cli_path.empty()) {
        o.pass = false;
        o.note("CLI path not provided (pass it as the last argument)");
        return o;
    }
    const auto slurp = [](const std::string& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    const std::vector<std::string> commands = {
        "deriv --fn sech --def caputo --q 0.5 --x 1.0 --terms 5",
        "sweep --fn tanh --def caputo --q 0.5,1.5 --terms 2,4 --xgrid 0.1:5:64 --ref 40",
        "fde --kind constant --lambda 1 --grid 0.5:2:5 --steps 20000",
    };
    for (size_t i = 0; i < commands.size(); ++i) {
        const std::string fa = "acc13_" + std::to_string(i) + "_a.csv";
        const std::string fb = "acc13_" + std::to_string(i) + "_b.csv";
        const std::string base = "\"" + g_cli_path + "\" " + commands[i] + " --out ";
        if (std::system((base + fa).c_str()) != 0 || std::system((base + fb).c_str()) != 0) {
            o.pass = false;
            o.note("command failed: " + commands[i]);
            continue;
        }
        const std::string a = slurp(fa), b = slurp(fb);
        o.require(!a.empty() && a == b);
        std::remove(fa.c_str());
        std::remove(fb.c_str());
    }
    o.note("3 commands, 2 runs each, byte-compared");
    return o;
}

struct Criterion {
    int id;
    const char* name;
    Outcome (*fn)();
    double budget_s;
};

const Criterion kCriteria[] = {
    {1, "definition-unification", criterion_01, 5.0},
    {2, "integer-collapse", criterion_02, 1.0},
    {3, "inner-sum-identity", criterion_03, 1.0},
    {4, "weight-limit", criterion_04, 1.0},
    {5, "gl-oracle-convergence", criterion_05, 10.0},
    {6, "truncation-claims", criterion_06, 10.0},
    {7, "sin-average-error", criterion_07, 5.0},
    {8, "gaussian-divergence", criterion_08, 5.0},
    {9, "fox-wright-gaussian", criterion_09, 1.0},
    {10, "constant-fde", criterion_10, 30.0},
    {11, "variable-fde", criterion_11, 30.0},
    {12, "equation-reconstruction", criterion_12, 1.0},
    {13, "csv-determinism", criterion_13, 5.0},
};

int run_one(const Criterion& c) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = c.fn();
    } catch (const std::exception& e) {
        o.pass = false;
        o.note(std::string("exception: ") + e.what());
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (elapsed >= c.budget_s) {
        o.pass = false;
        o.note("over the " + fmt(c.budget_s) + " s budget");
    }
    std::printf("[%s] %02d %-25s (%.2f s)  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                elapsed, o.detail.c_str());
    return o.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> ids;
    for (int i = 1; i < argc; ++i) {
        char* end = nullptr;
        const long v = std::strtol(argv[i], &end, 10);
        if (end && *end == '\0' && v >= 1 && v <= 13) {
            ids.push_back(static_cast<int>(v));
        } else {
            g_cli_path = argv[i];
        }
    }
    int failures = 0;
    for (const Criterion& c : kCriteria) {
        if (!ids.empty() &&
            std::find(ids.begin(), ids.end(), c.id) == ids.end()) {
            continue;
        }
        failures += run_one(c);
    }
    return failures;
}
