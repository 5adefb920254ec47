#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fracseries/jets.hpp"

using namespace fracseries;

namespace {

double rel(double a, double b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

// Richardson-refined central difference, the independent oracle for low-order
// derivatives of anything we can evaluate pointwise. The step grows with the
// order: h^k in the denominator amplifies roundoff.
double fd_step(int k) {
    switch (k) {
        case 3: return 8e-3;
        case 4: return 2e-2;
        default: return 1e-3;
    }
}

double fd_derivative(const CatalogFn& f, double x, int k, double h) {
    auto d1 = [&](double h_) {
        switch (k) {
            case 0: return eval(f, x);
            case 1: return (eval(f, x + h_) - eval(f, x - h_)) / (2 * h_);
            case 2: return (eval(f, x + h_) - 2 * eval(f, x) + eval(f, x - h_)) / (h_ * h_);
            case 3:
                return (eval(f, x + 2 * h_) - 2 * eval(f, x + h_) + 2 * eval(f, x - h_) -
                        eval(f, x - 2 * h_)) / (2 * h_ * h_ * h_);
            case 4:
                return (eval(f, x + 2 * h_) - 4 * eval(f, x + h_) + 6 * eval(f, x) -
                        4 * eval(f, x - h_) + eval(f, x - 2 * h_)) / (h_ * h_ * h_ * h_);
            default: return 0.0;
        }
    };
    const double a = d1(h), b = d1(h / 2);
    return (4.0 * b - a) / 3.0;
}

}  // namespace

TEST_CASE("maclaurin coefficients") {
    const Jet s = jet_eval(CatalogFn::sin(), 0.0, 3);
    CHECK(s.coeffs[0] == 0.0);
    CHECK(s.coeffs[1] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(s.coeffs[2] == 0.0);
    CHECK(s.coeffs[3] == doctest::Approx(-1.0 / 6.0).epsilon(1e-15));

    const Jet g = jet_eval(CatalogFn::gaussian(), 0.0, 4);
    CHECK(g.coeffs[0] == 1.0);
    CHECK(g.coeffs[1] == 0.0);
    CHECK(g.coeffs[2] == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(g.coeffs[3] == 0.0);
    CHECK(g.coeffs[4] == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("derivatives against closed forms") {
    CHECK(derivative(CatalogFn::tanh(), 0.0, 1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(derivative(CatalogFn::power(3), 2.0, 2) == doctest::Approx(12.0).epsilon(1e-14));
    // d^7 cos = sin
    CHECK(derivative(CatalogFn::cos(), 0.5, 7) ==
          doctest::Approx(std::sin(0.5)).epsilon(1e-13));
    CHECK(derivative(CatalogFn::exp(), 1.3, 10) ==
          doctest::Approx(std::exp(1.3)).epsilon(1e-13));
}

TEST_CASE("finite-difference oracle, all catalog members, k <= 4") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> ux(0.3, 3.0);
    const CatalogFn fns[] = {CatalogFn::sech(),     CatalogFn::tanh(),
                             CatalogFn::sin(),      CatalogFn::cos(),
                             CatalogFn::gaussian(), CatalogFn::exp(),
                             CatalogFn::power(2.5), CatalogFn::constant(4.0)};
    for (const CatalogFn& f : fns) {
        for (int trial = 0; trial < 20; ++trial) {
            const double x = ux(rng);
            for (int k = 1; k <= 4; ++k) {
                const double exact = derivative(f, x, k);
                const double approx = fd_derivative(f, x, k, fd_step(k));
                if (std::abs(exact) < 1e-2) {
                    CHECK(std::abs(exact - approx) < 5e-6);
                } else {
                    CHECK(rel(exact, approx) < 1e-5);
                }
            }
        }
    }
}

TEST_CASE("product rule: jet of sech*tanh is the Cauchy product") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> ux(-3.0, 3.0);
    const int order = 20;
    for (int trial = 0; trial < 50; ++trial) {
        const double x = ux(rng);
        const Jet s = jet_eval(CatalogFn::sech(), x, order);
        const Jet t = jet_eval(CatalogFn::tanh(), x, order);
        // product jet = -d/dx sech lifted one order (sech' = -sech tanh)
        const Jet s1 = jet_eval(CatalogFn::sech(), x, order + 1);
        for (int k = 0; k <= order; ++k) {
            const double cauchy = (s.coeffs.head(k + 1) * t.coeffs.head(k + 1).reverse()).sum();
            const double expected = -(k + 1) * s1.coeffs[k + 1];
            if (std::abs(expected) < 1e-300) continue;
            CHECK(rel(cauchy, expected) < 1e-12);
        }
    }
}

TEST_CASE("chain consistency: gaussian jet equals exp composed with -x^2") {
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> ux(-2.0, 2.0);
    const int order = 12;
    for (int trial = 0; trial < 20; ++trial) {
        const double x = ux(rng);
        const Jet g = jet_eval(CatalogFn::gaussian(), x, order);
        // compose exp jet with u(t) = -(x+t)^2 = -x^2 - 2x t - t^2 by Horner on jets
        Eigen::ArrayXd u = Eigen::ArrayXd::Zero(order + 1);
        u[0] = -x * x;
        u[1] = -2 * x;
        if (order >= 2) u[2] = -1.0;
        // exp(u0) * exp(u - u0): series of exp evaluated by repeated Cauchy products
        Eigen::ArrayXd acc = Eigen::ArrayXd::Zero(order + 1);
        acc[0] = 1.0;
        Eigen::ArrayXd pw = Eigen::ArrayXd::Zero(order + 1);
        pw[0] = 1.0;
        Eigen::ArrayXd v = u;
        v[0] = 0.0;
        double fact = 1.0;
        for (int m = 1; m <= order; ++m) {
            Eigen::ArrayXd next = Eigen::ArrayXd::Zero(order + 1);
            for (int k = 0; k <= order; ++k) {
                double c = 0.0;
                for (int i = 0; i <= k; ++i) c += pw[i] * v[k - i];
                next[k] = c;
            }
            pw = next;
            fact *= m;
            acc += pw / fact;
        }
        acc *= std::exp(u[0]);
        for (int k = 0; k <= order; ++k) {
            if (std::abs(acc[k]) < 1e-300) continue;
            CHECK(rel(acc[k], g.coeffs[k]) < 1e-12);
        }
    }
}

TEST_CASE("power jets") {
    // integer exponent works at and below zero
    const Jet p0 = jet_eval(CatalogFn::power(2), 0.0, 3);
    CHECK(p0.coeffs[0] == 0.0);
    CHECK(p0.coeffs[1] == 0.0);
    CHECK(p0.coeffs[2] == 1.0);
    CHECK(p0.coeffs[3] == 0.0);
    const Jet pn = jet_eval(CatalogFn::power(3), -2.0, 2);
    CHECK(pn.coeffs[0] == doctest::Approx(-8.0));
    CHECK(pn.derivative(1) == doctest::Approx(12.0));

    // negative integer exponent away from zero
    CHECK(derivative(CatalogFn::power(-1), 2.0, 1) == doctest::Approx(-0.25).epsilon(1e-14));

    CHECK_THROWS_AS(jet_eval(CatalogFn::power(0.5), -1.0, 2), std::domain_error);
    CHECK_THROWS_AS(jet_eval(CatalogFn::power(0.5), 0.0, 2), std::domain_error);
    CHECK_THROWS_AS(jet_eval(CatalogFn::power(-2), 0.0, 2), std::domain_error);
    CHECK_THROWS_AS(jet_eval(CatalogFn::sin(), 0.0, 201), std::invalid_argument);
}

TEST_CASE("shift_check") {
    // zero shift is exact
    auto [a0, b0] = shift_check(CatalogFn::exp(), 0.0, 1, 0.0);
    CHECK(a0 == 1.0);
    CHECK(b0 == 1.0);
    // the operator is exact on linear functions
    auto [a1, b1] = shift_check(CatalogFn::power(1), 1.0, 2, 0.1);
    CHECK(a1 == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(b1 == doctest::Approx(0.8).epsilon(1e-15));
    // O(h^2) discrepancy, ratio >= 3.5 under halving
    double prev = -1.0;
    for (double h : {1e-3, 5e-4, 2.5e-4}) {
        auto [fa, fb] = shift_check(CatalogFn::sin(), 1.0, 3, h);
        const double gap = std::abs(fa - fb);
        if (prev > 0.0) CHECK(prev / gap >= 3.5);
        prev = gap;
    }
}

TEST_CASE("catalog parsing") {
    CHECK(parse_catalog_fn("sech").tag == CatalogFn::Tag::Sech);
    CHECK(parse_catalog_fn("power:2.5").param == doctest::Approx(2.5));
    CHECK(parse_catalog_fn("constant:3").param == doctest::Approx(3.0));
    CHECK_THROWS_AS(parse_catalog_fn("sinc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_catalog_fn("power:abc"), std::invalid_argument);
}
