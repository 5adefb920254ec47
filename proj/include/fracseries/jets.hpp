#pragma once

#include <Eigen/Core>
#include <string>
#include <string_view>
#include <utility>

namespace fracseries {

/// Closed catalog of functions with exact jet recurrences. The catalog is
/// deliberately small: every member has derivatives of any order available
/// without finite differencing.
struct CatalogFn {
    enum class Tag { Sech, Tanh, Sin, Cos, Gaussian, Exp, Power, Constant };

    Tag tag;
    double param = 0.0;  // exponent for Power, value for Constant

    static CatalogFn sech() { return {Tag::Sech}; }
    static CatalogFn tanh() { return {Tag::Tanh}; }
    static CatalogFn sin() { return {Tag::Sin}; }
    static CatalogFn cos() { return {Tag::Cos}; }
    static CatalogFn gaussian() { return {Tag::Gaussian}; }  // exp(-x^2)
    static CatalogFn exp() { return {Tag::Exp}; }
    static CatalogFn power(double p) { return {Tag::Power, p}; }
    static CatalogFn constant(double c) { return {Tag::Constant, c}; }

    std::string name() const;
};

/// Parses "sech", "power:2.5", "constant:3", ...
CatalogFn parse_catalog_fn(std::string_view s);

/// Truncated Taylor expansion of a catalog function about `point`:
/// coeffs[k] = f^(k)(point) / k!.
struct Jet {
    double point = 0.0;
    Eigen::ArrayXd coeffs;

    int order() const { return static_cast<int>(coeffs.size()) - 1; }

    /// f^(k)(point) = k! * coeffs[k]. The product is accumulated starting
    /// from the coefficient so intermediates never exceed the final value.
    double derivative(int k) const;
};

inline constexpr int kMaxJetOrder = 200;

/// Exact jet of f at x up to `order` coefficients past the value.
/// power(p): integer p >= 0 works everywhere, integer p < 0 needs x != 0,
/// non-integer p needs x > 0 (throws std::domain_error otherwise).
Jet jet_eval(const CatalogFn& f, double x, int order);

/// Plain function value (cheaper than a jet for grid sums).
double eval(const CatalogFn& f, double x);

/// f^(k)(x), exact.
double derivative(const CatalogFn& f, double x, int k);

/// All of f^(0..kmax)(x) from one jet.
Eigen::ArrayXd derivatives(const CatalogFn& f, double x, int kmax);

/// Compares the finite shift f(x - j h) with the truncated displacement
/// operator (1 - h d/dx)^j applied through the jet of order j. The pair
/// agrees exactly at h = 0 and to O(h^2) otherwise.
std::pair<double, double> shift_check(const CatalogFn& f, double x, int j, double h);

}  // namespace fracseries
