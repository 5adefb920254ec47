#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fracseries/jets.hpp"

namespace fracseries {

/// Fractional order q > 0. Orders within 1e-12 of an integer are snapped to
/// it so the Kronecker-delta collapse of the series weights is exact.
class Order {
  public:
    explicit Order(double q);

    double value() const { return value_; }
    bool is_integer() const { return integer_; }
    int as_integer() const;

  private:
    double value_;
    bool integer_;
};

/// Ceiling n of the order as used by the Caputo definition: n = q for
/// integer q, floor(q) + 1 otherwise.
int caputo_ceiling(const Order& q);

enum class Definition { GL, RL, Caputo };

std::string definition_name(Definition d);
Definition parse_definition(std::string_view s);

/// Which series to build: definition, base point a (GL forces a = 0),
/// number of retained terms (indices k = 0 .. n_terms-1), and the order.
struct ExpansionConfig {
    Definition definition;
    Order order;
    int n_terms;
    double base = 0.0;

    ExpansionConfig(Definition def, Order q, int n, double a = 0.0);
};

/// One retained term of the expansion. For the Caputo definition
/// derivative_value holds the bracket (the derivative at x minus the
/// base-point Taylor remainder); contribution == weight * derivative_value
/// always.
struct SeriesTerm {
    int k;
    double weight;
    double derivative_value;
    double contribution;
};

struct ExpansionResult {
    double value = 0.0;
    std::vector<SeriesTerm> terms;
};

/// Weight of f^(k) in the integer-derivative series:
///   C(q,k) (x-a)^{k-q} / Gamma(k-q+1),
/// with the gamma factor through recip_gamma. For integer q this is exactly
/// the Kronecker delta delta_{q,k} without any branching: the binomial
/// product vanishes for k > q and recip_gamma hits its zeros for k < q.
double series_weight(const Order& q, int k, double x, double a);

/// Truncated integer-derivative series of the fractional derivative of f at
/// x. GL and RL share the same weighted sum of jet derivatives (GL is the
/// a = 0 case); Caputo subtracts the degree-(n-1) base-point Taylor
/// remainder inside each term. Deterministic ascending-k summation.
ExpansionResult frac_derivative(const CatalogFn& f, double x, const ExpansionConfig& cfg);

/// Convenience: just the value.
double frac_derivative_value(const CatalogFn& f, double x, const ExpansionConfig& cfg);

/// Closed form of the truncated series for exp(-x^2):
///   e^{-x^2} sum_k w_k(q, x) H_k(-x).
/// Must agree with the jet path to roundoff; diverges for N >> q at
/// moderate x, which is a property of the series, not an error.
double gaussian_hermite_series(double x, const Order& q, int n_terms);

/// Caputo derivative through the Riemann-Liouville bridge: the RL series
/// applied to f minus its degree-(n-1) Taylor polynomial at a. Independent
/// assembly from the Caputo branch of frac_derivative; the two must agree.
double caputo_from_rl(const CatalogFn& f, double x, const Order& q, double a, int n_terms);

}  // namespace fracseries
