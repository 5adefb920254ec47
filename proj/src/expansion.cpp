#include "fracseries/expansion.hpp"

#include <cmath>
#include <stdexcept>

#include "fracseries/specials.hpp"

namespace fracseries {

namespace {

// f^(0..kmax)(a) for the Caputo base-point subtraction. power(p) with
// non-integer p has no jet at 0, but its low derivatives there are plain
// zeros as long as p stays above the requested order.
Eigen::ArrayXd base_derivatives(const CatalogFn& f, double a, int kmax) {
    if (f.tag == CatalogFn::Tag::Power && a == 0.0) {
        const double p = f.param;
        const bool integer_p = std::abs(p - std::round(p)) < 1e-12;
        if (!integer_p) {
            if (p > kmax) return Eigen::ArrayXd::Zero(kmax + 1);
            throw std::domain_error(
                "base derivatives of power(p) at 0 are singular for k >= p, non-integer p");
        }
    }
    return derivatives(f, a, kmax);
}

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// Taylor remainder sum_{k=j}^{n-1} f^(k)(a) (x-a)^{k-j} / (k-j)!
double taylor_remainder(const Eigen::ArrayXd& fa, int j, int n, double xa) {
    double r = 0.0;
    for (int k = j; k <= n - 1; ++k) {
        r += fa[k] * std::pow(xa, double(k - j)) / factorial(k - j);
    }
    return r;
}

}  // namespace

Order::Order(double q) {
    if (!(q > 0.0)) throw std::domain_error("Order: q must be > 0");
    const double r = std::round(q);
    integer_ = std::abs(q - r) < 1e-12;
    value_ = integer_ ? r : q;
}

int Order::as_integer() const {
    if (!integer_) throw std::logic_error("Order::as_integer: order is not integer");
    return static_cast<int>(value_);
}

int caputo_ceiling(const Order& q) {
    if (q.is_integer()) return q.as_integer();
    return static_cast<int>(std::floor(q.value())) + 1;
}

std::string definition_name(Definition d) {
    switch (d) {
        case Definition::GL: return "gl";
        case Definition::RL: return "rl";
        case Definition::Caputo: return "caputo";
    }
    return "?";
}

Definition parse_definition(std::string_view s) {
    if (s == "gl") return Definition::GL;
    if (s == "rl") return Definition::RL;
    if (s == "caputo") return Definition::Caputo;
    throw std::invalid_argument("unknown definition '" + std::string(s) + "'");
}

ExpansionConfig::ExpansionConfig(Definition def, Order q, int n, double a)
    : definition(def), order(q), n_terms(n), base(a) {
    if (n_terms < 1) throw std::invalid_argument("ExpansionConfig: n_terms must be >= 1");
    if (definition == Definition::GL && base != 0.0) {
        throw std::invalid_argument("ExpansionConfig: GL definition requires base = 0");
    }
    if (n_terms - 1 > kMaxJetOrder) {
        throw std::invalid_argument("ExpansionConfig: n_terms exceeds the jet order cap");
    }
}

double series_weight(const Order& q, int k, double x, double a) {
    if (k < 0) throw std::invalid_argument("series_weight: k must be >= 0");
    if (!(x > a)) throw std::domain_error("series_weight: requires x > a");
    const double qv = q.value();
    return binom_general(qv, k) * std::pow(x - a, double(k) - qv) * recip_gamma(k - qv + 1.0);
}

ExpansionResult frac_derivative(const CatalogFn& f, double x, const ExpansionConfig& cfg) {
    const double a = cfg.base;
    if (!(x > a)) throw std::domain_error("frac_derivative: requires x > base");
    const int N = cfg.n_terms;

    const Eigen::ArrayXd fx = derivatives(f, x, N - 1);

    ExpansionResult out;
    out.terms.reserve(N);

    if (cfg.definition == Definition::Caputo) {
        const int n = caputo_ceiling(cfg.order);
        const Eigen::ArrayXd fa = base_derivatives(f, a, n - 1);
        for (int j = 0; j < N; ++j) {
            const double w = series_weight(cfg.order, j, x, a);
            const double bracket = fx[j] - (j <= n - 1 ? taylor_remainder(fa, j, n, x - a) : 0.0);
            const double c = w * bracket;
            out.terms.push_back({j, w, bracket, c});
            out.value += c;
        }
    } else {
        for (int k = 0; k < N; ++k) {
            const double w = series_weight(cfg.order, k, x, a);
            const double c = w * fx[k];
            out.terms.push_back({k, w, fx[k], c});
            out.value += c;
        }
    }
    return out;
}

double frac_derivative_value(const CatalogFn& f, double x, const ExpansionConfig& cfg) {
    return frac_derivative(f, x, cfg).value;
}

double gaussian_hermite_series(double x, const Order& q, int n_terms) {
    if (!(x > 0.0)) throw std::domain_error("gaussian_hermite_series: requires x > 0");
    if (n_terms < 1) throw std::invalid_argument("gaussian_hermite_series: n_terms >= 1");
    const double env = std::exp(-x * x);
    double sum = 0.0;
    for (int k = 0; k < n_terms; ++k) {
        sum += series_weight(q, k, x, 0.0) * hermite(k, -x);
    }
    return env * sum;
}

double caputo_from_rl(const CatalogFn& f, double x, const Order& q, double a, int n_terms) {
    if (!(x > a)) throw std::domain_error("caputo_from_rl: requires x > base");
    if (n_terms < 1) throw std::invalid_argument("caputo_from_rl: n_terms >= 1");
    const int n = caputo_ceiling(q);
    const Eigen::ArrayXd fx = derivatives(f, x, n_terms - 1);
    const Eigen::ArrayXd fa = base_derivatives(f, a, n - 1);

    // derivatives of g = f - (Taylor polynomial of degree n-1 at a)
    Eigen::ArrayXd gx = fx;
    for (int k = 0; k < std::min(n_terms, n); ++k) {
        gx[k] -= taylor_remainder(fa, k, n, x - a);
    }
    double sum = 0.0;
    for (int k = 0; k < n_terms; ++k) {
        sum += series_weight(q, k, x, a) * gx[k];
    }
    return sum;
}

}  // namespace fracseries
