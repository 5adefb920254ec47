#include "fracseries/jets.hpp"

#include <cmath>
#include <charconv>
#include <stdexcept>

#include "fracseries/specials.hpp"

namespace fracseries {

namespace {

bool is_integer(double p) { return std::abs(p - std::round(p)) < 1e-12; }

double parse_param(std::string_view s) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw std::invalid_argument("catalog function: bad parameter '" + std::string(s) + "'");
    }
    return v;
}

}  // namespace

std::string CatalogFn::name() const {
    switch (tag) {
        case Tag::Sech: return "sech";
        case Tag::Tanh: return "tanh";
        case Tag::Sin: return "sin";
        case Tag::Cos: return "cos";
        case Tag::Gaussian: return "gaussian";
        case Tag::Exp: return "exp";
        case Tag::Power: return "power:" + std::to_string(param);
        case Tag::Constant: return "constant:" + std::to_string(param);
    }
    return "?";
}

CatalogFn parse_catalog_fn(std::string_view s) {
    if (s == "sech") return CatalogFn::sech();
    if (s == "tanh") return CatalogFn::tanh();
    if (s == "sin") return CatalogFn::sin();
    if (s == "cos") return CatalogFn::cos();
    if (s == "gaussian") return CatalogFn::gaussian();
    if (s == "exp") return CatalogFn::exp();
    if (s.rfind("power:", 0) == 0) return CatalogFn::power(parse_param(s.substr(6)));
    if (s.rfind("constant:", 0) == 0) return CatalogFn::constant(parse_param(s.substr(9)));
    throw std::invalid_argument("unknown catalog function '" + std::string(s) + "'");
}

double Jet::derivative(int k) const {
    if (k < 0 || k > order()) throw std::domain_error("Jet::derivative: k out of range");
    double d = coeffs[k];
    for (int i = 2; i <= k; ++i) d *= i;
    return d;
}

Jet jet_eval(const CatalogFn& f, double x, int order) {
    if (order < 0 || order > kMaxJetOrder) {
        throw std::invalid_argument("jet_eval: order must be in [0, 200]");
    }
    Jet jet;
    jet.point = x;
    Eigen::ArrayXd& c = jet.coeffs;
    c = Eigen::ArrayXd::Zero(order + 1);

    switch (f.tag) {
        case CatalogFn::Tag::Exp:
            c[0] = std::exp(x);
            for (int k = 0; k < order; ++k) c[k + 1] = c[k] / (k + 1);
            break;
        case CatalogFn::Tag::Sin:
        case CatalogFn::Tag::Cos: {
            // coupled pair: s' = c, c' = -s
            Eigen::ArrayXd s = Eigen::ArrayXd::Zero(order + 1);
            Eigen::ArrayXd co = Eigen::ArrayXd::Zero(order + 1);
            s[0] = std::sin(x);
            co[0] = std::cos(x);
            for (int k = 0; k < order; ++k) {
                s[k + 1] = co[k] / (k + 1);
                co[k + 1] = -s[k] / (k + 1);
            }
            c = (f.tag == CatalogFn::Tag::Sin) ? s : co;
            break;
        }
        case CatalogFn::Tag::Sech:
        case CatalogFn::Tag::Tanh: {
            // s' = -s*t, t' = s^2, lifted to Cauchy products on the coefficients
            Eigen::ArrayXd s = Eigen::ArrayXd::Zero(order + 1);
            Eigen::ArrayXd t = Eigen::ArrayXd::Zero(order + 1);
            s[0] = 1.0 / std::cosh(x);
            t[0] = std::tanh(x);
            for (int k = 0; k < order; ++k) {
                s[k + 1] = -(s.head(k + 1) * t.head(k + 1).reverse()).sum() / (k + 1);
                t[k + 1] = (s.head(k + 1) * s.head(k + 1).reverse()).sum() / (k + 1);
            }
            c = (f.tag == CatalogFn::Tag::Sech) ? s : t;
            break;
        }
        case CatalogFn::Tag::Gaussian:
            // g' = -2 (x + t) g in the local variable t
            c[0] = std::exp(-x * x);
            for (int k = 0; k < order; ++k) {
                c[k + 1] = -2.0 * (x * c[k] + (k >= 1 ? c[k - 1] : 0.0)) / (k + 1);
            }
            break;
        case CatalogFn::Tag::Power: {
            const double p = f.param;
            if (is_integer(p) && p >= 0.0) {
                const int pi = static_cast<int>(std::round(p));
                for (int k = 0; k <= std::min(order, pi); ++k) {
                    c[k] = binom_general(p, k) * std::pow(x, double(pi - k));
                }
            } else {
                if (!is_integer(p) && !(x > 0.0)) {
                    throw std::domain_error("jet_eval: power with non-integer exponent needs x > 0");
                }
                if (x == 0.0) {
                    throw std::domain_error("jet_eval: power with negative exponent needs x != 0");
                }
                c[0] = std::pow(x, p);
                for (int k = 0; k < order; ++k) {
                    c[k + 1] = (p - k) * c[k] / ((k + 1) * x);
                }
            }
            break;
        }
        case CatalogFn::Tag::Constant:
            c[0] = f.param;
            break;
    }
    return jet;
}

double eval(const CatalogFn& f, double x) {
    switch (f.tag) {
        case CatalogFn::Tag::Sech: return 1.0 / std::cosh(x);
        case CatalogFn::Tag::Tanh: return std::tanh(x);
        case CatalogFn::Tag::Sin: return std::sin(x);
        case CatalogFn::Tag::Cos: return std::cos(x);
        case CatalogFn::Tag::Gaussian: return std::exp(-x * x);
        case CatalogFn::Tag::Exp: return std::exp(x);
        case CatalogFn::Tag::Power:
            if (is_integer(f.param)) {
                if (f.param < 0.0 && x == 0.0) {
                    throw std::domain_error("eval: power with negative exponent at x = 0");
                }
                return std::pow(x, std::round(f.param));
            }
            if (!(x > 0.0)) {
                throw std::domain_error("eval: power with non-integer exponent needs x > 0");
            }
            return std::pow(x, f.param);
        case CatalogFn::Tag::Constant: return f.param;
    }
    return 0.0;
}

double derivative(const CatalogFn& f, double x, int k) {
    return jet_eval(f, x, k).derivative(k);
}

Eigen::ArrayXd derivatives(const CatalogFn& f, double x, int kmax) {
    const Jet jet = jet_eval(f, x, kmax);
    Eigen::ArrayXd out(kmax + 1);
    for (int k = 0; k <= kmax; ++k) out[k] = jet.derivative(k);
    return out;
}

std::pair<double, double> shift_check(const CatalogFn& f, double x, int j, double h) {
    if (j < 0) throw std::invalid_argument("shift_check: j must be >= 0");
    const double shifted = eval(f, x - j * h);
    const Jet jet = jet_eval(f, x, j);
    // (1 - h D)^j f = sum_i C(j,i) (-h)^i f^(i)(x)
    double op = 0.0, hp = 1.0;
    for (int i = 0; i <= j; ++i) {
        op += binom_general(double(j), i) * hp * jet.derivative(i);
        hp *= -h;
    }
    return {shifted, op};
}

}  // namespace fracseries
