#include "fracseries/gl_discrete.hpp"

#include <cmath>
#include <stdexcept>

#include "fracseries/specials.hpp"

namespace fracseries {

namespace {
bool is_integer(double q) { return std::abs(q - std::round(q)) < 1e-12; }
}

GridSpec::GridSpec(double x_, long n_) : x(x_), n_grid(n_) {
    if (!(x > 0.0)) throw std::invalid_argument("GridSpec: x must be > 0");
    if (n_grid < 1) throw std::invalid_argument("GridSpec: n_grid must be >= 1");
}

double gl_sum(const CatalogFn& f, double q, const GridSpec& g) {
    if (!(q >= 0.0)) throw std::invalid_argument("gl_sum: q must be >= 0");
    const double h = g.h();
    double w = 1.0;  // (-1)^j C(q,j)
    double sum = 0.0;
    for (long j = 0; j < g.n_grid; ++j) {
        sum += w * eval(f, g.x - static_cast<double>(j) * h);
        w *= (static_cast<double>(j) - q) / static_cast<double>(j + 1);
    }
    return sum / std::pow(h, q);
}

double inner_sum(double q, int k, int N, InnerSumMode mode) {
    if (N < 1 || k < 0 || k > N - 1) {
        throw std::invalid_argument("inner_sum: need 0 <= k <= N-1");
    }
    if (mode == InnerSumMode::direct) {
        double sum = 0.0, sign = 1.0;
        for (int j = k; j < N; ++j) {
            sum += sign * binom_general(double(j), k) * binom_general(q, j);
            sign = -sign;
        }
        return sum;
    }
    if (is_integer(q)) {
        throw std::invalid_argument("inner_sum: closed form needs non-integer q");
    }
    const double sign = ((N - k + 1) % 2 == 0) ? 1.0 : -1.0;
    return sign * (N - k) / (q - k) * binom_general(double(N), k) * binom_general(q, N);
}

double weight_exact(double q, int k, long N, double h) {
    if (is_integer(q)) throw std::invalid_argument("weight_exact: q must be non-integer");
    if (k < 0 || k >= N) throw std::invalid_argument("weight_exact: need 0 <= k < N");
    if (!(h > 0.0)) throw std::invalid_argument("weight_exact: h must be > 0");

    const double Nd = static_cast<double>(N);
    double sign = ((N - k + 1) % 2 == 0) ? 1.0 : -1.0;
    double lg = std::log(Nd - k) + (k - q) * std::log(h);
    if (q < k) sign = -sign;
    lg -= std::log(std::abs(q - k));
    // C(N,k)
    lg += std::lgamma(Nd + 1.0) - std::lgamma(double(k) + 1.0) - std::lgamma(Nd - k + 1.0);
    // C(q,N) = Gamma(q+1) / (Gamma(N+1) Gamma(q-N+1))
    const LogGamma g1 = log_abs_gamma(q + 1.0);
    const LogGamma g3 = log_abs_gamma(q - Nd + 1.0);
    lg += g1.log - std::lgamma(Nd + 1.0) - g3.log;
    sign *= g1.sign * g3.sign;

    if (lg > 709.0) {
        throw std::overflow_error("weight_exact: magnitude exceeds double range");
    }
    return sign * std::exp(lg);
}

}  // namespace fracseries
