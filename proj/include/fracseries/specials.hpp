#pragma once

#include <utility>
#include <vector>

namespace fracseries {

/// sin(pi*x) with exact integer zeros: the argument is reduced to its
/// fractional part before evaluation, so sinpi(n) == 0 for integer n.
double sinpi(double x);

/// Euler gamma function for real arguments.
///
/// Lanczos approximation (g = 7, 9 terms) for z >= 0.5, reflection below.
/// Throws std::domain_error within 1e-12 of a nonpositive integer.
double gamma(double z);

/// 1/Gamma(z), entire: finite for every real z and exactly zero at the
/// nonpositive integers (where gamma has its poles).
double recip_gamma(double z);

/// log|Gamma(z)| plus the sign of Gamma(z).
struct LogGamma {
    double log;
    double sign;
};
LogGamma log_abs_gamma(double z);

/// Generalized binomial coefficient C(q, j) for real q, integer j >= 0,
/// computed as the falling-factorial product q(q-1)...(q-j+1)/j!.
/// Exact (no gamma poles) for integer q.
double binom_general(double q, int j);

struct MLParams {
    double alpha;                    // > 0
    double beta;
    double z;
    double cancel_threshold = 30.0;  // |z| above this sets the cancellation flag
};

/// Generalized Mittag-Leffler function E_{alpha,beta}(z) by direct series,
/// compensated (Kahan) accumulation. Stops once the term magnitude drops
/// below 1e-16 of the partial sum (only after alpha*k+beta has passed the
/// last possible gamma pole); throws std::runtime_error after 1e4 terms.
/// If `cancellation` is non-null it is set when |z| > cancel_threshold.
double mittag_leffler(const MLParams& p, bool* cancellation = nullptr);
double mittag_leffler(double alpha, double beta, double z);

struct FoxWrightParams {
    std::vector<std::pair<double, double>> upper;  // (a_k, A_k)
    std::vector<std::pair<double, double>> lower;  // (b_l, B_l)
    double z;
};

/// Generalized Fox-Wright function pPsiq. Lower-parameter gamma factors go
/// through recip_gamma, so gamma poles produce zero terms instead of
/// infinities. Stopping rule as for mittag_leffler, except two consecutive
/// negligible terms are required (single terms may vanish at gamma poles).
double fox_wright(const FoxWrightParams& p);

/// Physicists' Hermite polynomial H_k(x) via the three-term recurrence.
double hermite(int k, double x);

}  // namespace fracseries
