#pragma once

#include "fracseries/jets.hpp"

namespace fracseries {

/// Uniform left grid on (0, x]: h = x / n_grid, samples at x - j h for
/// j = 0 .. n_grid-1 (the base point itself is never sampled).
struct GridSpec {
    double x;
    long n_grid;

    GridSpec(double x_, long n_);
    double h() const { return x / static_cast<double>(n_grid); }
};

/// Discrete Grünwald-Letnikov sum
///   h^{-q} sum_j (-1)^j C(q,j) f(x - j h).
/// The alternating binomial factor is carried by the ratio recurrence
/// w_{j+1} = w_j (j - q)/(j + 1); no per-term gamma calls.
double gl_sum(const CatalogFn& f, double q, const GridSpec& g);

enum class InnerSumMode { direct, closed };

/// Inner sum over the displacement-operator expansion,
///   direct: sum_{j=k}^{N-1} (-1)^{j-k} C(j,k) C(q,j)
///   closed: (-1)^{N-k+1} (N-k)/(q-k) C(N,k) C(q,N)
/// The two agree identically for non-integer q; direct summation is the
/// oracle for the closed form.
double inner_sum(double q, int k, int N, InnerSumMode mode);

/// Exact finite-N weight of the k-th integer derivative,
///   (-1)^{N-k+1} (N-k) h^{k-q}/(q-k) C(N,k) C(q,N),
/// evaluated in log space with sign tracking (C(N,k) overflows doubles near
/// N ~ 1e3). Throws std::overflow_error if the magnitude itself does not fit.
/// Requires non-integer q and k < N.
double weight_exact(double q, int k, long N, double h);

}  // namespace fracseries
