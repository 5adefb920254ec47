#pragma once

#include <Eigen/Core>
#include <vector>

#include "fracseries/expansion.hpp"

namespace fracseries {

/// Symmetric relative error (a - b) / ((|a| + |b|)/2), range [-2, 2].
/// Returns 0 for a == b == 0 by convention.
double rel_error(double a, double b);

/// Per-row summary with the spike rule applied: grid points within 1e-3 of
/// a root of the reference or of the truncation are excluded from max/mean
/// (the raw error rows keep them).
struct RowStats {
    double max_abs_err = 0.0;
    double mean_abs_err = 0.0;
    int excluded = 0;
};

/// Truncation-error table over (q, N, x). Rows of `values`/`errors` are
/// ordered q-major: row = iq * |truncations| + in. `reference` has one row
/// per q. The reference is the high-N partial sum, except for the gaussian
/// where the series diverges and the discrete GL sum (n_grid = 1e5) stands
/// in instead.
struct SweepResult {
    CatalogFn fn;
    Definition def;
    std::vector<double> orders;
    std::vector<int> truncations;
    int reference_n = 0;
    Eigen::ArrayXd grid;
    Eigen::ArrayXXd reference;  // orders x grid
    Eigen::ArrayXXd values;     // (orders*truncations) x grid
    Eigen::ArrayXXd errors;     // same shape as values
    std::vector<RowStats> stats;
};

SweepResult truncation_sweep(const CatalogFn& f, Definition def,
                             const std::vector<double>& q_list,
                             const std::vector<int>& n_list,
                             const Eigen::ArrayXd& grid, int reference_n);

/// Mean |error| of the Caputo q = 1/2 truncation at n_terms over a uniform
/// 512-point grid on [lo, hi], spike-excluded, reference N = 40.
double average_error_claim(const CatalogFn& f, int n_terms, double lo = 0.1,
                           double hi = 5.0);

/// Approximate roots of `row` sampled on `grid` (exact zeros and linear
/// interpolation of sign changes). Exposed for the spike-exclusion tests.
std::vector<double> grid_roots(const Eigen::ArrayXd& grid, const Eigen::ArrayXd& row);

}  // namespace fracseries
