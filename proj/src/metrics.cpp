#include "fracseries/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fracseries/gl_discrete.hpp"
#include "fracseries/specials.hpp"

namespace fracseries {

namespace {

constexpr double kSpikeRadius = 1e-3;
constexpr long kGaussianRefGrid = 100000;

RowStats masked_stats(const Eigen::ArrayXd& grid, const Eigen::ArrayXd& ref_row,
                      const Eigen::ArrayXd& val_row, const Eigen::ArrayXd& err_row) {
    std::vector<double> roots = grid_roots(grid, ref_row);
    const std::vector<double> more = grid_roots(grid, val_row);
    roots.insert(roots.end(), more.begin(), more.end());

    RowStats st;
    double sum = 0.0;
    int kept = 0;
    for (int i = 0; i < grid.size(); ++i) {
        bool excluded = false;
        for (double r : roots) {
            if (std::abs(grid[i] - r) < kSpikeRadius) {
                excluded = true;
                break;
            }
        }
        if (excluded) {
            ++st.excluded;
            continue;
        }
        const double e = std::abs(err_row[i]);
        st.max_abs_err = std::max(st.max_abs_err, e);
        sum += e;
        ++kept;
    }
    if (kept > 0) st.mean_abs_err = sum / kept;
    return st;
}

}  // namespace

double rel_error(double a, double b) {
    if (a == 0.0 && b == 0.0) return 0.0;
    return (a - b) / ((std::abs(a) + std::abs(b)) / 2.0);
}

std::vector<double> grid_roots(const Eigen::ArrayXd& grid, const Eigen::ArrayXd& row) {
    std::vector<double> roots;
    for (int i = 0; i < grid.size(); ++i) {
        if (row[i] == 0.0) {
            roots.push_back(grid[i]);
        } else if (i + 1 < grid.size() && row[i] * row[i + 1] < 0.0) {
            roots.push_back(grid[i] - row[i] * (grid[i + 1] - grid[i]) / (row[i + 1] - row[i]));
        }
    }
    return roots;
}

SweepResult truncation_sweep(const CatalogFn& f, Definition def,
                             const std::vector<double>& q_list,
                             const std::vector<int>& n_list,
                             const Eigen::ArrayXd& grid, int reference_n) {
    if (q_list.empty() || n_list.empty() || grid.size() == 0) {
        throw std::invalid_argument("truncation_sweep: empty q list, N list, or grid");
    }
    const bool gaussian_ref = f.tag == CatalogFn::Tag::Gaussian;
    if (!gaussian_ref && reference_n <= *std::max_element(n_list.begin(), n_list.end())) {
        // the gaussian reference is the discrete GL sum, not a longer series
        throw std::invalid_argument("truncation_sweep: reference_n must exceed max(N)");
    }

    SweepResult r;
    r.fn = f;
    r.def = def;
    r.orders = q_list;
    r.truncations = n_list;
    r.reference_n = reference_n;
    r.grid = grid;
    const int nq = static_cast<int>(q_list.size());
    const int nn = static_cast<int>(n_list.size());
    const int nx = static_cast<int>(grid.size());
    r.reference.resize(nq, nx);
    r.values.resize(nq * nn, nx);
    r.errors.resize(nq * nn, nx);
    r.stats.resize(nq * nn);

    for (int iq = 0; iq < nq; ++iq) {
        const Order q(q_list[iq]);
        for (int ix = 0; ix < nx; ++ix) {
            const double x = grid[ix];
            if (gaussian_ref) {
                double ref = gl_sum(f, q.value(), GridSpec(x, kGaussianRefGrid));
                if (def == Definition::Caputo) {
                    // discrete Caputo: subtract the exact GL derivative of the
                    // base-point Taylor polynomial (power rule, termwise exact)
                    const int n = caputo_ceiling(q);
                    const Eigen::ArrayXd fa = derivatives(f, 0.0, n - 1);
                    double fact = 1.0;
                    for (int k = 0; k <= n - 1; ++k) {
                        ref -= fa[k] / fact * gamma(k + 1.0) *
                               recip_gamma(k - q.value() + 1.0) *
                               std::pow(x, k - q.value());
                        fact *= k + 1;
                    }
                }
                r.reference(iq, ix) = ref;
            } else {
                r.reference(iq, ix) =
                    frac_derivative_value(f, x, ExpansionConfig(def, q, reference_n));
            }
        }
        for (int in = 0; in < nn; ++in) {
            const int row = iq * nn + in;
            const ExpansionConfig cfg(def, q, n_list[in]);
            for (int ix = 0; ix < nx; ++ix) {
                const double v = frac_derivative_value(f, grid[ix], cfg);
                r.values(row, ix) = v;
                r.errors(row, ix) = rel_error(r.reference(iq, ix), v);
            }
            r.stats[row] = masked_stats(grid, r.reference.row(iq).transpose(),
                                        r.values.row(row).transpose(),
                                        r.errors.row(row).transpose());
        }
    }
    return r;
}

double average_error_claim(const CatalogFn& f, int n_terms, double lo, double hi) {
    constexpr int kRefN = 40;
    if (n_terms >= kRefN) {
        throw std::invalid_argument("average_error_claim: n_terms must be below the reference 40");
    }
    const Eigen::ArrayXd grid = Eigen::ArrayXd::LinSpaced(512, lo, hi);
    const SweepResult s =
        truncation_sweep(f, Definition::Caputo, {0.5}, {n_terms}, grid, kRefN);
    return s.stats[0].mean_abs_err;
}

}  // namespace fracseries
