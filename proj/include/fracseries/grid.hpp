#pragma once

#include <Eigen/Core>
#include <string_view>

namespace fracseries {

/// Evaluation grid description, parseable from "lo:hi:count".
struct GridRange {
    double lo = 0.0;
    double hi = 0.0;
    int count = 0;
    bool geometric = false;

    Eigen::ArrayXd make() const;
    static GridRange parse(std::string_view spec, bool geometric = false);
};

}  // namespace fracseries
