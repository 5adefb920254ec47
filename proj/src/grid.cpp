#include "fracseries/grid.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fracseries {

Eigen::ArrayXd GridRange::make() const {
    if (count < 1) throw std::invalid_argument("grid: count must be >= 1");
    if (count == 1) return Eigen::ArrayXd::Constant(1, lo);
    if (!(hi > lo)) throw std::invalid_argument("grid: need hi > lo");
    if (geometric) {
        if (!(lo > 0.0)) throw std::invalid_argument("grid: geometric spacing needs lo > 0");
        return Eigen::exp(Eigen::ArrayXd::LinSpaced(count, std::log(lo), std::log(hi)));
    }
    return Eigen::ArrayXd::LinSpaced(count, lo, hi);
}

GridRange GridRange::parse(std::string_view spec, bool geometric) {
    GridRange g;
    g.geometric = geometric;
    const auto bad = [&] {
        throw std::invalid_argument("grid: expected lo:hi:count, got '" + std::string(spec) + "'");
    };
    const size_t c1 = spec.find(':');
    const size_t c2 = (c1 == std::string_view::npos) ? c1 : spec.find(':', c1 + 1);
    if (c1 == std::string_view::npos || c2 == std::string_view::npos) bad();

    const auto num = [&](std::string_view s, auto& out) {
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
        if (ec != std::errc{} || p != s.data() + s.size()) bad();
    };
    num(spec.substr(0, c1), g.lo);
    num(spec.substr(c1 + 1, c2 - c1 - 1), g.hi);
    num(spec.substr(c2 + 1), g.count);
    return g;
}

}  // namespace fracseries
