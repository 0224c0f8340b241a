#include "phasembed/dynamics/information.hpp"

#include <algorithm>
#include <cmath>

#include "phasembed/core/types.hpp"

namespace phasembed::dynamics {

using core::Errc;
using core::Error;

namespace {

int bin_index(double v, double lo, double hi, int bins) {
    if (!(hi > lo)) return 0;  // degenerate range: single occupied bin
    const int b = static_cast<int>((v - lo) / (hi - lo) * bins);
    return std::clamp(b, 0, bins - 1);
}

}  // namespace

double mutual_information(const std::vector<double>& x, const std::vector<double>& y, int bins) {
    if (x.size() != y.size())
        throw Error(Errc::LengthMismatch, "channels differ in length");
    if (x.size() < 100) throw Error(Errc::TooShort, "mutual_information needs T >= 100");
    if (bins < 2) throw Error(Errc::BadConfig, "need bins >= 2");

    const auto [x_lo_it, x_hi_it] = std::minmax_element(x.begin(), x.end());
    const auto [y_lo_it, y_hi_it] = std::minmax_element(y.begin(), y.end());
    const double x_lo = *x_lo_it, x_hi = *x_hi_it;
    const double y_lo = *y_lo_it, y_hi = *y_hi_it;

    const auto b = static_cast<std::size_t>(bins);
    std::vector<std::size_t> joint(b * b, 0);
    std::vector<std::size_t> mx(b, 0), my(b, 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        const auto bx = static_cast<std::size_t>(bin_index(x[i], x_lo, x_hi, bins));
        const auto by = static_cast<std::size_t>(bin_index(y[i], y_lo, y_hi, bins));
        joint[bx * b + by] += 1;
        mx[bx] += 1;
        my[by] += 1;
    }

    const double n = static_cast<double>(x.size());
    double mi = 0.0;
    for (std::size_t i = 0; i < b; ++i) {
        for (std::size_t j = 0; j < b; ++j) {
            const std::size_t c = joint[i * b + j];
            if (c == 0) continue;
            const double pij = static_cast<double>(c) / n;
            const double pi = static_cast<double>(mx[i]) / n;
            const double pj = static_cast<double>(my[j]) / n;
            mi += pij * std::log2(pij / (pi * pj));
        }
    }
    return mi;
}

}  // namespace phasembed::dynamics
