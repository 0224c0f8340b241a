#include "phasembed/dynamics/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "phasembed/core/types.hpp"

namespace phasembed::dynamics {

using core::Errc;
using core::Error;

namespace {

double sample_std(const std::vector<double>& x) {
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(x.size());
    double var = 0.0;
    for (double v : x) {
        const double d = v - mean;
        var += d * d;
    }
    return std::sqrt(var / static_cast<double>(x.size()));
}

// Pairs (i, j) of m-dimensional states in a subseries of length `len`
// with index gap >= 2 (one original-series delay of temporal exclusion).
std::size_t pair_count_for(std::size_t len, int m) {
    const long long n = static_cast<long long>(len) - m + 1;
    if (n < 3) return 0;
    return static_cast<std::size_t>((n - 1) * (n - 2) / 2);
}

// Everything below the flatness floor at every candidate means the series
// behaves like independent noise for the C-C statistics.
constexpr double kNoStructureFloor = 0.02;

}  // namespace

CcResult cc_method(const std::vector<double>& x, int tau, const std::vector<int>& m_candidates) {
    if (x.size() < 500) throw Error(Errc::TooShort, "cc_method needs T >= 500");
    if (tau < 1) throw Error(Errc::BadConfig, "tau must be >= 1");
    if (m_candidates.empty()) throw Error(Errc::BadConfig, "empty candidate list");

    const double sigma = sample_std(x);
    const std::vector<double> radii = {0.5 * sigma, 1.0 * sigma, 1.5 * sigma, 2.0 * sigma};
    const double r_max = radii.back();
    const int m_max = *std::max_element(m_candidates.begin(), m_candidates.end());
    const int m_min = *std::min_element(m_candidates.begin(), m_candidates.end());
    if (m_min < 1) throw Error(Errc::BadConfig, "candidates must be >= 1");
    const std::size_t n_r = radii.size();

    const auto tt = static_cast<std::size_t>(tau);
    std::vector<double> s_sum(static_cast<std::size_t>(m_max + 1) * n_r, 0.0);
    std::size_t subseries_used = 0;

    std::vector<double> sub;
    std::vector<std::size_t> within(static_cast<std::size_t>(m_max + 1) * n_r, 0);

    for (std::size_t offset = 0; offset < tt; ++offset) {
        sub.clear();
        for (std::size_t i = offset; i < x.size(); i += tt) sub.push_back(x[i]);
        const std::size_t len = sub.size();
        if (len < static_cast<std::size_t>(m_max) + 2) continue;

        std::fill(within.begin(), within.end(), 0);

        // One pass per pair: the Chebyshev distance grows with the embedding
        // dimension, so each dimension's correlation integral is a running
        // threshold count. Once the distance clears the largest radius no
        // higher dimension can contribute.
        for (std::size_t i = 0; i + 2 < len; ++i) {
            const double* xi = sub.data() + i;
            for (std::size_t j = i + 2; j < len; ++j) {
                const double* xj = sub.data() + j;
                const std::size_t m_fit = std::min<std::size_t>(m_max, len - j);
                double dist = 0.0;
                for (std::size_t d = 0; d < m_fit; ++d) {
                    const double diff = std::fabs(xi[d] - xj[d]);
                    if (diff > dist) dist = diff;
                    if (dist >= r_max) break;
                    std::size_t* w = within.data() + (d + 1) * n_r;
                    for (std::size_t r = n_r; r-- > 0;) {
                        if (dist >= radii[r]) break;
                        w[r] += 1;
                    }
                }
            }
        }

        for (std::size_t r = 0; r < n_r; ++r) {
            const double c1 = static_cast<double>(within[1 * n_r + r]) /
                              static_cast<double>(pair_count_for(len, 1));
            for (int m = 1; m <= m_max; ++m) {
                const auto mu = static_cast<std::size_t>(m);
                const double cm = static_cast<double>(within[mu * n_r + r]) /
                                  static_cast<double>(pair_count_for(len, m));
                s_sum[mu * n_r + r] += cm - std::pow(c1, static_cast<double>(m));
            }
        }
        ++subseries_used;
    }

    if (subseries_used == 0)
        throw Error(Errc::TooShort, "subseries too short for the largest candidate");

    CcResult result;
    result.s_cor.reserve(m_candidates.size());
    double best = std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (int m : m_candidates) {
        const auto mu = static_cast<std::size_t>(m);
        double s_min = std::numeric_limits<double>::infinity();
        double s_max = -std::numeric_limits<double>::infinity();
        double s_mean = 0.0;
        for (std::size_t r = 0; r < n_r; ++r) {
            const double s = s_sum[mu * n_r + r] / static_cast<double>(subseries_used);
            s_min = std::min(s_min, s);
            s_max = std::max(s_max, s);
            s_mean += s;
        }
        s_mean /= static_cast<double>(n_r);
        const double s_cor = (s_max - s_min) + std::fabs(s_mean);
        result.s_cor.push_back(s_cor);
        best = std::min(best, s_cor);
        worst = std::max(worst, s_cor);
    }

    if (worst < kNoStructureFloor) {
        result.m = m_max;
        result.no_structure = true;
        return result;
    }

    for (std::size_t i = 0; i < m_candidates.size(); ++i) {
        if (result.s_cor[i] <= 1.1 * best + 1e-12) {
            result.m = m_candidates[i];
            return result;
        }
    }
    result.m = m_max;  // unreachable: the minimum itself always qualifies
    return result;
}

FnnResult fnn_dimension(const std::vector<double>& x, int tau, int m_max, double rtol,
                        double atol) {
    if (x.size() < 500) throw Error(Errc::TooShort, "fnn_dimension needs T >= 500");
    if (tau < 1 || m_max < 1) throw Error(Errc::BadConfig, "need tau >= 1 and m_max >= 1");

    const double sigma = sample_std(x);
    const double attractor_size = std::max(sigma, 1e-300);
    const auto t = static_cast<long long>(x.size());
    const auto tt = static_cast<long long>(tau);

    FnnResult result;
    for (int m = 1; m <= m_max; ++m) {
        // States v(i) = (x[i], x[i+tau], ..., x[i+(m-1)tau]); the candidate
        // coordinate for m+1 is x[i+m*tau], so restrict to indices where it
        // exists.
        const long long n = t - static_cast<long long>(m) * tt;
        if (n < 10) break;

        std::size_t false_neighbors = 0;
        std::size_t counted = 0;
        for (long long i = 0; i < n; ++i) {
            double best_dist2 = std::numeric_limits<double>::infinity();
            long long best_j = -1;
            for (long long j = 0; j < n; ++j) {
                if (std::llabs(i - j) <= tt) continue;
                double dist2 = 0.0;
                for (int d = 0; d < m; ++d) {
                    const double diff = x[i + static_cast<long long>(d) * tt] -
                                        x[j + static_cast<long long>(d) * tt];
                    dist2 += diff * diff;
                    if (dist2 >= best_dist2) break;
                }
                if (dist2 < best_dist2) {
                    best_dist2 = dist2;
                    best_j = j;
                }
            }
            if (best_j < 0) continue;

            const double r_m = std::sqrt(best_dist2);
            const double extra =
                std::fabs(x[i + static_cast<long long>(m) * tt] -
                          x[best_j + static_cast<long long>(m) * tt]);
            ++counted;
            bool is_false = false;
            if (r_m > 0.0 && extra / r_m > rtol) is_false = true;
            const double r_m1 = std::sqrt(best_dist2 + extra * extra);
            if (r_m1 / attractor_size > atol) is_false = true;
            if (is_false) ++false_neighbors;
        }
        if (counted == 0) throw Error(Errc::NoNeighbors, "no admissible neighbors");

        const double fraction = static_cast<double>(false_neighbors) / static_cast<double>(counted);
        result.fraction.push_back(fraction);
        if (fraction < 0.01) {
            result.m = m;
            result.converged = true;
            return result;
        }
    }
    result.m = m_max;
    result.converged = false;
    return result;
}

}  // namespace phasembed::dynamics
