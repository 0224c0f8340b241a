#include "phasembed/dynamics/lyapunov.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "phasembed/core/types.hpp"

namespace phasembed::dynamics {

using core::Errc;
using core::Error;

double rosenstein_lle(const std::vector<double>& x, int tau, int m, double dt, int theiler,
                      int fit_steps) {
    if (tau < 1 || m < 1) throw Error(Errc::BadConfig, "need tau >= 1 and m >= 1");
    if (!(dt > 0.0)) throw Error(Errc::BadDt, "dt must be > 0");
    if (theiler < 0) throw Error(Errc::BadConfig, "theiler must be >= 0");
    if (fit_steps < 2) throw Error(Errc::BadConfig, "need fit_steps >= 2");

    const long long span = static_cast<long long>(m - 1) * tau;
    const long long n = static_cast<long long>(x.size()) - span;
    if (n < 2000)
        throw Error(Errc::TooShort,
                    "rosenstein_lle needs >= 2000 embedded states, got " + std::to_string(n));

    // Flat state storage: state i occupies [i*m, (i+1)*m).
    const auto nm = static_cast<std::size_t>(n) * static_cast<std::size_t>(m);
    std::vector<double> states(nm);
    for (long long i = 0; i < n; ++i)
        for (int d = 0; d < m; ++d)
            states[static_cast<std::size_t>(i) * m + d] = x[i + static_cast<long long>(d) * tau];

    std::vector<long long> neighbor(static_cast<std::size_t>(n), -1);
    for (long long i = 0; i < n; ++i) {
        const double* vi = states.data() + static_cast<std::size_t>(i) * m;
        double best = std::numeric_limits<double>::infinity();
        long long best_j = -1;
        for (long long j = 0; j < n; ++j) {
            const long long gap = i > j ? i - j : j - i;
            if (gap <= theiler) continue;
            const double* vj = states.data() + static_cast<std::size_t>(j) * m;
            double dist2 = 0.0;
            for (int d = 0; d < m; ++d) {
                const double diff = vi[d] - vj[d];
                dist2 += diff * diff;
                if (dist2 >= best) break;
            }
            if (dist2 < best && dist2 > 0.0) {
                best = dist2;
                best_j = j;
            }
        }
        neighbor[static_cast<std::size_t>(i)] = best_j;
    }

    std::vector<double> mean_log(static_cast<std::size_t>(fit_steps) + 1, 0.0);
    std::vector<std::size_t> counts(static_cast<std::size_t>(fit_steps) + 1, 0);
    for (long long i = 0; i < n; ++i) {
        const long long j = neighbor[static_cast<std::size_t>(i)];
        if (j < 0) continue;
        const long long horizon = std::min<long long>(fit_steps, n - 1 - std::max(i, j));
        for (long long step = 0; step <= horizon; ++step) {
            const double* a = states.data() + static_cast<std::size_t>(i + step) * m;
            const double* b = states.data() + static_cast<std::size_t>(j + step) * m;
            double dist2 = 0.0;
            for (int d = 0; d < m; ++d) {
                const double diff = a[d] - b[d];
                dist2 += diff * diff;
            }
            if (dist2 <= 0.0) continue;
            mean_log[static_cast<std::size_t>(step)] += 0.5 * std::log(dist2);
            counts[static_cast<std::size_t>(step)] += 1;
        }
    }

    // Least-squares slope of the mean log-divergence curve.
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::size_t pts = 0;
    for (std::size_t step = 0; step < mean_log.size(); ++step) {
        if (counts[step] == 0) continue;
        const double xv = static_cast<double>(step);
        const double yv = mean_log[step] / static_cast<double>(counts[step]);
        sx += xv;
        sy += yv;
        sxx += xv * xv;
        sxy += xv * yv;
        ++pts;
    }
    if (pts < 2) throw Error(Errc::NoNeighbors, "no admissible neighbor pairs to track");
    const double denom = static_cast<double>(pts) * sxx - sx * sx;
    if (denom == 0.0) throw Error(Errc::NoNeighbors, "degenerate divergence curve");
    const double slope = (static_cast<double>(pts) * sxy - sx * sy) / denom;
    return slope / dt;
}

}  // namespace phasembed::dynamics
