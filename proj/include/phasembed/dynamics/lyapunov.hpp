#pragma once

#include <vector>

namespace phasembed::dynamics {

/// Largest Lyapunov exponent from data by the Rosenstein nearest-neighbor
/// divergence method: TD-embed with (m, tau), pair every state with its
/// nearest neighbor more than `theiler` samples away, average the log
/// Euclidean separation over `fit_steps` steps and fit a least-squares
/// slope. Units: 1/time.
///
/// Needs at least 2000 embedded states. Exact-duplicate states are not
/// admissible neighbors (they never diverge on finite data).
double rosenstein_lle(const std::vector<double>& x, int tau, int m, double dt, int theiler,
                      int fit_steps);

}  // namespace phasembed::dynamics
