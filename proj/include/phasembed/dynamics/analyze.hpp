#pragma once

#include <string>
#include <vector>

#include "phasembed/core/matrix.hpp"
#include "phasembed/core/types.hpp"

namespace phasembed::dynamics {

using core::ChannelStrategy;
using core::Matrix;
using core::TimeSeries;

/// Per-channel diagnostics. Estimates that could not be computed are
/// marked absent (with a warning naming the reason) rather than failing
/// the whole report.
struct ChannelDiagnostics {
    std::string name;
    bool has_period = false;
    double dominant_period_samples = 0.0;
    bool has_tau = false;
    int tau_samples = 0;
    bool has_m = false;
    int m_cc = 0;
    bool has_lle = false;
    double lle_per_time = 0.0;
    std::vector<std::string> warnings;
};

struct DynamicsReport {
    std::vector<ChannelDiagnostics> channels;
    Matrix mi_matrix;  // C x C, bits, symmetric; diagonal = plug-in entropy
    ChannelStrategy strategy = ChannelStrategy::CI;
    std::string rationale;
};

struct AnalyzeOptions {
    int mi_bins = 16;
    double mi_ratio_threshold = 0.5;    // CD needs max offdiag MI / min diag MI above this
    double lle_spread_threshold = 0.3;  // ... and normalized LLE spread below this
    std::vector<int> m_candidates = {2, 3, 4, 5, 6, 7, 8};
};

/// Runs the full per-channel chain (dominant period -> tau -> C-C dimension
/// -> Rosenstein LLE), fills the pairwise MI matrix, and recommends the
/// channel strategy from the MI/LLE rule.
DynamicsReport analyze(const TimeSeries& ts, const AnalyzeOptions& options = {});

}  // namespace phasembed::dynamics
