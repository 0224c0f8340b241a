#pragma once

#include <vector>

namespace phasembed::dynamics {

struct CcResult {
    int m = 0;
    bool no_structure = false;   // statistics flat at every candidate (e.g. i.i.d. noise)
    std::vector<double> s_cor;   // diagnostic: S_cor per candidate
};

/// Embedding dimension by the correlation-integral (C-C) statistics:
/// S(m,r) averaged over tau disjoint subseries at radii
/// {0.5, 1, 1.5, 2} * sigma, Chebyshev norm, temporal exclusion of one
/// original-series delay between counted pairs. Picks the smallest
/// candidate whose S_cor = deltaS + |mean_r S| is within 10% of the global
/// minimum. When every candidate is flat the signal carries no usable
/// structure and the largest candidate is returned flagged.
CcResult cc_method(const std::vector<double>& x, int tau,
                   const std::vector<int>& m_candidates = {2, 3, 4, 5, 6, 7, 8});

struct FnnResult {
    int m = 0;
    bool converged = false;
    std::vector<double> fraction;  // false-neighbor fraction per tested m
};

/// Kennel false-nearest-neighbor dimension estimate (independent check for
/// cc_method): smallest m with under 1% false neighbors, Theiler
/// exclusion = tau. Returns m_max unconverged when no m qualifies.
FnnResult fnn_dimension(const std::vector<double>& x, int tau, int m_max = 10,
                        double rtol = 15.0, double atol = 2.0);

}  // namespace phasembed::dynamics
