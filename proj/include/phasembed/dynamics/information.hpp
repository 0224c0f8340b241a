#pragma once

#include <vector>

namespace phasembed::dynamics {

/// Plug-in mutual information in bits on a bins x bins equi-width grid
/// over each variable's observed range; empty cells are skipped.
/// MI(x, x) equals the plug-in entropy H(x) under the same binning.
double mutual_information(const std::vector<double>& x, const std::vector<double>& y,
                          int bins = 16);

}  // namespace phasembed::dynamics
