#pragma once

#include <vector>

namespace phasembed::dynamics {

/// Dominant period in samples: mean-removed, Hann-windowed power spectrum
/// (radix-2 FFT when T is a power of two, direct DFT otherwise), peak bin
/// over 1..T/2 excluding DC, period = T / argmax bin.
/// Throws Flat when the spectral peak is below 1e-12 of the signal power.
double dominant_period(const std::vector<double>& x, double dt);

/// Quarter-period delay heuristic: round(period/4) to nearest (ties to
/// even), clamped to >= 1.
int select_tau(double period_samples);

}  // namespace phasembed::dynamics
