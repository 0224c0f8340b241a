#pragma once

#include <cstdint>
#include <limits>

#include "phasembed/core/types.hpp"

namespace phasembed::synth {

using core::TimeSeries;

/// x(t) = amplitude * sin(omega*t + phase), T samples at interval dt.
TimeSeries make_sine(double omega, double amplitude, double phase, double dt, std::size_t n_samples);

/// Chaotic fixtures. Deterministic given the seed (the seed perturbs the
/// initial condition only); the first 1000 integration steps are discarded
/// so sampling starts on-attractor.
TimeSeries make_lorenz(double dt, std::size_t n_samples, std::uint64_t seed,
                       double sigma = 10.0, double rho = 28.0, double beta = 8.0 / 3.0);
TimeSeries make_rossler(double dt, std::size_t n_samples, std::uint64_t seed,
                        double a = 0.2, double b = 0.2, double c = 5.7);

/// Mackey-Glass delay equation on a fixed-step ring buffer; the delay must
/// be an integer multiple of dt (default tau_mg=17, dt=0.1 -> 170 steps).
TimeSeries make_mackey_glass(double dt, std::size_t n_samples, std::uint64_t seed,
                             double tau_mg = 17.0, double beta = 0.2, double gamma = 0.1,
                             double exponent = 10.0);

/// Flag value for add_noise: leave the series untouched.
inline constexpr double kNoiselessSnrDb = std::numeric_limits<double>::infinity();

/// Additive i.i.d. Gaussian noise scaled per channel so the empirical SNR
/// equals snr_db. A zero-variance channel receives unit-variance noise.
TimeSeries add_noise(const TimeSeries& ts, double snr_db, std::uint64_t seed);

}  // namespace phasembed::synth
