#include "phasembed/synth/generators.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "phasembed/core/rng.hpp"
#include "phasembed/synth/ode.hpp"

namespace phasembed::synth {

using core::Errc;
using core::Error;
using core::Matrix;
using core::Rng;

namespace {

constexpr std::size_t kTransientSteps = 1000;

State perturbed(const State& base, std::uint64_t seed, double scale) {
    Rng rng(seed);
    State out = base;
    for (double& v : out) v += scale * rng.uniform();
    return out;
}

TimeSeries attractor_series(const OdeSystem& sys, const State& x0, double dt,
                            std::size_t n_samples, const std::vector<std::string>& names) {
    if (n_samples < 2) throw Error(Errc::TooShort, "need at least 2 samples");
    TimeSeries full = rk4_integrate(sys, x0, dt, kTransientSteps + n_samples - 1);
    TimeSeries out;
    out.dt = dt;
    out.channel_names = names;
    out.values = Matrix(sys.dim, n_samples);
    for (int c = 0; c < sys.dim; ++c)
        for (std::size_t i = 0; i < n_samples; ++i)
            out.values(c, i) = full.values(c, kTransientSteps + i);
    return out;
}

}  // namespace

TimeSeries make_sine(double omega, double amplitude, double phase, double dt,
                     std::size_t n_samples) {
    if (!(omega > 0.0)) throw Error(Errc::BadConfig, "omega must be > 0");
    if (!(dt > 0.0)) throw Error(Errc::BadDt, "dt must be > 0");
    if (n_samples < 2) throw Error(Errc::TooShort, "need at least 2 samples");
    TimeSeries ts;
    ts.dt = dt;
    ts.channel_names = {"x"};
    ts.values = Matrix(1, n_samples);
    for (std::size_t i = 0; i < n_samples; ++i)
        ts.values(0, i) = amplitude * std::sin(omega * static_cast<double>(i) * dt + phase);
    return ts;
}

TimeSeries make_lorenz(double dt, std::size_t n_samples, std::uint64_t seed, double sigma,
                       double rho, double beta) {
    const OdeSystem sys = lorenz_system(sigma, rho, beta);
    return attractor_series(sys, perturbed({1.0, 1.0, 1.0}, seed, 0.1), dt, n_samples,
                            {"x", "y", "z"});
}

TimeSeries make_rossler(double dt, std::size_t n_samples, std::uint64_t seed, double a, double b,
                        double c) {
    const OdeSystem sys = rossler_system(a, b, c);
    return attractor_series(sys, perturbed({1.0, 1.0, 1.0}, seed, 0.1), dt, n_samples,
                            {"x", "y", "z"});
}

TimeSeries make_mackey_glass(double dt, std::size_t n_samples, std::uint64_t seed, double tau_mg,
                             double beta, double gamma, double exponent) {
    if (!(dt > 0.0)) throw Error(Errc::BadDt, "dt must be > 0");
    if (n_samples < 2) throw Error(Errc::TooShort, "need at least 2 samples");
    const double steps_exact = tau_mg / dt;
    const auto delay_steps = static_cast<std::size_t>(std::llround(steps_exact));
    if (delay_steps < 1 || std::fabs(steps_exact - static_cast<double>(delay_steps)) > 1e-9)
        throw Error(Errc::BadConfig, "tau_mg must be an integer multiple of dt");

    Rng rng(seed);
    const double x_init = 1.2 + 0.1 * rng.uniform();

    // Ring buffer holds the last delay_steps states; the delayed value is
    // held constant across the RK4 stages of one step (zero-order hold).
    std::vector<double> history(delay_steps, x_init);
    std::size_t head = 0;
    double x = x_init;

    auto deriv = [&](double xc, double xd) {
        return beta * xd / (1.0 + std::pow(xd, exponent)) - gamma * xc;
    };

    TimeSeries ts;
    ts.dt = dt;
    ts.channel_names = {"x"};
    ts.values = Matrix(1, n_samples);

    std::size_t recorded = 0;
    const std::size_t total = kTransientSteps + n_samples;
    for (std::size_t step = 0; step < total; ++step) {
        if (step >= kTransientSteps) ts.values(0, recorded++) = x;
        if (recorded == n_samples) break;

        const double xd = history[head];
        const double k1 = deriv(x, xd);
        const double k2 = deriv(x + dt / 2 * k1, xd);
        const double k3 = deriv(x + dt / 2 * k2, xd);
        const double k4 = deriv(x + dt * k3, xd);
        const double x_next = x + dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
        if (!std::isfinite(x_next) || std::fabs(x_next) > 1e8)
            throw Error(Errc::Diverged, "mackey-glass state diverged");

        history[head] = x;
        head = (head + 1) % delay_steps;
        x = x_next;
    }
    return ts;
}

TimeSeries add_noise(const TimeSeries& ts, double snr_db, std::uint64_t seed) {
    if (std::isnan(snr_db)) throw Error(Errc::BadConfig, "snr_db must not be NaN");
    if (std::isinf(snr_db) && snr_db > 0) return ts;

    Rng rng(seed);
    TimeSeries out = ts;
    for (std::size_t c = 0; c < ts.channels(); ++c) {
        double mean = 0.0;
        for (std::size_t i = 0; i < ts.length(); ++i) mean += ts.values(c, i);
        mean /= static_cast<double>(ts.length());
        double var = 0.0;
        for (std::size_t i = 0; i < ts.length(); ++i) {
            const double d = ts.values(c, i) - mean;
            var += d * d;
        }
        var /= static_cast<double>(ts.length());

        const double noise_var = var > 0.0 ? var / std::pow(10.0, snr_db / 10.0) : 1.0;
        const double noise_std = std::sqrt(noise_var);
        for (std::size_t i = 0; i < ts.length(); ++i)
            out.values(c, i) += noise_std * rng.gaussian();
    }
    return out;
}

}  // namespace phasembed::synth
