#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "phasembed/core/linalg.hpp"
#include "phasembed/core/rng.hpp"
#include "phasembed/synth/generators.hpp"
#include "phasembed/synth/ode.hpp"

using namespace phasembed;
using core::Error;
using core::Matrix;
using synth::OdeSystem;
using synth::State;

namespace {

OdeSystem exponential_decay() {
    OdeSystem sys;
    sys.dim = 1;
    sys.name = "decay";
    sys.vector_field = [](const State& s, double) -> State { return {-s[0]}; };
    sys.jacobian = [](const State&, double) -> Matrix { return {{-1.0}}; };
    return sys;
}

OdeSystem harmonic_oscillator() {
    OdeSystem sys;
    sys.dim = 2;
    sys.name = "harmonic";
    sys.vector_field = [](const State& s, double) -> State { return {s[1], -s[0]}; };
    sys.jacobian = [](const State&, double) -> Matrix { return {{0.0, 1.0}, {-1.0, 0.0}}; };
    return sys;
}

OdeSystem linear_growth(double a) {
    OdeSystem sys;
    sys.dim = 1;
    sys.name = "linear";
    sys.vector_field = [a](const State& s, double) -> State { return {a * s[0]}; };
    sys.jacobian = [a](const State&, double) -> Matrix { return {{a}}; };
    return sys;
}

double channel_mean(const core::TimeSeries& ts, std::size_t c) {
    double sum = 0.0;
    for (std::size_t i = 0; i < ts.length(); ++i) sum += ts.values(c, i);
    return sum / static_cast<double>(ts.length());
}

double channel_variance(const std::vector<double>& x) {
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(x.size());
    double var = 0.0;
    for (double v : x) var += (v - mean) * (v - mean);
    return var / static_cast<double>(x.size());
}

}  // namespace

TEST_CASE("rk4 matches the analytic exponential") {
    const core::TimeSeries ts = synth::rk4_integrate(exponential_decay(), {1.0}, 0.1, 10);
    REQUIRE(ts.length() == 11);
    CHECK(ts.values(0, 0) == 1.0);
    CHECK(std::fabs(ts.values(0, 10) - std::exp(-1.0)) < 1e-6);
}

TEST_CASE("rk4 conserves harmonic-oscillator energy") {
    const core::TimeSeries ts = synth::rk4_integrate(harmonic_oscillator(), {1.0, 0.0}, 0.01, 1000);
    double worst = 0.0;
    for (std::size_t i = 0; i < ts.length(); ++i) {
        const double energy = ts.values(0, i) * ts.values(0, i) + ts.values(1, i) * ts.values(1, i);
        worst = std::max(worst, std::fabs(energy - 1.0));
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("rk4 global error scales as dt^4") {
    auto error_at = [](double dt) {
        const auto steps = static_cast<std::size_t>(std::llround(1.0 / dt));
        const core::TimeSeries ts = synth::rk4_integrate(exponential_decay(), {1.0}, dt, steps);
        return std::fabs(ts.values(0, steps) - std::exp(-1.0));
    };
    const double ratio = error_at(0.1) / error_at(0.05);
    CHECK(ratio >= 12.0);
    CHECK(ratio <= 20.0);
}

TEST_CASE("rk4 reports divergence") {
    CHECK_THROWS_WITH_AS(synth::rk4_integrate(linear_growth(30.0), {1.0}, 1.0, 100),
                         doctest::Contains("Diverged"), Error);
}

TEST_CASE("lorenz trajectory stays on the bounded attractor") {
    const core::TimeSeries ts =
        synth::rk4_integrate(synth::lorenz_system(), {1.0, 1.0, 1.0}, 0.01, 10000);
    CHECK(ts.values.max_abs() < 60.0);
}

TEST_CASE("make_sine fixtures") {
    const core::TimeSeries ts = synth::make_sine(1.0, 1.0, 0.0, M_PI / 100.0, 400);
    CHECK(ts.values(0, 0) == 0.0);
    CHECK(ts.values(0, 50) == doctest::Approx(1.0));  // t = pi/2

    const core::TimeSeries flat = synth::make_sine(1.0, 0.0, 0.3, 0.1, 50);
    CHECK(flat.values.max_abs() == 0.0);

    // omega = 2*pi/50 with dt = 1: period exactly 50 samples.
    const core::TimeSeries p50 = synth::make_sine(2.0 * M_PI / 50.0, 1.0, 0.1, 1.0, 200);
    for (std::size_t i = 0; i + 50 < p50.length(); ++i)
        CHECK(p50.values(0, i) == doctest::Approx(p50.values(0, i + 50)).epsilon(1e-9));
}

TEST_CASE("generators are deterministic given the seed") {
    const core::TimeSeries a = synth::make_lorenz(0.01, 500, 9);
    const core::TimeSeries b = synth::make_lorenz(0.01, 500, 9);
    CHECK(a.values == b.values);
    const core::TimeSeries c = synth::make_lorenz(0.01, 500, 10);
    CHECK_FALSE(a.values == c.values);

    const core::TimeSeries mg1 = synth::make_mackey_glass(0.1, 400, 4);
    const core::TimeSeries mg2 = synth::make_mackey_glass(0.1, 400, 4);
    CHECK(mg1.values == mg2.values);

    const core::TimeSeries r1 = synth::make_rossler(0.05, 400, 2);
    const core::TimeSeries r2 = synth::make_rossler(0.05, 400, 2);
    CHECK(r1.values == r2.values);
}

TEST_CASE("lorenz z-channel long-run mean (frozen from the reference integration)") {
    // Long integration oracle gives <z> = 23.58 at canonical parameters
    // (the attractor average sits below the fixed-point plane z = rho-1).
    const core::TimeSeries ts = synth::make_lorenz(0.01, 50000, 42);
    CHECK(channel_mean(ts, 2) == doctest::Approx(23.58).epsilon(0.05));
}

TEST_CASE("mackey-glass is non-periodic at tau_mg=17") {
    const core::TimeSeries ts = synth::make_mackey_glass(0.1, 5000, 3);
    const std::vector<double> x = ts.channel(0);
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(x.size());
    double c0 = 0.0;
    for (double v : x) c0 += (v - mean) * (v - mean);

    // Autocorrelation scan: no repetition at any lag of half a delay time
    // or more (shorter lags only measure smoothness at dt=0.1).
    for (int lag = 5; lag <= 500; ++lag) {
        double ck = 0.0;
        for (std::size_t i = 0; i + lag < x.size(); ++i)
            ck += (x[i] - mean) * (x[i + static_cast<std::size_t>(lag)] - mean);
        CHECK(ck / c0 < 0.999);
    }
}

TEST_CASE("mackey-glass rejects a delay off the step grid") {
    CHECK_THROWS_AS(synth::make_mackey_glass(0.3, 100, 1, 17.0), Error);
}

TEST_CASE("analytic jacobians match finite differences") {
    core::Rng rng(77);
    for (const OdeSystem& sys : {synth::lorenz_system(), synth::rossler_system()}) {
        for (int trial = 0; trial < 10; ++trial) {
            State x(3);
            for (double& v : x) v = rng.uniform(-10.0, 10.0);
            const Matrix j = sys.jacobian(x, 0.0);
            const double eps = 1e-6;
            for (int col = 0; col < 3; ++col) {
                State hi = x, lo = x;
                hi[static_cast<std::size_t>(col)] += eps;
                lo[static_cast<std::size_t>(col)] -= eps;
                const State fhi = sys.vector_field(hi, 0.0);
                const State flo = sys.vector_field(lo, 0.0);
                for (int row = 0; row < 3; ++row) {
                    const double fd = (fhi[static_cast<std::size_t>(row)] -
                                       flo[static_cast<std::size_t>(row)]) /
                                      (2.0 * eps);
                    CHECK(std::fabs(fd - j(static_cast<std::size_t>(row),
                                           static_cast<std::size_t>(col))) < 1e-5);
                }
            }
        }
    }
}

TEST_CASE("benettin_lle on linear and neutral systems") {
    CHECK(std::fabs(synth::benettin_lle(linear_growth(0.5), {1.0}, 0.01, 2000) - 0.5) < 1e-3);
    CHECK(std::fabs(synth::benettin_lle(harmonic_oscillator(), {1.0, 0.0}, 0.01, 5000)) < 1e-2);
}

TEST_CASE("benettin_lle matches the max real eigenvalue part of 2x2 linear flows") {
    // Cross-check: the expected exponent comes from the quadratic roots of
    // char_poly(A) = [1, b, c].
    auto max_real_root = [](const Matrix& a) {
        const std::vector<double> poly = phasembed::core::char_poly(a);
        const double b = poly[1], c = poly[2];
        const double disc = b * b - 4.0 * c;
        if (disc >= 0.0) return (-b + std::sqrt(disc)) / 2.0;
        return -b / 2.0;  // complex pair: shared real part
    };
    const std::vector<Matrix> fixtures = {
        {{0.3, 0.0}, {0.0, -0.2}},
        {{0.0, 1.0}, {-1.0, 0.0}},
        {{0.0, 1.0}, {-2.0, -0.5}},
    };
    for (const Matrix& a : fixtures) {
        OdeSystem sys;
        sys.dim = 2;
        sys.name = "linear2";
        sys.vector_field = [a](const State& s, double) -> State {
            return {a(0, 0) * s[0] + a(0, 1) * s[1], a(1, 0) * s[0] + a(1, 1) * s[1]};
        };
        sys.jacobian = [a](const State&, double) -> Matrix { return a; };
        const double lle = synth::benettin_lle(sys, {1.0, 0.5}, 0.01, 2000);
        CHECK(std::fabs(lle - max_real_root(a)) < 1e-2);
    }
}

TEST_CASE("add_noise honors the flag value and the SNR scaling") {
    const core::TimeSeries base = synth::make_sine(1.0, 1.0, 0.0, 0.01, 10000);
    const core::TimeSeries same = synth::add_noise(base, synth::kNoiselessSnrDb, 5);
    CHECK(same.values == base.values);

    // Unit-variance sine has variance 1/2; 20 dB -> noise variance 0.005.
    const core::TimeSeries noisy = synth::add_noise(base, 20.0, 5);
    std::vector<double> delta(base.length());
    for (std::size_t i = 0; i < base.length(); ++i)
        delta[i] = noisy.values(0, i) - base.values(0, i);
    const double signal_var = channel_variance(base.channel(0));
    const double expected = signal_var / 100.0;
    CHECK(channel_variance(delta) == doctest::Approx(expected).epsilon(0.2));

    // Zero signal: unit-variance noise by convention.
    core::TimeSeries zero;
    zero.values = Matrix(1, 10000, 0.0);
    zero.dt = 1.0;
    const core::TimeSeries pure = synth::add_noise(zero, 20.0, 6);
    CHECK(channel_variance(pure.channel(0)) == doctest::Approx(1.0).epsilon(0.1));

    const core::TimeSeries n1 = synth::add_noise(base, 10.0, 8);
    const core::TimeSeries n2 = synth::add_noise(base, 10.0, 8);
    CHECK(n1.values == n2.values);
}
