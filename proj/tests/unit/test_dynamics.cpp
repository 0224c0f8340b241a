#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "phasembed/core/rng.hpp"
#include "phasembed/dynamics/analyze.hpp"
#include "phasembed/dynamics/dimension.hpp"
#include "phasembed/dynamics/information.hpp"
#include "phasembed/dynamics/lyapunov.hpp"
#include "phasembed/dynamics/spectrum.hpp"
#include "phasembed/synth/generators.hpp"

using namespace phasembed;
using core::Error;
using core::Matrix;
using core::Rng;

namespace {

std::vector<double> sine_period(double period_samples, std::size_t t, double amplitude = 1.0,
                                double phase = 0.0) {
    std::vector<double> x(t);
    for (std::size_t i = 0; i < t; ++i)
        x[i] = amplitude * std::sin(2.0 * M_PI * static_cast<double>(i) / period_samples + phase);
    return x;
}

std::vector<double> uniform_noise(std::size_t t, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> x(t);
    for (double& v : x) v = rng.uniform();
    return x;
}

}  // namespace

TEST_CASE("dominant_period finds a single tone within one sample") {
    const std::vector<double> x = sine_period(50.0, 1000);
    CHECK(std::fabs(dynamics::dominant_period(x, 1.0) - 50.0) <= 1.0);
}

TEST_CASE("dominant_period picks the stronger of two tones") {
    std::vector<double> x(2048);
    for (std::size_t i = 0; i < 2048; ++i) {
        const double t = static_cast<double>(i);
        x[i] = 3.0 * std::sin(2.0 * M_PI * t / 128.0) + std::sin(2.0 * M_PI * t / 16.0);
    }
    CHECK(std::fabs(dynamics::dominant_period(x, 1.0) - 128.0) <= 1.0);
}

TEST_CASE("dominant_period on white noise returns some finite period") {
    const std::vector<double> x = uniform_noise(4096, 3);  // power-of-two: radix-2 path
    const double period = dynamics::dominant_period(x, 1.0);
    CHECK(period >= 2.0);
    CHECK(period <= 4096.0);
}

TEST_CASE("dominant_period rejects a flat signal") {
    const std::vector<double> x(256, 3.25);
    CHECK_THROWS_WITH_AS(dynamics::dominant_period(x, 1.0), doctest::Contains("Flat"), Error);
}

TEST_CASE("select_tau quarter-period rule with clamping") {
    CHECK(dynamics::select_tau(50.0) == 12);
    CHECK(dynamics::select_tau(4.0) == 1);
    CHECK(dynamics::select_tau(2.0) == 1);
    CHECK(dynamics::select_tau(100.0) == 25);
}

TEST_CASE("select_tau of dominant_period converges to the quarter period in time units") {
    for (double dt : {0.05, 0.02}) {
        const double period_samples = 2.0 * M_PI / dt;  // omega = 1
        const std::size_t t = 8192;
        std::vector<double> x(t);
        for (std::size_t i = 0; i < t; ++i) x[i] = std::sin(static_cast<double>(i) * dt);
        const double period = dynamics::dominant_period(x, dt);
        CHECK(std::fabs(period - period_samples) <= period_samples * 0.05);
        const int tau = dynamics::select_tau(period);
        CHECK(std::fabs(static_cast<double>(tau) * dt - M_PI / 2.0) <= dt + 2.0 * M_PI / 8192.0 * 20);
    }
}

TEST_CASE("cc_method and fnn agree on a sine, both finding a planar cycle") {
    // Incommensurate sampling (omega=1, dt=0.1) avoids exact duplicates.
    std::vector<double> x(5000);
    for (std::size_t i = 0; i < 5000; ++i) x[i] = std::sin(0.1 * static_cast<double>(i));
    const int tau = dynamics::select_tau(dynamics::dominant_period(x, 0.1));

    const dynamics::CcResult cc = dynamics::cc_method(x, tau);
    CHECK(cc.m == 2);
    CHECK_FALSE(cc.no_structure);

    const dynamics::FnnResult fnn = dynamics::fnn_dimension(x, tau);
    CHECK(fnn.m == 2);
    CHECK(fnn.converged);
    CHECK(std::abs(cc.m - fnn.m) <= 1);
}

TEST_CASE("cc_method flags i.i.d. noise as structureless") {
    const std::vector<double> x = uniform_noise(10000, 11);
    const dynamics::CcResult cc = dynamics::cc_method(x, 1);
    CHECK(cc.m == 8);
    CHECK(cc.no_structure);
    // The S statistics themselves stay near zero at every candidate.
    for (double s : cc.s_cor) CHECK(std::fabs(s) < 0.02);
}

TEST_CASE("cc_method enforces its length precondition") {
    CHECK_THROWS_WITH_AS(dynamics::cc_method(uniform_noise(400, 1), 1),
                         doctest::Contains("TooShort"), Error);
}

TEST_CASE("fnn reports non-convergence at m_max") {
    const std::vector<double> x = uniform_noise(2000, 13);
    const dynamics::FnnResult fnn = dynamics::fnn_dimension(x, 1, 2);
    CHECK(fnn.m == 2);
    CHECK_FALSE(fnn.converged);
    for (double f : fnn.fraction) CHECK(f >= 0.01);
}

TEST_CASE("mutual information self-information dominates cross-information") {
    const std::vector<double> x = uniform_noise(4000, 21);
    const double self = dynamics::mutual_information(x, x);
    for (int seed = 0; seed < 20; ++seed) {
        const std::vector<double> y = uniform_noise(4000, 100 + static_cast<std::uint64_t>(seed));
        CHECK(dynamics::mutual_information(x, y) <= self);
    }
}

TEST_CASE("mutual information of independent noise is near zero") {
    for (int seed = 0; seed < 20; ++seed) {
        const std::vector<double> x = uniform_noise(10000, 500 + 2 * static_cast<std::uint64_t>(seed));
        const std::vector<double> y = uniform_noise(10000, 501 + 2 * static_cast<std::uint64_t>(seed));
        const double mi = dynamics::mutual_information(x, y);
        CHECK(mi < 0.1);
        CHECK(mi >= -1e-12);
    }
}

TEST_CASE("mutual information of a uniform ramp with itself is log2 of the bin count") {
    std::vector<double> ramp(1600);
    for (std::size_t i = 0; i < 1600; ++i) ramp[i] = static_cast<double>(i);
    CHECK(dynamics::mutual_information(ramp, ramp) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("mutual information rejects mismatched lengths") {
    CHECK_THROWS_WITH_AS(
        dynamics::mutual_information(uniform_noise(200, 1), uniform_noise(300, 2)),
        doctest::Contains("LengthMismatch"), Error);
}

TEST_CASE("rosenstein_lle is near zero on a sine") {
    std::vector<double> x(5000);
    for (std::size_t i = 0; i < 5000; ++i) x[i] = std::sin(0.1 * static_cast<double>(i));
    const double period = dynamics::dominant_period(x, 0.1);
    const int tau = dynamics::select_tau(period);
    const double lle = dynamics::rosenstein_lle(x, tau, 2, 0.1,
                                                static_cast<int>(std::lround(period)),
                                                static_cast<int>(std::lround(period / 2.0)));
    CHECK(std::fabs(lle) < 0.05);
}

TEST_CASE("rosenstein_lle is invariant to amplitude scaling") {
    std::vector<double> x(4000), x5(4000);
    for (std::size_t i = 0; i < 4000; ++i) {
        x[i] = std::sin(0.1 * static_cast<double>(i)) +
               0.4 * std::sin(0.041 * static_cast<double>(i) + 0.7);
        x5[i] = 5.0 * x[i];
    }
    const double a = dynamics::rosenstein_lle(x, 16, 3, 1.0, 63, 31);
    const double b = dynamics::rosenstein_lle(x5, 16, 3, 1.0, 63, 31);
    CHECK(std::fabs(a - b) < 1e-6);
}

TEST_CASE("rosenstein_lle is negative for a contracting signal") {
    std::vector<double> x(3000);
    for (std::size_t i = 0; i < 3000; ++i)
        x[i] = std::exp(-0.02 * static_cast<double>(i)) * std::sin(0.1 * static_cast<double>(i));
    const double lle = dynamics::rosenstein_lle(x, 16, 2, 1.0, 63, 126);
    CHECK(lle < 0.0);
}

TEST_CASE("rosenstein_lle requires enough embedded states") {
    CHECK_THROWS_WITH_AS(dynamics::rosenstein_lle(uniform_noise(1500, 2), 2, 3, 1.0, 10, 20),
                         doctest::Contains("TooShort"), Error);
}

TEST_CASE("analyze on a single channel is CI with full diagnostics") {
    const core::TimeSeries ts = synth::make_sine(1.0, 1.0, 0.0, 0.1, 4000);
    const dynamics::DynamicsReport report = dynamics::analyze(ts);
    REQUIRE(report.channels.size() == 1);
    CHECK(report.strategy == core::ChannelStrategy::CI);

    const dynamics::ChannelDiagnostics& ch = report.channels[0];
    REQUIRE(ch.has_period);
    CHECK(std::fabs(ch.dominant_period_samples - 2.0 * M_PI / 0.1) < 2.0);
    REQUIRE(ch.has_tau);
    CHECK(ch.tau_samples >= 1);
    REQUIRE(ch.has_m);
    CHECK(ch.m_cc >= 2);
    CHECK(ch.m_cc <= 10);
    REQUIRE(ch.has_lle);
    CHECK(std::fabs(ch.lle_per_time) < 0.1);
}

TEST_CASE("analyze recommends CD for duplicated channels with matched dynamics") {
    const core::TimeSeries lorenz = synth::make_lorenz(0.01, 4000, 5);
    core::TimeSeries twin;
    twin.dt = lorenz.dt;
    twin.channel_names = {"z1", "z2"};
    twin.values = Matrix(2, lorenz.length());
    for (std::size_t i = 0; i < lorenz.length(); ++i) {
        twin.values(0, i) = lorenz.values(2, i);
        twin.values(1, i) = lorenz.values(2, i);
    }

    const dynamics::DynamicsReport report = dynamics::analyze(twin);
    CHECK(report.strategy == core::ChannelStrategy::CD);

    // Matrix invariants: symmetry, non-negativity, dominant diagonal.
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            CHECK(std::fabs(report.mi_matrix(i, j) - report.mi_matrix(j, i)) < 1e-9);
            CHECK(report.mi_matrix(i, j) >= -1e-12);
            CHECK(report.mi_matrix(i, i) >= report.mi_matrix(i, j) - 1e-12);
        }
}

TEST_CASE("analyze recommends CI when a channel is unrelated noise") {
    const core::TimeSeries lorenz = synth::make_lorenz(0.01, 4000, 5);
    Rng rng(99);
    core::TimeSeries mixed;
    mixed.dt = lorenz.dt;
    mixed.channel_names = {"x", "noise"};
    mixed.values = Matrix(2, lorenz.length());
    for (std::size_t i = 0; i < lorenz.length(); ++i) {
        mixed.values(0, i) = lorenz.values(0, i);
        mixed.values(1, i) = rng.gaussian();
    }
    const dynamics::DynamicsReport report = dynamics::analyze(mixed);
    CHECK(report.strategy == core::ChannelStrategy::CI);
}

TEST_CASE("analyze never returns CD for a single channel") {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        core::TimeSeries ts;
        ts.dt = 1.0;
        ts.values = Matrix(1, 600);
        Rng rng(seed);
        for (std::size_t i = 0; i < 600; ++i) ts.values(0, i) = rng.gaussian();
        CHECK(dynamics::analyze(ts).strategy == core::ChannelStrategy::CI);
    }
}

TEST_CASE("analyze degrades gracefully on short series") {
    const core::TimeSeries ts = synth::make_sine(1.0, 1.0, 0.0, 0.1, 300);
    const dynamics::DynamicsReport report = dynamics::analyze(ts);
    const dynamics::ChannelDiagnostics& ch = report.channels[0];
    CHECK(ch.has_period);
    CHECK(ch.has_tau);
    CHECK_FALSE(ch.has_m);    // cc needs T >= 500
    CHECK_FALSE(ch.has_lle);  // rosenstein needs 2000 embedded states
    CHECK_FALSE(ch.warnings.empty());
}
