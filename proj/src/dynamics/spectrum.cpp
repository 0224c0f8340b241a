#include "phasembed/dynamics/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>

#include "phasembed/core/types.hpp"

namespace phasembed::dynamics {

using core::Errc;
using core::Error;

namespace {

bool is_power_of_two(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

// In-place iterative radix-2 Cooley-Tukey.
void fft_radix2(std::vector<std::complex<double>>& a) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * M_PI / static_cast<double>(len);
        const std::complex<double> wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                const std::complex<double> u = a[i + j];
                const std::complex<double> v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

// Direct DFT power at bins 1..T/2 with an incremental twiddle rotation per
// bin; O(T^2) but cheap enough at desk scale.
std::vector<double> dft_power_half(const std::vector<double>& x) {
    const std::size_t t = x.size();
    const std::size_t half = t / 2;
    std::vector<double> power(half + 1, 0.0);
    for (std::size_t k = 1; k <= half; ++k) {
        const double ang = -2.0 * M_PI * static_cast<double>(k) / static_cast<double>(t);
        const double cr = std::cos(ang), ci = std::sin(ang);
        double wr = 1.0, wi = 0.0;
        double re = 0.0, im = 0.0;
        for (std::size_t i = 0; i < t; ++i) {
            re += x[i] * wr;
            im += x[i] * wi;
            const double nwr = wr * cr - wi * ci;
            wi = wr * ci + wi * cr;
            wr = nwr;
        }
        power[k] = re * re + im * im;
    }
    return power;
}

}  // namespace

double dominant_period(const std::vector<double>& x, double dt) {
    if (!(dt > 0.0)) throw Error(Errc::BadDt, "dt must be > 0");
    const std::size_t t = x.size();
    if (t < 16) throw Error(Errc::TooShort, "dominant_period needs T >= 16");

    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(t);

    std::vector<double> windowed(t);
    double power_total = 0.0;
    for (std::size_t i = 0; i < t; ++i) {
        const double hann =
            0.5 * (1.0 - std::cos(2.0 * M_PI * static_cast<double>(i) / static_cast<double>(t - 1)));
        windowed[i] = (x[i] - mean) * hann;
        power_total += windowed[i] * windowed[i];
    }

    std::vector<double> power;
    if (is_power_of_two(t)) {
        std::vector<std::complex<double>> a(t);
        for (std::size_t i = 0; i < t; ++i) a[i] = windowed[i];
        fft_radix2(a);
        power.assign(t / 2 + 1, 0.0);
        for (std::size_t k = 1; k <= t / 2; ++k) power[k] = std::norm(a[k]);
    } else {
        power = dft_power_half(windowed);
    }

    std::size_t best = 1;
    for (std::size_t k = 2; k < power.size(); ++k)
        if (power[k] > power[best]) best = k;
    if (!(power[best] > 1e-12 * power_total) || power_total == 0.0)
        throw Error(Errc::Flat, "no spectral peak above the flatness threshold");
    return static_cast<double>(t) / static_cast<double>(best);
}

int select_tau(double period_samples) {
    if (!(period_samples >= 1.0))
        throw Error(Errc::BadConfig, "period must be >= 1 sample");
    const double quarter = period_samples / 4.0;
    // Ties round to even so that a period of 50 gives tau 12.
    const double rounded = std::nearbyint(quarter);
    return std::max(1, static_cast<int>(rounded));
}

}  // namespace phasembed::dynamics
