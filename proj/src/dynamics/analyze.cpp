#include "phasembed/dynamics/analyze.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "phasembed/dynamics/dimension.hpp"
#include "phasembed/dynamics/information.hpp"
#include "phasembed/dynamics/lyapunov.hpp"
#include "phasembed/dynamics/spectrum.hpp"

namespace phasembed::dynamics {

using core::Errc;
using core::Error;

namespace {

constexpr int kFallbackDim = 3;  // LLE embedding dimension when C-C is unavailable

std::string format_quantity(double v) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

}  // namespace

DynamicsReport analyze(const TimeSeries& ts, const AnalyzeOptions& options) {
    core::validate_series(ts);
    const std::size_t c = ts.channels();

    DynamicsReport report;
    report.channels.resize(c);

    for (std::size_t ch = 0; ch < c; ++ch) {
        ChannelDiagnostics& diag = report.channels[ch];
        diag.name = ts.channel_name(ch);
        const std::vector<double> x = ts.channel(ch);

        try {
            diag.dominant_period_samples = dominant_period(x, ts.dt);
            diag.has_period = true;
        } catch (const Error& e) {
            diag.warnings.push_back(std::string("period: ") + e.what());
        }

        if (diag.has_period) {
            diag.tau_samples = select_tau(diag.dominant_period_samples);
            diag.has_tau = true;
        }

        if (diag.has_tau) {
            try {
                const CcResult cc = cc_method(x, diag.tau_samples, options.m_candidates);
                diag.m_cc = cc.m;
                diag.has_m = true;
                if (cc.no_structure) diag.warnings.push_back("cc: no structure detected");
            } catch (const Error& e) {
                diag.warnings.push_back(std::string("cc: ") + e.what());
            }
        }

        if (diag.has_tau) {
            const int m = diag.has_m ? diag.m_cc : kFallbackDim;
            const int theiler =
                static_cast<int>(std::lround(diag.dominant_period_samples));
            const int fit_steps = std::max(
                2, static_cast<int>(std::lround(0.5 * diag.dominant_period_samples)));
            try {
                diag.lle_per_time =
                    rosenstein_lle(x, diag.tau_samples, m, ts.dt, theiler, fit_steps);
                diag.has_lle = true;
            } catch (const Error& e) {
                diag.warnings.push_back(std::string("lle: ") + e.what());
            }
        }
    }

    report.mi_matrix = Matrix(c, c);
    for (std::size_t i = 0; i < c; ++i) {
        const std::vector<double> xi = ts.channel(i);
        for (std::size_t j = i; j < c; ++j) {
            const double mi = mutual_information(xi, ts.channel(j), options.mi_bins);
            report.mi_matrix(i, j) = mi;
            report.mi_matrix(j, i) = mi;
        }
    }

    if (c < 2) {
        report.strategy = ChannelStrategy::CI;
        report.rationale = "single channel: CI trivially";
        return report;
    }

    double max_offdiag = 0.0;
    double min_diag = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < c; ++i) {
        min_diag = std::min(min_diag, report.mi_matrix(i, i));
        for (std::size_t j = 0; j < c; ++j)
            if (i != j) max_offdiag = std::max(max_offdiag, report.mi_matrix(i, j));
    }
    const double mi_ratio = min_diag > 0.0 ? max_offdiag / min_diag : 0.0;

    bool all_lle = true;
    double lle_min = std::numeric_limits<double>::infinity();
    double lle_max = -std::numeric_limits<double>::infinity();
    double lle_abs = 0.0;
    for (const ChannelDiagnostics& diag : report.channels) {
        if (!diag.has_lle) {
            all_lle = false;
            break;
        }
        lle_min = std::min(lle_min, diag.lle_per_time);
        lle_max = std::max(lle_max, diag.lle_per_time);
        lle_abs = std::max(lle_abs, std::fabs(diag.lle_per_time));
    }

    std::ostringstream why;
    why << "mi_ratio=" << format_quantity(mi_ratio)
        << " (threshold " << format_quantity(options.mi_ratio_threshold) << ")";
    if (all_lle) {
        const double spread = (lle_max - lle_min) / std::max(lle_abs, 0.1);
        why << ", lle_spread=" << format_quantity(spread) << " (threshold "
            << format_quantity(options.lle_spread_threshold) << ")";
        if (mi_ratio > options.mi_ratio_threshold && spread < options.lle_spread_threshold) {
            report.strategy = ChannelStrategy::CD;
            report.rationale = why.str() + ": shared information and matched dynamics -> CD";
            return report;
        }
    } else {
        why << ", lle unavailable on some channel";
    }
    report.strategy = ChannelStrategy::CI;
    report.rationale = why.str() + " -> CI";
    return report;
}

}  // namespace phasembed::dynamics
