#include "phasembed/embed/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "phasembed/core/linalg.hpp"

namespace phasembed::embed {

using core::Errc;
using core::Error;
using core::Matrix;

namespace {

void check_finite_input(const std::vector<double>& x) {
    for (double v : x)
        if (!std::isfinite(v)) throw Error(Errc::NonFinite, "input contains NaN/Inf");
}

std::vector<double> forward_diff(const std::vector<double>& x, int delta, double scale) {
    std::vector<double> out(x.size() - static_cast<std::size_t>(delta));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (x[i + delta] - x[i]) * scale;
    return out;
}

}  // namespace

Trajectory td_embed(const std::vector<double>& x, int m, int tau) {
    if (m < 1 || tau < 1) throw Error(Errc::BadConfig, "need m >= 1 and tau >= 1");
    check_finite_input(x);
    const auto t = static_cast<long long>(x.size());
    const long long span = static_cast<long long>(m - 1) * tau;
    if (t <= span)
        throw Error(Errc::TooShort, "td_embed needs T > (m-1)*tau, got T=" + std::to_string(t) +
                                        " (m-1)*tau=" + std::to_string(span));
    const std::size_t n = static_cast<std::size_t>(t - span);

    Trajectory traj;
    traj.m = static_cast<std::size_t>(m);
    traj.source_len = x.size();
    traj.method = Method::TD;
    traj.lead = static_cast<std::size_t>(span);
    traj.states = Matrix(traj.m, n);
    for (int i = 0; i < m; ++i) {
        const std::size_t offset = static_cast<std::size_t>((m - 1 - i)) * tau;
        for (std::size_t j = 0; j < n; ++j) traj.states(i, j) = x[j + offset];
    }
    return traj;
}

Trajectory hd_embed(const std::vector<double>& x, int m, int delta, double dt) {
    if (m < 1 || delta < 1) throw Error(Errc::BadConfig, "need m >= 1 and delta >= 1");
    if (!(dt > 0.0)) throw Error(Errc::BadDt, "dt must be > 0");
    check_finite_input(x);
    const auto t = static_cast<long long>(x.size());
    const long long span = static_cast<long long>(m) * delta;
    if (t <= span)
        throw Error(Errc::TooShort, "hd_embed needs T > m*delta, got T=" + std::to_string(t) +
                                        " m*delta=" + std::to_string(span));
    const std::size_t n = static_cast<std::size_t>(t - span);
    const double scale = 1.0 / (static_cast<double>(delta) * dt);

    Trajectory traj;
    traj.m = static_cast<std::size_t>(m) + 1;
    traj.source_len = x.size();
    traj.method = Method::HD;
    traj.lead = static_cast<std::size_t>(span);
    traj.states = Matrix(traj.m, n);

    std::vector<double> row = x;
    for (int order = 0; order <= m; ++order) {
        for (std::size_t j = 0; j < n; ++j) traj.states(order, j) = row[j];
        if (order < m) row = forward_diff(row, delta, scale);
    }
    return traj;
}

Trajectory id_embed(const std::vector<double>& x, int delta, double dt) {
    if (delta < 1) throw Error(Errc::BadConfig, "need delta >= 1");
    if (!(dt > 0.0)) throw Error(Errc::BadDt, "dt must be > 0");
    check_finite_input(x);
    const auto t = static_cast<long long>(x.size());
    if (t <= delta)
        throw Error(Errc::TooShort, "id_embed needs T > delta, got T=" + std::to_string(t) +
                                        " delta=" + std::to_string(delta));
    const std::size_t n = static_cast<std::size_t>(t - delta);
    const double step = static_cast<double>(delta) * dt;

    Trajectory traj;
    traj.m = 3;
    traj.source_len = x.size();
    traj.method = Method::ID;
    traj.lead = static_cast<std::size_t>(delta);
    traj.states = Matrix(3, n);

    double running = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        running += x[j];
        traj.states(0, j) = running * step;
        traj.states(1, j) = x[j];
        traj.states(2, j) = (x[j + delta] - x[j]) / step;
    }
    return traj;
}

Trajectory pc_embed(const std::vector<double>& x, int m, int k) {
    if (m < 1) throw Error(Errc::BadConfig, "need m >= 1");
    if (k < 1 || k > m) throw Error(Errc::BadK, "need 1 <= k <= m");
    Trajectory delay = td_embed(x, m, 1);
    const std::size_t n = delay.length();
    const auto mm = static_cast<std::size_t>(m);

    std::vector<double> mean(mm, 0.0);
    for (std::size_t i = 0; i < mm; ++i) {
        for (std::size_t j = 0; j < n; ++j) mean[i] += delay.states(i, j);
        mean[i] /= static_cast<double>(n);
    }
    Matrix centered(mm, n);
    for (std::size_t i = 0; i < mm; ++i)
        for (std::size_t j = 0; j < n; ++j) centered(i, j) = delay.states(i, j) - mean[i];

    Matrix cov(mm, mm);
    for (std::size_t a = 0; a < mm; ++a) {
        for (std::size_t b = a; b < mm; ++b) {
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) s += centered(a, j) * centered(b, j);
            s /= static_cast<double>(n);
            cov(a, b) = s;
            cov(b, a) = s;
        }
    }

    const core::EigenDecomposition eig = core::jacobi_eigh(cov);

    Trajectory traj;
    traj.m = static_cast<std::size_t>(k);
    traj.source_len = x.size();
    traj.method = Method::PC;
    traj.lead = delay.lead;
    traj.states = Matrix(traj.m, n);
    for (int comp = 0; comp < k; ++comp)
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t i = 0; i < mm; ++i)
                s += eig.eigenvectors(i, comp) * centered(i, j);
            traj.states(comp, j) = s;
        }
    return traj;
}

TokenMatrix pad_and_unfold(const Trajectory& traj, int p, int s, PaddingMode padding,
                           const EmbeddingConfig* origin) {
    if (p < 1) throw Error(Errc::BadConfig, "patch length must be >= 1");
    if (s < 1 || s > p) throw Error(Errc::BadConfig, "stride must satisfy 1 <= s <= p");
    const std::size_t n = traj.length();
    const std::size_t dim = traj.m;
    if (n == 0) throw Error(Errc::TooShort, "empty trajectory");

    const auto pp = static_cast<std::size_t>(p);
    const auto ss = static_cast<std::size_t>(s);
    std::size_t q = n < pp ? pp - n : 0;
    const std::size_t rem = (n + q - pp) % ss;
    if (rem != 0) q += ss - rem;
    const std::size_t padded = n + q;
    const std::size_t count = (padded - pp) / ss + 1;

    const bool left = padding == PaddingMode::LeftZero || padding == PaddingMode::LeftRepeat;
    const bool repeat = padding == PaddingMode::LeftRepeat || padding == PaddingMode::RightRepeat;

    // Value of padded column c for trajectory row i.
    auto padded_at = [&](std::size_t i, std::size_t c) -> double {
        if (left) {
            if (c < q) return repeat ? traj.states(i, 0) : 0.0;
            return traj.states(i, c - q);
        }
        if (c >= n) return repeat ? traj.states(i, n - 1) : 0.0;
        return traj.states(i, c);
    };

    TokenMatrix tm;
    if (origin != nullptr) tm.origin = *origin;
    tm.origin.patch_len = p;
    tm.origin.stride = s;
    tm.origin.padding = padding;
    tm.traj_dim = dim;
    tm.traj_len = n;
    tm.pad_cols = q;
    tm.lead = traj.lead;
    tm.tokens = Matrix(count, dim * pp);
    for (std::size_t k = 0; k < count; ++k) {
        const std::size_t start = k * ss;
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t c = 0; c < pp; ++c)
                tm.tokens(k, i * pp + c) = padded_at(i, start + c);
    }
    return tm;
}

Trajectory embed_channel(const TimeSeries& ts, std::size_t channel, const EmbeddingConfig& cfg) {
    const std::vector<double> x = ts.channel(channel);
    switch (cfg.method) {
        case Method::TD: return td_embed(x, cfg.m, cfg.tau);
        case Method::HD: return hd_embed(x, cfg.m, cfg.delta, ts.dt);
        case Method::ID: return id_embed(x, cfg.delta, ts.dt);
        case Method::PC: return pc_embed(x, cfg.m, cfg.k);
    }
    throw Error(Errc::BadConfig, "unknown embedding method");
}

std::vector<TokenMatrix> embed_series(const TimeSeries& ts, const EmbeddingConfig& cfg) {
    cfg.validate();
    core::validate_series(ts);
    const std::size_t c = ts.channels();

    std::vector<Trajectory> trajectories;
    trajectories.reserve(c);
    for (std::size_t i = 0; i < c; ++i) trajectories.push_back(embed_channel(ts, i, cfg));

    std::vector<TokenMatrix> out;
    if (cfg.strategy == ChannelStrategy::CI) {
        out.reserve(c);
        for (const Trajectory& traj : trajectories)
            out.push_back(pad_and_unfold(traj, cfg.patch_len, cfg.stride, cfg.padding, &cfg));
        return out;
    }

    // CD: align per-channel trajectories to the common length by dropping
    // the oldest states, then stack along the dimension axis.
    std::size_t n_min = trajectories.front().length();
    for (const Trajectory& traj : trajectories) n_min = std::min(n_min, traj.length());
    if (n_min == 0) throw Error(Errc::ChannelMismatch, "CD alignment emptied a trajectory");

    const std::size_t dim_each = trajectories.front().m;
    Trajectory stacked;
    stacked.m = dim_each * c;
    stacked.source_len = ts.length();
    stacked.method = cfg.method;
    stacked.lead = trajectories.front().lead;
    stacked.states = Matrix(stacked.m, n_min);
    for (std::size_t ch = 0; ch < c; ++ch) {
        const Trajectory& traj = trajectories[ch];
        const std::size_t skip = traj.length() - n_min;
        for (std::size_t i = 0; i < dim_each; ++i)
            for (std::size_t j = 0; j < n_min; ++j)
                stacked.states(ch * dim_each + i, j) = traj.states(i, j + skip);
    }
    out.push_back(pad_and_unfold(stacked, cfg.patch_len, cfg.stride, cfg.padding, &cfg));
    return out;
}

}  // namespace phasembed::embed
