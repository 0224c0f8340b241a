#include "phasembed/experiments/forecast.hpp"

#include <algorithm>
#include <cmath>

#include "phasembed/core/linalg.hpp"
#include "phasembed/core/rng.hpp"
#include "phasembed/embed/embedding.hpp"

namespace phasembed::experiments {

using core::Errc;
using core::Error;
using core::Rng;

namespace {

struct ErrorStats {
    double mse = 0.0;
    double mae = 0.0;
};

ErrorStats accumulate_errors(const Matrix& predicted, const Matrix& truth, std::size_t row_begin,
                             std::size_t row_end) {
    ErrorStats stats;
    std::size_t n = 0;
    for (std::size_t r = row_begin; r < row_end; ++r) {
        for (std::size_t c = 0; c < truth.cols(); ++c) {
            const double e = predicted(r, c) - truth(r, c);
            stats.mse += e * e;
            stats.mae += std::fabs(e);
            ++n;
        }
    }
    if (n > 0) {
        stats.mse /= static_cast<double>(n);
        stats.mae /= static_cast<double>(n);
    }
    return stats;
}

}  // namespace

SupervisedSet build_supervised(const TokenMatrix& tokens,
                               const std::vector<double>& target_channel, int horizon) {
    if (horizon < 1) throw Error(Errc::BadConfig, "horizon must be >= 1");
    const auto t = static_cast<long long>(target_channel.size());

    std::vector<std::size_t> keep;
    for (std::size_t k = 0; k < tokens.count(); ++k) {
        const long long e = tokens.last_sample_index(k);
        if (e >= 0 && e + horizon < t) keep.push_back(k);
    }
    if (keep.empty()) throw Error(Errc::TooShort, "no token has a full future window");

    SupervisedSet set;
    set.features = Matrix(keep.size(), tokens.width());
    set.targets = Matrix(keep.size(), static_cast<std::size_t>(horizon));
    set.anchors.reserve(keep.size());
    for (std::size_t row = 0; row < keep.size(); ++row) {
        const std::size_t k = keep[row];
        for (std::size_t c = 0; c < tokens.width(); ++c)
            set.features(row, c) = tokens.tokens(k, c);
        const long long e = tokens.last_sample_index(k);
        set.anchors.push_back(e);
        for (int h = 1; h <= horizon; ++h)
            set.targets(row, static_cast<std::size_t>(h - 1)) =
                target_channel[static_cast<std::size_t>(e + h)];
    }
    return set;
}

RidgeOutcome ridge_forecast(const Matrix& tokens, const Matrix& targets, double lambda_reg,
                            double split, const std::string& method_tag) {
    const std::size_t k = tokens.rows();
    if (k != targets.rows()) throw Error(Errc::LengthMismatch, "token/target row mismatch");
    if (k < 20) throw Error(Errc::TooShort, "ridge_forecast needs at least 20 tokens");
    if (lambda_reg < 0.0) throw Error(Errc::BadConfig, "lambda must be >= 0");
    if (!(split > 0.0 && split < 1.0)) throw Error(Errc::BadConfig, "split must be in (0,1)");

    const auto n_train = static_cast<std::size_t>(static_cast<double>(k) * split);
    if (n_train < 1 || n_train >= k) throw Error(Errc::TooShort, "split leaves an empty side");
    const std::size_t w = tokens.cols();
    const std::size_t h = targets.cols();

    // Per-column standardization from train statistics only.
    std::vector<double> mean(w, 0.0), scale(w, 1.0);
    for (std::size_t c = 0; c < w; ++c) {
        double m = 0.0;
        for (std::size_t r = 0; r < n_train; ++r) m += tokens(r, c);
        m /= static_cast<double>(n_train);
        double var = 0.0;
        for (std::size_t r = 0; r < n_train; ++r) {
            const double d = tokens(r, c) - m;
            var += d * d;
        }
        var /= static_cast<double>(n_train);
        mean[c] = m;
        scale[c] = var > 1e-24 ? std::sqrt(var) : 1.0;
    }

    auto design_row = [&](std::size_t r, std::vector<double>& row) {
        for (std::size_t c = 0; c < w; ++c) row[c] = (tokens(r, c) - mean[c]) / scale[c];
        row[w] = 1.0;  // intercept
    };

    // Normal equations on the train split; the intercept is not penalized
    // so lambda -> infinity shrinks predictions to the train target mean.
    Matrix gram(w + 1, w + 1);
    Matrix rhs(w + 1, h);
    std::vector<double> row(w + 1);
    for (std::size_t r = 0; r < n_train; ++r) {
        design_row(r, row);
        for (std::size_t a = 0; a < w + 1; ++a) {
            for (std::size_t b = a; b < w + 1; ++b) gram(a, b) += row[a] * row[b];
            for (std::size_t c = 0; c < h; ++c) rhs(a, c) += row[a] * targets(r, c);
        }
    }
    for (std::size_t a = 0; a < w + 1; ++a)
        for (std::size_t b = 0; b < a; ++b) gram(a, b) = gram(b, a);
    for (std::size_t a = 0; a < w; ++a) gram(a, a) += lambda_reg;

    const Matrix coef = core::solve_linear(gram, rhs);

    Matrix predictions(k, h);
    for (std::size_t r = 0; r < k; ++r) {
        design_row(r, row);
        for (std::size_t c = 0; c < h; ++c) {
            double s = 0.0;
            for (std::size_t a = 0; a < w + 1; ++a) s += row[a] * coef(a, c);
            predictions(r, c) = s;
        }
    }

    const ErrorStats train = accumulate_errors(predictions, targets, 0, n_train);
    const ErrorStats test = accumulate_errors(predictions, targets, n_train, k);

    RidgeOutcome outcome;
    outcome.train_mse = train.mse;
    outcome.test.mse = test.mse;
    outcome.test.mae = test.mae;
    outcome.test.horizon = static_cast<int>(h);
    outcome.test.n_test = k - n_train;
    outcome.test.method_tag = method_tag;
    return outcome;
}

ForecastResult persistence_at(const std::vector<double>& x, const std::vector<long long>& anchors,
                              int horizon, double split) {
    if (horizon < 1) throw Error(Errc::BadConfig, "horizon must be >= 1");
    if (!(split > 0.0 && split < 1.0)) throw Error(Errc::BadConfig, "split must be in (0,1)");
    if (anchors.size() < 2) throw Error(Errc::TooShort, "need at least 2 anchors");
    const auto n_train = static_cast<std::size_t>(static_cast<double>(anchors.size()) * split);
    if (n_train < 1 || n_train >= anchors.size())
        throw Error(Errc::TooShort, "split leaves an empty side");

    double mse = 0.0, mae = 0.0;
    std::size_t n = 0;
    for (std::size_t i = n_train; i < anchors.size(); ++i) {
        const long long a = anchors[i];
        for (int h = 1; h <= horizon; ++h) {
            const double e = x[static_cast<std::size_t>(a)] - x[static_cast<std::size_t>(a + h)];
            mse += e * e;
            mae += std::fabs(e);
            ++n;
        }
    }
    ForecastResult result;
    result.mse = mse / static_cast<double>(n);
    result.mae = mae / static_cast<double>(n);
    result.horizon = horizon;
    result.n_test = anchors.size() - n_train;
    result.method_tag = "persistence";
    return result;
}

ForecastResult persistence_baseline(const std::vector<double>& x, int horizon, double split) {
    if (horizon < 1) throw Error(Errc::BadConfig, "horizon must be >= 1");
    const auto t = static_cast<long long>(x.size());
    if (t <= horizon + 1) throw Error(Errc::TooShort, "series shorter than the horizon");
    std::vector<long long> anchors;
    anchors.reserve(static_cast<std::size_t>(t - horizon));
    for (long long a = 0; a + horizon < t; ++a) anchors.push_back(a);
    return persistence_at(x, anchors, horizon, split);
}

Matrix random_projection_surrogate(const Matrix& patches, int d, std::uint64_t seed) {
    if (d < 1) throw Error(Errc::BadConfig, "target dimension must be >= 1");
    const std::size_t w = patches.cols();
    const auto dd = static_cast<std::size_t>(d);

    Rng rng(seed);
    Matrix projection(w, dd);
    const double sigma = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::size_t r = 0; r < w; ++r)
        for (std::size_t c = 0; c < dd; ++c) projection(r, c) = sigma * rng.gaussian();
    return patches * projection;
}

std::vector<DimSweepRow> dim_sweep(const std::vector<double>& x, int p, int s,
                                   const std::vector<int>& dims, int horizon, double lambda_reg,
                                   std::uint64_t seed, double split) {
    for (std::size_t i = 1; i < dims.size(); ++i)
        if (dims[i] <= dims[i - 1])
            throw Error(Errc::BadConfig, "dims must be strictly increasing");

    // Raw patches: width-p windows of the untransformed signal, the input a
    // parameterized embedding layer would see.
    const embed::Trajectory raw = embed::td_embed(x, 1, 1);
    const TokenMatrix patches =
        embed::pad_and_unfold(raw, p, s, core::PaddingMode::LeftZero);
    const SupervisedSet set = build_supervised(patches, x, horizon);

    std::vector<DimSweepRow> rows;
    rows.reserve(dims.size());
    for (std::size_t i = 0; i < dims.size(); ++i) {
        const int d = dims[i];
        const Matrix projected = random_projection_surrogate(
            set.features, d, seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(d));
        const RidgeOutcome outcome = ridge_forecast(projected, set.targets, lambda_reg, split,
                                                    "rp" + std::to_string(d));
        rows.push_back({d, outcome.test.mse, outcome.train_mse});
    }
    return rows;
}

}  // namespace phasembed::experiments
