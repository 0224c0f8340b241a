#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "phasembed/core/matrix.hpp"
#include "phasembed/core/types.hpp"

namespace phasembed::experiments {

using core::Matrix;
using core::TokenMatrix;

struct ForecastResult {
    double mse = 0.0;
    double mae = 0.0;
    int horizon = 0;
    std::size_t n_test = 0;
    std::string method_tag;
};

struct RidgeOutcome {
    ForecastResult test;
    double train_mse = 0.0;
};

/// Token rows paired with the next `horizon` samples of a target channel.
/// `anchors` records each kept token's last consumed sample index; tokens
/// without a full future window are dropped, order stays chronological.
struct SupervisedSet {
    Matrix features;  // K' x W
    Matrix targets;   // K' x H
    std::vector<long long> anchors;
};

SupervisedSet build_supervised(const TokenMatrix& tokens,
                               const std::vector<double>& target_channel, int horizon);

/// Closed-form ridge regression with an unpenalized intercept column and
/// per-column standardization fitted on the chronological train split
/// (first `split` fraction of rows). Test metrics average over all
/// horizon outputs. Throws IllConditioned when the lambda=0 normal
/// equations are numerically singular.
RidgeOutcome ridge_forecast(const Matrix& tokens, const Matrix& targets, double lambda_reg,
                            double split, const std::string& method_tag = "ridge");

/// Naive baseline y(t+h) = y(t), evaluated over the test fraction of all
/// admissible anchor times.
ForecastResult persistence_baseline(const std::vector<double>& x, int horizon, double split);

/// Persistence evaluated at explicit anchor indices (token-aligned runs
/// use this so both methods score the same forecast instants).
ForecastResult persistence_at(const std::vector<double>& x, const std::vector<long long>& anchors,
                              int horizon, double split);

/// Frozen Gaussian projection, entries N(0, 1/d): the untrained stand-in
/// for a parameterized embedding layer.
Matrix random_projection_surrogate(const Matrix& patches, int d, std::uint64_t seed);

struct DimSweepRow {
    int dim = 0;
    double test_mse = 0.0;
    double train_mse = 0.0;
};

/// Loss-vs-dimension evidence table: raw patches of x (width p, stride s)
/// are projected to each dim in `dims` and ridge-scored at the given
/// horizon. Emits one row per dim; asserts nothing about the curve shape.
std::vector<DimSweepRow> dim_sweep(const std::vector<double>& x, int p, int s,
                                   const std::vector<int>& dims, int horizon, double lambda_reg,
                                   std::uint64_t seed, double split = 0.7);

}  // namespace phasembed::experiments
