#pragma once

#include <vector>

#include "phasembed/core/types.hpp"

namespace phasembed::embed {

using core::ChannelStrategy;
using core::EmbeddingConfig;
using core::Method;
using core::PaddingMode;
using core::TimeSeries;
using core::TokenMatrix;
using core::Trajectory;

/// Time-delay embedding. State j (column j) holds, top to bottom,
/// x[j+(m-1)*tau], x[j+(m-2)*tau], ..., x[j]; row 0 is the most recent
/// sample. N = T - (m-1)*tau.
Trajectory td_embed(const std::vector<double>& x, int m, int tau);

/// High-order derivative embedding, dimension m+1. Row 0 is the signal,
/// row i the order-i forward difference with step delta, each application
/// scaled by 1/(delta*dt). All rows truncate to N = T - m*delta so every
/// state is fully defined.
Trajectory hd_embed(const std::vector<double>& x, int m, int delta, double dt);

/// Integral-differential embedding, dimension fixed at 3:
/// (running left Riemann sum scaled by delta*dt, the signal, forward
/// difference with step delta scaled by 1/(delta*dt)). N = T - delta.
Trajectory id_embed(const std::vector<double>& x, int delta, double dt);

/// Principal-component embedding: TD with tau=1, sample covariance of the
/// delay matrix, projection of the centered states onto the top-k
/// eigenvectors. Output dimension k, N = T - (m-1).
Trajectory pc_embed(const std::vector<double>& x, int m, int k);

/// Pads the trajectory along time by the smallest q >= 0 making the window
/// arithmetic exact ((N+q-p) divisible by s and N+q >= p), then slides a
/// width-p window with stride s. Token k flattens padded columns
/// [k*s, k*s+p) dimension-major. K = (N+q-p)/s + 1.
TokenMatrix pad_and_unfold(const Trajectory& traj, int p, int s, PaddingMode padding,
                           const EmbeddingConfig* origin = nullptr);

/// Embeds one channel of ts per cfg (without tokenization).
Trajectory embed_channel(const TimeSeries& ts, std::size_t channel, const EmbeddingConfig& cfg);

/// Full pipeline per the channel strategy. CI: one TokenMatrix per channel.
/// CD: per-channel trajectories are aligned to the shortest length by
/// dropping their oldest states, stacked along the dimension axis, then
/// tokenized once (result vector has a single element).
std::vector<TokenMatrix> embed_series(const TimeSeries& ts, const EmbeddingConfig& cfg);

}  // namespace phasembed::embed
