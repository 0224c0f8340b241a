#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "phasembed/core/matrix.hpp"

namespace phasembed::core {

enum class Errc {
    NonFinite,
    TooShort,
    BadDt,
    BadConfig,
    BadK,
    Singular,
    NotSymmetric,
    Diverged,
    LengthMismatch,
    NoNeighbors,
    Flat,
    ChannelMismatch,
    IllConditioned,
    ParseFailure,
};

const char* errc_name(Errc code);

/// Library-wide error type: a category code plus a human-readable detail.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& detail)
        : std::runtime_error(std::string(errc_name(code)) + ": " + detail), code_(code) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

/// Uniformly sampled multivariate signal, channels x length.
struct TimeSeries {
    Matrix values;                            // C x T
    double dt = 1.0;                          // sampling interval, seconds
    std::vector<std::string> channel_names;   // optional, size C when present

    std::size_t channels() const { return values.rows(); }
    std::size_t length() const { return values.cols(); }
    std::vector<double> channel(std::size_t c) const;
    std::string channel_name(std::size_t c) const;
};

/// Checks the TimeSeries invariants; returns the input untouched on success.
const TimeSeries& validate_series(const TimeSeries& ts);

enum class Method { TD, HD, ID, PC };
enum class PaddingMode { LeftZero, RightZero, LeftRepeat, RightRepeat };
enum class ChannelStrategy { CI, CD };

const char* method_name(Method m);
const char* padding_name(PaddingMode p);

/// Reconstructed phase-space state sequence, dimension m x length N.
/// `lead` is the number of samples after a state's base index that the
/// state consumes (delay span for TD, forward-difference span for HD/ID);
/// downstream forecasting uses it to align targets without leakage.
struct Trajectory {
    Matrix states;            // m x N
    std::size_t m = 0;        // embedding dimension (rows)
    std::size_t source_len = 0;
    Method method = Method::TD;
    std::size_t lead = 0;

    std::size_t length() const { return states.cols(); }
};

struct EmbeddingConfig {
    Method method = Method::TD;
    int m = 3;        // dimension (TD/PC) or derivative order (HD); ignored by ID
    int tau = 1;      // delay in samples (TD; PC fixes tau=1)
    int delta = 1;    // difference step in samples (HD/ID)
    int k = 3;        // principal-component count (PC)
    int patch_len = 16;
    int stride = 8;
    PaddingMode padding = PaddingMode::LeftZero;
    ChannelStrategy strategy = ChannelStrategy::CI;

    void validate() const;
};

/// Patched trajectory segments: one row per token, width = traj_dim * patch_len.
/// Tokens are flattened dimension-major (all patch_len samples of trajectory
/// row 0, then row 1, ...).
struct TokenMatrix {
    Matrix tokens;            // K x W
    EmbeddingConfig origin;
    std::size_t traj_dim = 0;
    std::size_t traj_len = 0; // pre-padding trajectory length N
    std::size_t pad_cols = 0; // q
    std::size_t lead = 0;     // carried from the trajectory

    std::size_t count() const { return tokens.rows(); }
    std::size_t width() const { return tokens.cols(); }

    /// Original sample index of the last real (non-padded) trajectory column
    /// covered by token k, or -1 if the token is pure padding.
    long long last_sample_index(std::size_t k) const;
};

}  // namespace phasembed::core
