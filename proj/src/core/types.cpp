#include "phasembed/core/types.hpp"

#include <cmath>

namespace phasembed::core {

const char* errc_name(Errc code) {
    switch (code) {
        case Errc::NonFinite: return "NonFinite";
        case Errc::TooShort: return "TooShort";
        case Errc::BadDt: return "BadDt";
        case Errc::BadConfig: return "BadConfig";
        case Errc::BadK: return "BadK";
        case Errc::Singular: return "Singular";
        case Errc::NotSymmetric: return "NotSymmetric";
        case Errc::Diverged: return "Diverged";
        case Errc::LengthMismatch: return "LengthMismatch";
        case Errc::NoNeighbors: return "NoNeighbors";
        case Errc::Flat: return "Flat";
        case Errc::ChannelMismatch: return "ChannelMismatch";
        case Errc::IllConditioned: return "IllConditioned";
        case Errc::ParseFailure: return "ParseFailure";
    }
    return "Unknown";
}

const char* method_name(Method m) {
    switch (m) {
        case Method::TD: return "td";
        case Method::HD: return "hd";
        case Method::ID: return "id";
        case Method::PC: return "pc";
    }
    return "?";
}

const char* padding_name(PaddingMode p) {
    switch (p) {
        case PaddingMode::LeftZero: return "left-zero";
        case PaddingMode::RightZero: return "right-zero";
        case PaddingMode::LeftRepeat: return "left-repeat";
        case PaddingMode::RightRepeat: return "right-repeat";
    }
    return "?";
}

std::vector<double> TimeSeries::channel(std::size_t c) const {
    std::vector<double> out(length());
    const double* src = values.row(c);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = src[i];
    return out;
}

std::string TimeSeries::channel_name(std::size_t c) const {
    if (c < channel_names.size()) return channel_names[c];
    return "ch" + std::to_string(c);
}

const TimeSeries& validate_series(const TimeSeries& ts) {
    if (ts.channels() < 1 || ts.length() < 2)
        throw Error(Errc::TooShort, "need C >= 1 and T >= 2, got C=" +
                                        std::to_string(ts.channels()) +
                                        " T=" + std::to_string(ts.length()));
    if (!(ts.dt > 0.0)) throw Error(Errc::BadDt, "dt must be > 0");
    if (!ts.values.all_finite()) throw Error(Errc::NonFinite, "series contains NaN/Inf");
    return ts;
}

void EmbeddingConfig::validate() const {
    if (m < 1) throw Error(Errc::BadConfig, "m must be >= 1");
    if (tau < 1) throw Error(Errc::BadConfig, "tau must be >= 1");
    if (delta < 1) throw Error(Errc::BadConfig, "delta must be >= 1");
    if (patch_len < 1) throw Error(Errc::BadConfig, "patch length must be >= 1");
    if (stride < 1 || stride > patch_len)
        throw Error(Errc::BadConfig, "stride must satisfy 1 <= s <= p");
    if (method == Method::PC && (k < 1 || k > m))
        throw Error(Errc::BadK, "k must satisfy 1 <= k <= m");
}

long long TokenMatrix::last_sample_index(std::size_t k) const {
    const long long p = static_cast<long long>(origin.patch_len);
    const long long s = static_cast<long long>(origin.stride);
    const bool left = origin.padding == PaddingMode::LeftZero ||
                      origin.padding == PaddingMode::LeftRepeat;
    long long last_col = static_cast<long long>(k) * s + p - 1;
    if (left) last_col -= static_cast<long long>(pad_cols);
    if (last_col < 0) return -1;
    const long long n = static_cast<long long>(traj_len);
    if (last_col >= n) last_col = n - 1;
    return last_col + static_cast<long long>(lead);
}

}  // namespace phasembed::core
