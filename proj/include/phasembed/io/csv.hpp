#pragma once

#include <string>

#include "phasembed/core/types.hpp"

namespace phasembed::io {

using core::TimeSeries;
using core::TokenMatrix;

/// Series CSV: header row, leading `t` column in seconds, one column per
/// channel, LF line endings, %.17g formatting (doubles round-trip).
void write_series_csv(const TimeSeries& ts, const std::string& path);

/// Parses a series CSV. A leading `t` column must be strictly increasing
/// and uniform within 1e-9 relative and supplies dt; without it dt
/// defaults to 1. Rejects ragged rows, non-numeric cells, non-finite
/// values, and fewer than 2 data rows.
TimeSeries read_series_csv(const std::string& path);

/// Token CSV: header `token_index,f0,...,f{W-1}`, one row per token in
/// time order.
void write_tokens_csv(const TokenMatrix& tokens, const std::string& path);

/// Writes content to path atomically (temp file in the same directory,
/// renamed into place on success).
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace phasembed::io
