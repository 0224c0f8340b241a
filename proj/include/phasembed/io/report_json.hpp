#pragma once

#include <string>

#include "phasembed/dynamics/analyze.hpp"

namespace phasembed::io {

/// Stable JSON rendering of a DynamicsReport (schema version "1").
/// Absent per-channel estimates serialize as null.
std::string report_to_json(const dynamics::DynamicsReport& report);

}  // namespace phasembed::io
