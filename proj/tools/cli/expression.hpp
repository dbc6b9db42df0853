#pragma once

#include <string>

namespace cxosc_cli {

/// Parses a time value such as "0.25", "pi", "-pi/4" or "3*pi/2".
double parse_time(const std::string& text);

} // namespace cxosc_cli
