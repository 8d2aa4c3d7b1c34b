#pragma once

#include <string>

namespace maxent {

// Shortest decimal form that parses back to the same double ("%.17g" fallback).
std::string format_double(double value);

}  // namespace maxent
