#pragma once

#include <string>

namespace vz {

/// Shortest decimal that reads back to the same double; "inf", "-inf", "nan" otherwise.
std::string shortest(double x);

/// Fixed number of significant digits, used for SVG coordinates.
std::string significant(double x, int digits = 9);

}  // namespace vz
