#pragma once

#include <string>

namespace apf {

/// Number formatting for export files: 9 significant digits,
/// "inf"/"-inf"/"nan" for non-finite values.
std::string format_number(double v);

}  // namespace apf
