#pragma once

#include <span>
#include <string>
#include <vector>

namespace qite::csv {

/// 12 significant digits, '.' decimal point, independent of the global locale.
std::string number(double value);

std::string row(std::span<const std::string> cells);

}  // namespace qite::csv
