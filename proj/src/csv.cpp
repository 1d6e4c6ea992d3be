#include "qite/csv.hpp"

#include <iomanip>
#include <locale>
#include <sstream>

namespace qite::csv {

std::string number(double value) {
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out << std::setprecision(12) << value;
  return out.str();
}

std::string row(std::span<const std::string> cells) {
  std::string out;
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (k) out += ',';
    out += cells[k];
  }
  out += '\n';
  return out;
}

}  // namespace qite::csv
