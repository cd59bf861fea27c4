#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace isoeuler {

// Fixed 17-significant-digit formatting so repeated runs are byte-identical
// and values round-trip exactly through text.
std::string format_sig17(double v);

// Minimal CSV emission: '.' decimal, comma separator, one header row,
// '\n' line endings.
void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

}  // namespace isoeuler
