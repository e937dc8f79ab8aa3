#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace qmtool {

// Shortest decimal string that round-trips the double.
std::string fmt(double v);
std::string fmt(std::uint64_t v);

// RFC-ish CSV: header then rows, LF line endings, no quoting (cell content is
// numeric or L/R strings by construction).
void write_csv(std::ostream&, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

}  // namespace qmtool
