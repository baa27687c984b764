#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "bl/rational.hpp"

namespace bl {

/// Shortest decimal string that round-trips to the same binary64 value.
std::string double_repr(double x);

/// One RFC-4180-style row: comma-joined fields, LF terminator. Fields here
/// are numeric tokens, so no quoting is ever needed.
void write_csv_row(std::ostream& os, const std::vector<std::string>& fields);

}  // namespace bl
