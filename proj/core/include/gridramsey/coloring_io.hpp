#pragma once

#include "gridramsey/grid.hpp"

#include <iosfwd>
#include <string>

namespace gridramsey {

/// Text format:
///   # optional comment lines
///   grid <a1> <a2> ... <ad>
///   colors <c>
///   <volume many cell values in 1..c, row-major, free whitespace>
/// Colors are 1-based on disk, 0-based in memory.
std::string serialize_coloring(const Coloring& coloring);
void write_coloring(std::ostream& out, const Coloring& coloring);

Coloring parse_coloring(std::istream& in);
Coloring parse_coloring(const std::string& text);

Coloring load_coloring_file(const std::string& path);
void save_coloring_file(const std::string& path, const Coloring& coloring);

}  // namespace gridramsey
