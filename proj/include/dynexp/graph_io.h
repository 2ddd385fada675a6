#pragma once

#include <iosfwd>
#include <string>

#include "dynexp/dyn_graph.h"

namespace dynexp {

// Text format: a header line "n m", then m lines "u v" with 0-based ids.
// Blank lines and lines starting with '#' are ignored.
DynGraph ReadGraph(std::istream& in);
DynGraph ReadGraphFile(const std::string& path);
void WriteGraph(std::ostream& out, const DynGraph& g);

}  // namespace dynexp
