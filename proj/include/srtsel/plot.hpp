#pragma once

#include <string>

#include "srtsel/tables.hpp"
#include "srtsel/verify.hpp"

namespace srtsel {

// Static P-D diagram of a table: digit region edges, the selection-constant
// staircase, and (when a report is given) its violation rectangles
// highlighted. Geometry is taken from the exact values; doubles appear only
// in the final coordinate mapping.
std::string render_pd_svg(const SelectionTable& table, const VerificationReport* report = nullptr);

}  // namespace srtsel
