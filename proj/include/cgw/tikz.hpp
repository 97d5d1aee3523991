#pragma once

#include <string>

#include "cgw/disks.hpp"

namespace cgw {

// TikZ picture of a configuration: the drawing is translated and scaled so
// its bounding box (disks included) starts at the origin and is width_cm
// wide. One draw command and one label node per circle, in label order, with
// four decimals. Radius-0 circles are drawn as small filled dots.
// Identical input gives byte-identical output.
std::string export_tikz(const Configuration& conf, double width_cm = 8.0);

}  // namespace cgw
