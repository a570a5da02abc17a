#pragma once

#include <string>

#include "meandric/nc_partition.hpp"

namespace meandric::tools {

/// Meandric system drawing: the 2n fattened points on a horizontal line,
/// alpha's arcs above and beta's below, one stroke colour per loop. The
/// output depends only on the two partitions.
std::string render_svg(const NcPartition& alpha, const NcPartition& beta);

}  // namespace meandric::tools
