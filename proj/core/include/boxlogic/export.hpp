#pragma once

#include <boxlogic/compatibility.hpp>
#include <boxlogic/logic.hpp>

#include <string>

namespace boxlogic {

/// Element table, complements, atoms and Hasse covers. Elements are hex bit
/// vectors over the ground set; everything else refers to table indices.
std::string logic_to_json(const Logic& logic);

/// Hasse diagram, one node per element labelled with its hex set.
std::string hasse_dot(const Logic& logic);

/// Single-box logic drawn as its blocks: 0 and 1 shared, one cluster per
/// input holding that block's remaining elements.
std::string pasting_dot(const SingleBoxLogic& box);

std::string pasting_report_json(const PastingReport& report);

}  // namespace boxlogic
