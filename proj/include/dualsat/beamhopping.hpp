#pragma once

#include <string>
#include <vector>

#include "dualsat/channel.hpp"

namespace dualsat {

struct SlotPattern {
    int period = 0;
    std::vector<std::vector<int>> active_sets;  // per slot, ascending beam indices
    double slot_duration = 1.0;
};

// Beams whose 3-dB discs overlap (center distance below twice the radius).
std::vector<std::vector<int>> beam_adjacency(const BeamLayout& layout);

// Greedy coloring in beam order, choosing the least used admissible color
// (lowest color on ties). Throws if slot_reuse colors do not suffice.
std::vector<int> color_beams(const BeamLayout& layout, int slot_reuse);

SlotPattern primary_pattern(const BeamLayout& layout, int slot_reuse);

// Parent of each secondary beam: nearest primary center. A secondary beam
// whose 3-dB disc does not touch any primary disc is an orphan (throws).
std::vector<int> assign_parents(const BeamLayout& primary_layout, const BeamLayout& secondary_layout);

// A secondary beam is active in a slot when its parent is idle and its center
// lies outside every active primary 3-dB contour. If per_slot_budget > 0 and
// more beams qualify, the ones with the least primary pattern gain at their
// center are kept.
SlotPattern secondary_pattern(const SlotPattern& primary, const BeamLayout& primary_layout,
                              const BeamLayout& secondary_layout, int per_slot_budget = 0);

// gain_to_primary(u, b): linear gain from active secondary beam b to active
// primary user u. All secondary powers are scaled by one common factor,
// never above 1, so that every primary user sees I/N <= cap.
RVector secondary_power_control(const RMatrix& gain_to_primary, const RVector& nominal, double noise_w,
                                double i_over_n_cap_db);

std::string format_pattern(const SlotPattern& pattern, const std::string& name);

}  // namespace dualsat
