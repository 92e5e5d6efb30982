#pragma once

#include "pgraph/coloring.hpp"
#include "pgraph/planning.hpp"

/// Bundled example graphs, plans and maps used by the tests and the CLI.
namespace pgraph::fixtures {

/// Robot circling a five-segment loop whose last segment holds a charger.
/// Each u1 advances one segment and is answered by y1, or by y2 on arrival
/// at the charger segment; there u2 charges (answered by y2) until u1 leaves.
/// Goal: the charged state.
PlanningProblem pentagon();
/// The same world with the robot's starting segment unknown.
PlanningProblem pentagon_unknown_start();
/// Unknown start where u2 away from the charger leaves the robot stuck,
/// answering every later action with y1. A plan must localize with y2
/// before charging.
PlanningProblem pentagon_hazard();

/// Three-step u1 cycle that waits until a y2 lands on its middle step, then
/// charges once. Solves the pentagon after three laps; not homomorphic.
Plan lap_plan();
/// Straight run to the charger: u1 y1 three times, u1 y2, u2 y2.
Plan direct_plan();

/// Filter with overlapping observation labels that is still deterministic.
PGraph overlapping_deterministic_filter();
/// Filter where emit0 b emit0 b can be followed by emit0 or emit1.
PGraph nondeterministic_filter();
/// Two agents on a ring cut by beams a, b, c: emit1 while they are known to
/// share a region, emit0 otherwise.
PGraph agents_together_filter();

/// Four-cycle a-b-c-d with chord b-d; chromatic number 3.
ColoringInstance coloring_example();
/// reduce_from_3coloring(coloring_example()).
PGraph coloring_filter();
/// a -> x, b -> y, c -> x, d -> z: a proper coloring as an observation map.
LabelMap coloring_map();

/// Wall-following filter on five range readings (wall, four cliff sensors).
/// Goes forward while the wall is near and every cliff sensor sees floor,
/// otherwise turns, and reverses when still blocked after a turn.
PGraph create_ideal();
/// Clip to the sensor registers: wall 100x in [0, 1023], cliffs 1000x in [0, 4095].
LabelMap create_clip();
/// Threshold the registers: wall "1" below 10, cliff "1" from 20 up.
LabelMap create_threshold();
/// Minimum of the five bits.
LabelMap create_min();
/// Everything to "0".
LabelMap create_constant();
/// Threshold with the wall and cliff thresholds swapped (20 and 10).
LabelMap create_threshold_swapped();

/// One observation vertex with out-labels [0,5] and [3,9].
PGraph overlap_intervals();
/// Observation-first wall follower over two-bit readings with wheel-speed
/// boxes in [0,500]^2 as actions.
PGraph wall_following();

}  // namespace pgraph::fixtures
