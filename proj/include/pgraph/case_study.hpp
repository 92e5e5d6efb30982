#pragma once

#include <string>
#include <vector>

#include "pgraph/json_io.hpp"

namespace pgraph {

/// One stage of the wall-following sensor hierarchy: a map applied to the
/// filter produced by the previous stage.
struct CaseStudyRow {
  std::string stage;     // "signals", "symbols", "combined", "constant"
  std::string map_name;  // "clip", "threshold", ...
  std::size_t input_vertices = 0;
  bool input_deterministic = true;
  bool nondestructive = false;          // deterministic-filter test when it applies
  bool nondestructive_general = false;  // equivalence search
  EventSequence witness;
  std::string detail;
};

struct CaseStudyReport {
  bool swapped_thresholds = false;
  std::vector<CaseStudyRow> rows;
};

/// Runs the first `stages` (1..4) rows. With `swapped_thresholds` the
/// threshold stage uses the swapped map; those verdicts are exploratory.
CaseStudyReport run_case_study(bool swapped_thresholds = false, std::size_t stages = 4);

std::string format_report(const CaseStudyReport& r);
io::Json to_json(const CaseStudyReport& r);

}  // namespace pgraph
