#include "pgraph/case_study.hpp"

#include <sstream>

#include "pgraph/error.hpp"
#include "pgraph/filter_analysis.hpp"
#include "pgraph/fixtures.hpp"
#include "pgraph/presentations.hpp"

namespace pgraph {

CaseStudyReport run_case_study(bool swapped_thresholds, std::size_t stages) {
  if (stages < 1 || stages > 4) throw Error(ErrorCode::invalid_argument, "case study has 1 to 4 stages");
  namespace fx = fixtures;
  struct Stage {
    const char* name;
    const char* map_name;
    LabelMap map;
  };
  std::vector<Stage> plan{
      {"signals", "clip", fx::create_clip()},
      {"symbols", swapped_thresholds ? "threshold_swapped" : "threshold",
       swapped_thresholds ? fx::create_threshold_swapped() : fx::create_threshold()},
      {"combined", "min", fx::create_min()},
      {"constant", "constant", fx::create_constant()},
  };

  CaseStudyReport report{swapped_thresholds, {}};
  PGraph current = fx::create_ideal();
  for (std::size_t i = 0; i < stages; ++i) {
    const auto& s = plan[i];
    CaseStudyRow row;
    row.stage = s.name;
    row.map_name = s.map_name;
    row.input_vertices = current.vertex_count();
    auto general = is_nondestructive_general(current, s.map);
    row.input_deterministic = is_deterministic_filter(current).holds;
    row.nondestructive = row.input_deterministic ? destructiveness_test_deterministic(current, s.map) : general.holds;
    row.nondestructive_general = general.holds;
    row.witness = general.witness;
    row.detail = general.detail;
    report.rows.push_back(std::move(row));
    current = apply_to_pgraph(s.map, current);
  }
  return report;
}

std::string format_report(const CaseStudyReport& r) {
  std::ostringstream out;
  if (r.swapped_thresholds) out << "# swapped thresholds (exploratory, no reference verdicts)\n";
  for (const auto& row : r.rows) {
    out << row.stage << " <- " << row.map_name << ": "
        << (row.nondestructive ? "non-destructive" : "destructive");
    if (!row.input_deterministic) out << " (input filter not deterministic; general test only)";
    if (row.nondestructive != row.nondestructive_general) out << " (general test disagrees)";
    if (!row.nondestructive_general && !row.witness.empty()) out << "  witness " << to_string(row.witness);
    out << "\n";
  }
  return out.str();
}

io::Json to_json(const CaseStudyReport& r) {
  io::Json rows = io::Json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"stage", row.stage},
                    {"map", row.map_name},
                    {"input_vertices", row.input_vertices},
                    {"input_deterministic", row.input_deterministic},
                    {"nondestructive", row.nondestructive},
                    {"nondestructive_general", row.nondestructive_general},
                    {"witness", io::to_json(row.witness)},
                    {"detail", row.detail}});
  }
  return io::Json{{"swapped_thresholds", r.swapped_thresholds}, {"rows", std::move(rows)}};
}

}  // namespace pgraph
