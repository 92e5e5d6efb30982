#include "pgraph/fixture_files.hpp"

#include "pgraph/fixtures.hpp"
#include "pgraph/json_io.hpp"

namespace pgraph::fixtures {

std::vector<NamedDocument> fixture_documents() {
  auto signals = apply_to_pgraph(create_clip(), create_ideal());
  auto symbols = apply_to_pgraph(create_threshold(), signals);
  auto combined = apply_to_pgraph(create_min(), symbols);
  return {
      {"pentagon.json", io::serialize(pentagon())},
      {"pentagon_unknown_start.json", io::serialize(pentagon_unknown_start())},
      {"pentagon_hazard.json", io::serialize(pentagon_hazard())},
      {"plan_laps.json", io::serialize(lap_plan())},
      {"plan_direct.json", io::serialize(direct_plan())},
      {"filter_overlapping.json", io::serialize(overlapping_deterministic_filter())},
      {"filter_nondeterministic.json", io::serialize(nondeterministic_filter())},
      {"filter_agents.json", io::serialize(agents_together_filter())},
      {"coloring_instance.json", io::serialize(coloring_example())},
      {"coloring_filter.json", io::serialize(coloring_filter())},
      {"coloring_map.json", io::serialize(coloring_map())},
      {"create_ideal.json", io::serialize(create_ideal())},
      {"create_signals.json", io::serialize(signals)},
      {"create_symbols.json", io::serialize(symbols)},
      {"create_combined.json", io::serialize(combined)},
      {"map_clip.json", io::serialize(create_clip())},
      {"map_threshold.json", io::serialize(create_threshold())},
      {"map_threshold_swapped.json", io::serialize(create_threshold_swapped())},
      {"map_min.json", io::serialize(create_min())},
      {"map_constant.json", io::serialize(create_constant())},
      {"overlap_intervals.json", io::serialize(overlap_intervals())},
      {"wall_following.json", io::serialize(wall_following())},
  };
}

}  // namespace pgraph::fixtures
