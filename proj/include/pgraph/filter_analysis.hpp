#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pgraph/label_map.hpp"

namespace pgraph {

struct EquivalenceVerdict {
  bool holds = true;
  /// Observation-terminal execution of the first filter after which the
  /// output sets differ.
  EventSequence witness;
  std::optional<Label> left_outputs;
  std::optional<Label> right_outputs;
  std::string detail;
};

/// Whether f1 is equivalent to f2 modulo the observation map of h: after
/// every observation-terminal execution of f1, f1's possible outputs equal
/// the outputs of f2 over all observation sequences whose observations are
/// drawn from the images of f1's observations. Actions are compared as is.
/// Throws not_akin, unmapped_kind.
EquivalenceVerdict equivalence_modulo_map(const PGraph& f1, const PGraph& f2, const LabelMap& h);

/// f compared against its own image under the observation map of h.
EquivalenceVerdict is_nondestructive_general(const PGraph& f, const LabelMap& h);

/// Single-outputting test on the determinized image. True means
/// non-destructive. Throws not_deterministic.
bool destructiveness_test_deterministic(const PGraph& f, const LabelMap& h);

/// Largest observation space (and coloring instance) the exhaustive
/// searches accept: PGRAPH_MAX_BRUTEFORCE, default 10.
std::size_t max_bruteforce();

struct MinimizationResult {
  bool holds = false;
  /// Observation map to singletons {k0}, {k1}, ... when holds.
  std::optional<LabelMap> witness;
  std::size_t image_size = 0;
  std::size_t candidates_checked = 0;
};

/// Exhaustive search over singleton-valued observation maps with at most n
/// distinct images, one per partition of the observation space. Throws
/// too_large and invalid_argument for an infinite observation space.
MinimizationResult minimize_sensor_image(const PGraph& f, std::size_t n);
/// Smallest n for which minimize_sensor_image holds.
std::size_t minimum_image_size(const PGraph& f);

}  // namespace pgraph
