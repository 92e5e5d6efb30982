#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>

#include "pgraph/label_map.hpp"
#include "pgraph/product.hpp"

namespace pgraph {

struct PlanningProblem {
  PGraph graph;
  std::set<std::size_t> goal;
};

struct Plan {
  PGraph graph;
  std::set<std::size_t> term;
};

enum class SolveFailure { not_akin, not_finite, not_safe, dead_end, terminates_outside_goal };
std::string_view to_string(SolveFailure f);

struct SolveVerdict {
  bool solves = true;
  std::optional<SolveFailure> failure;
  EventSequence witness;
  std::string detail;
};

/// Decides whether the plan solves the problem: the plan is finite and safe
/// on the world, every joint execution can be extended to a termination
/// vertex, joint sinks are terminal, and terminating is only possible inside
/// the goal. Both sides are converted to state-determined presentations first.
SolveVerdict solves(const Plan& p, const PlanningProblem& w);

/// Goal keeps the determinized vertices whose members all lie in the goal.
PlanningProblem problem_to_state_determined(const PlanningProblem& w);
/// Term keeps the determinized vertices with at least one member in term.
Plan plan_to_state_determined(const Plan& p);

/// Disjoint union with the union of the termination regions. Throws not_akin.
Plan plan_union(const Plan& p, const Plan& q);
/// Determinized union; a vertex terminates when its members from one of the
/// operands are nonempty and all terminal there.
Plan plan_union_state_determined(const Plan& p, const Plan& q);

/// (plan vertex, world vertex) pairs that some joint execution can end at.
using VertexRelation = std::set<std::pair<std::size_t, std::size_t>>;
VertexRelation homomorphic_relation(const Plan& p, const PlanningProblem& w);

/// A solution whose relation to the world is a function of the plan vertex.
/// A failing verdict names a plan vertex related to two world vertices.
Verdict is_homomorphic_solution(const Plan& p, const PlanningProblem& w);

/// Plan on the world's own vertices that keeps, at each world vertex, the
/// choices the given plan makes on its last visit there. The world must be
/// state-determined (not_state_determined); throws not_a_solution when the
/// input does not solve the problem or the result fails verification.
Plan derive_homomorphic_solution(const Plan& p, const PlanningProblem& w);

/// Whether h breaks the plan: the mapped plan no longer solves the mapped problem.
bool map_destructive_on_plan(const LabelMap& h, const Plan& p, const PlanningProblem& w);

/// Shortest plan, by events to termination, found by iterative deepening
/// AND-OR search over the determinized problem: one action class is chosen
/// at action vertices, every observation is handled at observation vertices.
/// Plan vertices are named "<world vertex>@<remaining depth>". The result is
/// checked with solves before it is returned.
std::optional<Plan> synthesize_plan(const PlanningProblem& w, std::size_t depth_bound);

}  // namespace pgraph
