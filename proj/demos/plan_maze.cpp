// Runs LBT-RRT on the bundled maze and prints how the solution cost evolves
// next to the number of local-planner calls spent so far.

#include <cstdio>

#include "lbt/bench/scenarios.hpp"
#include "lbt/planners/lbt_rrt.hpp"
#include "lbt/postprocess/shortcut.hpp"

int main() {
  const auto scenario = lbt::bench::bundled_scenario("maze");
  lbt::planners::PlannerParams params;
  params.epsilon = 0.2;
  params.seed = 7;
  params.stop = lbt::planners::StopCondition::iterations(3000);

  lbt::planners::LbtRrt planner(scenario, params);
  while (!planner.should_stop()) {
    planner.step();
    if (planner.iteration() % 500 == 0) {
      std::printf("iteration %5llu  vertices %5zu  best %.4f  local-planner calls %llu\n",
                  static_cast<unsigned long long>(planner.iteration()), planner.index().size(),
                  planner.best_cost(), static_cast<unsigned long long>(planner.trace().counters.lp_calls));
    }
  }
  planner.finish();
  if (const auto path = planner.solution()) {
    lbt::Rng rng(1);
    const auto smooth = lbt::postprocess::shortcut(scenario, *path, 200, rng, 0.01 * scenario.space.diagonal());
    std::printf("raw %.4f  shortcut %.4f", lbt::postprocess::path_cost(scenario.space, *path),
                lbt::postprocess::path_cost(scenario.space, smooth));
    if (scenario.reference.best_known) std::printf("  best known %.4f", *scenario.reference.best_known);
    std::printf("\n");
  } else {
    std::printf("no solution\n");
  }
}
