#ifndef MCDS_DOMINATING_SET_HPP
#define MCDS_DOMINATING_SET_HPP

#include <vector>

#include "mcds/runtime.hpp"

namespace mcds {

struct DominatingSetResult {
    std::vector<NodeId> members;
    int64_t cost = 0;
    int64_t rounds_used = 0;  // raw engine rounds consumed by this stage
};

// Randomized parallel weighted greedy: nodes whose cost-effectiveness is
// within a factor 2 of the global best join with probability 1/(1+dbar),
// where dbar bounds how many candidates compete for one uncovered node.
// Expected cost O(log Delta) times the optimal weighted dominating set.
DominatingSetResult compute_dominating_set(CongestSim& sim);

}  // namespace mcds

#endif
