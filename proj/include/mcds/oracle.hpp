#ifndef MCDS_ORACLE_HPP
#define MCDS_ORACLE_HPP

#include <optional>
#include <set>
#include <vector>

#include "mcds/graph.hpp"
#include "mcds/phase_state.hpp"

namespace mcds {

struct OracleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OracleResult {
    std::vector<NodeId> best_set;
    int64_t best_cost = 0;
    int64_t explored = 0;
};

// True iff s dominates g and G[s] is connected. A single node on a
// single-node graph is a valid CDS; the empty set never is (n >= 1).
bool is_cds(const WeightedGraph& g, const std::vector<NodeId>& s);

bool dominates(const WeightedGraph& g, const std::vector<NodeId>& s);

// Exact minimum-weight CDS by branch-and-bound subset search (n <= 20).
OracleResult exact_mcds(const WeightedGraph& g);

// Exact minimum-weight dominating set (n <= 20).
OracleResult exact_min_dominating(const WeightedGraph& g);

// Maximum basic-star efficiency centered on white node v, by exhaustive
// enumeration over subsets of eligible legs (deg(v) <= 20). nullopt when no
// useful basic-star is centered on v.
std::optional<Rat> brute_force_max_star(const WeightedGraph& g, const PhaseState& st, NodeId v);

// Labels of unsatisfied frozen components that could be satisfied using only
// white nodes of cost <= threshold (one bridging node, or two adjacent ones).
std::set<int32_t> blue_satisfiable_components(const WeightedGraph& g, const PhaseState& st,
                                              const Rat& threshold);

}  // namespace mcds

#endif
