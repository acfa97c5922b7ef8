#ifndef MCDS_AGGREGATION_HPP
#define MCDS_AGGREGATION_HPP

#include <functional>
#include <optional>
#include <vector>

#include "mcds/rational.hpp"
#include "mcds/runtime.hpp"

namespace mcds {

// Labels the connected components of a subgraph H of the network. Within a
// component every node carries the same label, across components labels
// differ; the canonical label is the minimum member NodeId.
struct ComponentLabeling {
    std::vector<int32_t> label;  // -1 for non-members

    bool is_member(NodeId v) const { return label[v] >= 0; }
};

using NodePred = std::function<bool(NodeId)>;
using EdgePred = std::function<bool(NodeId, NodeId)>;

// Thurimella-style component identification, computed centrally and charged
// at the documented O(D + sqrt(n) log* n) round cost.
ComponentLabeling identify_components(CongestSim& sim, const NodePred& member,
                                      const EdgePred& edge_member);

// Variant A: every member node learns the maximum x(u) over its component.
// Nodes whose value is absent contribute nothing.
std::vector<std::optional<int64_t>> component_aggregate_max(
    CongestSim& sim, const ComponentLabeling& lab,
    const std::vector<std::optional<int64_t>>& x);

// Variant C: in-component summation.
std::vector<int64_t> component_aggregate_sum(CongestSim& sim, const ComponentLabeling& lab,
                                             const std::vector<int64_t>& x);

// Variant B: the k largest values (k <= 3) in each component, descending,
// duplicates kept. Each node may contribute a short list.
std::vector<std::vector<int64_t>> component_aggregate_topk(
    CongestSim& sim, const ComponentLabeling& lab,
    const std::vector<std::vector<int64_t>>& x, int k);

// Global broadcast-and-reduce over the whole network, O(D) rounds charged.
// max/min return nullopt when no node holds a value (degenerate case).
std::optional<int64_t> global_reduce_max(CongestSim& sim,
                                         const std::vector<std::optional<int64_t>>& x);
std::optional<int64_t> global_reduce_min(CongestSim& sim,
                                         const std::vector<std::optional<int64_t>>& x);
int64_t global_reduce_sum(CongestSim& sim, const std::vector<int64_t>& x);
int64_t global_reduce_count(CongestSim& sim, const std::vector<char>& indicator);

// Exact-rational max, used for efficiencies; ties on value are not broken
// further because equal rationals are interchangeable here.
std::optional<Rat> global_reduce_max_rat(CongestSim& sim,
                                         const std::vector<std::optional<Rat>>& x);

}  // namespace mcds

#endif
