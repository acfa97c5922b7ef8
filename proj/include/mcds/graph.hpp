#ifndef MCDS_GRAPH_HPP
#define MCDS_GRAPH_HPP

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mcds {

using NodeId = int32_t;

struct GraphError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Undirected connected graph with positive integer node weights.
// Weights must fit in poly(n): 1 <= c(v) <= n^k for the configured
// exponent (default 3), so a weight always fits in one message.
struct WeightedGraph {
    int32_t n = 0;
    std::vector<int64_t> weight;                      // c(v), indexed by NodeId
    std::vector<std::pair<NodeId, NodeId>> edges;     // u < v, sorted
    std::vector<std::vector<NodeId>> adj;             // sorted neighbor lists

    int64_t max_weight = 1;

    // Validates all invariants (range, duplicates, self loops, connectivity).
    static WeightedGraph make(int32_t n, std::vector<int64_t> weights,
                              std::vector<std::pair<NodeId, NodeId>> edges,
                              int weight_exponent = 3);

    int64_t cost_of(const std::vector<NodeId>& nodes) const;
    int64_t total_cost() const;
    int degree(NodeId v) const { return static_cast<int>(adj[v].size()); }
};

// Two-party set-disjointness input used by the lower-bound family.
struct DisjointnessInstance {
    int universe_size = 0;          // k
    std::set<int> set_x;            // subset of {1..k}
    std::set<int> set_y;            // subset of {1..k}
    int64_t alpha = 1;              // approximation parameter
};

WeightedGraph load_graph(const std::string& text);
std::string save_graph(const WeightedGraph& g);

// Cycle of 2k nodes with weights alternating 1 and ceil(sqrt(2k+1)), plus a
// center of weight 2k+1 adjacent to every weight-1 node.
WeightedGraph gen_cycle_center(int k);

// p parallel paths of length L, a complete binary tree over the columns
// (padded to a power of two), leaf-to-column edges, and set-disjointness
// weights M = alpha*n+1 on the end columns.
WeightedGraph gen_lower_bound(const DisjointnessInstance& inst, int path_count, int path_len);

WeightedGraph gen_random_connected(int n, double edge_prob, int64_t weight_max, uint64_t seed);

// Exact hop diameter via BFS from every node. Desk-scale instances only.
int diameter(const WeightedGraph& g);

bool is_connected_subset(const WeightedGraph& g, const std::vector<char>& member);

}  // namespace mcds

#endif
