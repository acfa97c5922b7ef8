#include "mcds/oracle.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace mcds {

bool dominates(const WeightedGraph& g, const std::vector<NodeId>& s) {
    std::vector<char> covered(g.n, 0);
    for (NodeId v : s) {
        covered[v] = 1;
        for (NodeId u : g.adj[v]) covered[u] = 1;
    }
    return std::all_of(covered.begin(), covered.end(), [](char c) { return c != 0; });
}

bool is_cds(const WeightedGraph& g, const std::vector<NodeId>& s) {
    if (s.empty()) return false;
    if (!dominates(g, s)) return false;
    std::vector<char> member(g.n, 0);
    for (NodeId v : s) member[v] = 1;
    return is_connected_subset(g, member);
}

namespace {

constexpr int kMaxOracleNodes = 20;

struct SubsetSearch {
    const WeightedGraph& g;
    bool need_connectivity;
    int n;
    std::vector<uint32_t> closed_nbr;   // N[v]
    std::vector<NodeId> order;          // increasing cost
    uint32_t all_mask;
    int64_t best_cost;
    uint32_t best_mask;
    int64_t explored = 0;

    SubsetSearch(const WeightedGraph& graph, bool connectivity)
        : g(graph), need_connectivity(connectivity), n(graph.n) {
        if (n > kMaxOracleNodes)
            throw OracleError("instance too large for exact search: n=" + std::to_string(n) +
                              " > " + std::to_string(kMaxOracleNodes));
        closed_nbr.assign(n, 0);
        for (NodeId v = 0; v < n; ++v) {
            closed_nbr[v] = 1u << v;
            for (NodeId u : g.adj[v]) closed_nbr[v] |= 1u << u;
        }
        order.resize(n);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](NodeId a, NodeId b) { return g.weight[a] < g.weight[b]; });
        all_mask = n == 32 ? ~0u : ((1u << n) - 1);
        best_mask = all_mask;
        best_cost = g.total_cost();
    }

    uint32_t dominated_by(uint32_t included) const {
        uint32_t d = 0;
        for (uint32_t m = included; m; m &= m - 1)
            d |= closed_nbr[std::countr_zero(m)];
        return d;
    }

    bool mask_connected(uint32_t nodes) const {
        if (nodes == 0) return false;
        uint32_t start = nodes & (~nodes + 1);
        uint32_t seen = start;
        uint32_t frontier = start;
        while (frontier) {
            uint32_t next = 0;
            for (uint32_t m = frontier; m; m &= m - 1)
                next |= closed_nbr[std::countr_zero(m)];
            next &= nodes & ~seen;
            seen |= next;
            frontier = next;
        }
        return seen == nodes;
    }

    // all included nodes must lie in one component of G[included + undecided]
    bool reconnectable(uint32_t included, uint32_t excluded) const {
        if (included == 0) return true;
        uint32_t avail = all_mask & ~excluded;
        uint32_t start = included & (~included + 1);
        uint32_t seen = start;
        uint32_t frontier = start;
        while (frontier) {
            uint32_t next = 0;
            for (uint32_t m = frontier; m; m &= m - 1)
                next |= closed_nbr[std::countr_zero(m)];
            next &= avail & ~seen;
            seen |= next;
            frontier = next;
        }
        return (included & ~seen) == 0;
    }

    void run() { recurse(0, 0, 0, 0); }

    void recurse(size_t idx, uint32_t included, uint32_t excluded, int64_t cost) {
        ++explored;
        if (cost >= best_cost) return;
        uint32_t dom = dominated_by(included);
        if (dom == all_mask && included != 0 &&
            (!need_connectivity || mask_connected(included))) {
            best_cost = cost;
            best_mask = included;
            return;  // any superset is strictly more expensive
        }
        if (idx == order.size()) return;

        // every still-undominated vertex needs an available dominator; the
        // cheapest dominator of the first one is an admissible bound
        uint32_t undom = all_mask & ~dom;
        int64_t bound = 0;
        for (uint32_t m = undom; m; m &= m - 1) {
            int u = std::countr_zero(m);
            uint32_t avail = closed_nbr[u] & ~excluded;
            if (avail == 0) return;
            if (bound == 0) {
                int64_t cheapest = INT64_MAX;
                for (uint32_t a = avail; a; a &= a - 1)
                    cheapest = std::min(cheapest, g.weight[std::countr_zero(a)]);
                bound = cheapest;
            }
        }
        if (cost + bound >= best_cost) return;
        if (need_connectivity && !reconnectable(included, excluded)) return;

        NodeId v = order[idx];
        recurse(idx + 1, included | (1u << v), excluded, cost + g.weight[v]);
        recurse(idx + 1, included, excluded | (1u << v), cost);
    }

    OracleResult result() const {
        OracleResult r;
        r.best_cost = best_cost;
        r.explored = explored;
        for (int v = 0; v < n; ++v)
            if (best_mask & (1u << v)) r.best_set.push_back(v);
        return r;
    }
};

}  // namespace

OracleResult exact_mcds(const WeightedGraph& g) {
    SubsetSearch s(g, /*connectivity=*/true);
    s.run();
    return s.result();
}

OracleResult exact_min_dominating(const WeightedGraph& g) {
    SubsetSearch s(g, /*connectivity=*/false);
    s.run();
    return s.result();
}

std::optional<Rat> brute_force_max_star(const WeightedGraph& g, const PhaseState& st, NodeId v) {
    if (!st.is_white(v)) throw OracleError("brute_force_max_star: center must be white");
    std::vector<NodeId> eligible;
    for (NodeId u : g.adj[v])
        if (st.is_white(u) && !is_self_sufficient(st, u)) eligible.push_back(u);
    if (eligible.size() > 20)
        throw OracleError("brute_force_max_star: degree too large (" +
                          std::to_string(eligible.size()) + " eligible legs)");

    std::optional<Rat> best;
    uint32_t subsets = 1u << eligible.size();
    for (uint32_t mask = 0; mask < subsets; ++mask) {
        std::vector<NodeId> legs;
        for (size_t i = 0; i < eligible.size(); ++i)
            if (mask & (1u << i)) legs.push_back(eligible[i]);
        auto sv = evaluate_star(st, v, legs);
        if (sv && (!best || *best < sv->efficiency)) best = sv->efficiency;
    }
    return best;
}

std::set<int32_t> blue_satisfiable_components(const WeightedGraph& g, const PhaseState& st,
                                              const Rat& threshold) {
    std::vector<char> blue(g.n, 0);
    for (NodeId v = 0; v < g.n; ++v)
        if (st.is_white(v) && Rat(g.weight[v]) <= threshold) blue[v] = 1;

    std::set<int32_t> result;
    for (NodeId v = 0; v < g.n; ++v) {
        if (!blue[v]) continue;
        auto comps_v = adjacent_components(st, v);
        // one blue bridge: C - v - C'
        if (comps_v.size() >= 2)
            for (int32_t c : comps_v)
                if (!st.cur_sat.at(c)) result.insert(c);
        // two adjacent blues: C - v - w - C'
        for (NodeId w : g.adj[v]) {
            if (!blue[w]) continue;
            auto comps_w = adjacent_components(st, w);
            for (int32_t c : comps_v) {
                if (st.cur_sat.at(c)) continue;
                for (int32_t c2 : comps_w)
                    if (c2 != c) result.insert(c);
            }
        }
    }
    return result;
}

}  // namespace mcds
