#include "mcds/aggregation.hpp"

#include <algorithm>
#include <map>

#include "mcds/union_find.hpp"

namespace mcds {

ComponentLabeling identify_components(CongestSim& sim, const NodePred& member,
                                      const EdgePred& edge_member) {
    const WeightedGraph& g = sim.graph();
    UnionFind uf(g.n);
    for (auto [u, v] : g.edges)
        if (member(u) && member(v) && edge_member(u, v)) uf.unite(u, v);
    ComponentLabeling lab;
    lab.label.assign(g.n, -1);
    std::vector<int32_t> min_id(g.n, -1);
    for (NodeId v = 0; v < g.n; ++v) {
        if (!member(v)) continue;
        int r = uf.find(v);
        if (min_id[r] < 0 || v < min_id[r]) min_id[r] = v;
    }
    for (NodeId v = 0; v < g.n; ++v)
        if (member(v)) lab.label[v] = min_id[uf.find(v)];
    sim.charge(PrimitiveKind::component_identify);
    return lab;
}

std::vector<std::optional<int64_t>> component_aggregate_max(
    CongestSim& sim, const ComponentLabeling& lab,
    const std::vector<std::optional<int64_t>>& x) {
    const WeightedGraph& g = sim.graph();
    std::map<int32_t, int64_t> best;
    for (NodeId v = 0; v < g.n; ++v) {
        if (!lab.is_member(v) || !x[v]) continue;
        auto [it, fresh] = best.emplace(lab.label[v], *x[v]);
        if (!fresh) it->second = std::max(it->second, *x[v]);
    }
    std::vector<std::optional<int64_t>> out(g.n);
    for (NodeId v = 0; v < g.n; ++v) {
        if (!lab.is_member(v)) continue;
        auto it = best.find(lab.label[v]);
        if (it != best.end()) out[v] = it->second;
    }
    sim.charge(PrimitiveKind::component_aggregate);
    return out;
}

std::vector<int64_t> component_aggregate_sum(CongestSim& sim, const ComponentLabeling& lab,
                                             const std::vector<int64_t>& x) {
    const WeightedGraph& g = sim.graph();
    std::map<int32_t, int64_t> sum;
    for (NodeId v = 0; v < g.n; ++v)
        if (lab.is_member(v)) sum[lab.label[v]] += x[v];
    std::vector<int64_t> out(g.n, 0);
    for (NodeId v = 0; v < g.n; ++v)
        if (lab.is_member(v)) out[v] = sum[lab.label[v]];
    sim.charge(PrimitiveKind::component_aggregate);
    return out;
}

std::vector<std::vector<int64_t>> component_aggregate_topk(
    CongestSim& sim, const ComponentLabeling& lab,
    const std::vector<std::vector<int64_t>>& x, int k) {
    const WeightedGraph& g = sim.graph();
    std::map<int32_t, std::vector<int64_t>> pool;
    for (NodeId v = 0; v < g.n; ++v) {
        if (!lab.is_member(v)) continue;
        auto& p = pool[lab.label[v]];
        p.insert(p.end(), x[v].begin(), x[v].end());
    }
    for (auto& [label, p] : pool) {
        std::sort(p.begin(), p.end(), std::greater<int64_t>());
        if (static_cast<int>(p.size()) > k) p.resize(k);
    }
    std::vector<std::vector<int64_t>> out(g.n);
    for (NodeId v = 0; v < g.n; ++v)
        if (lab.is_member(v)) out[v] = pool[lab.label[v]];
    sim.charge(PrimitiveKind::component_aggregate);
    return out;
}

std::optional<int64_t> global_reduce_max(CongestSim& sim,
                                         const std::vector<std::optional<int64_t>>& x) {
    std::optional<int64_t> best;
    for (const auto& v : x)
        if (v && (!best || *v > *best)) best = *v;
    sim.charge(PrimitiveKind::global_reduce);
    return best;
}

std::optional<int64_t> global_reduce_min(CongestSim& sim,
                                         const std::vector<std::optional<int64_t>>& x) {
    std::optional<int64_t> best;
    for (const auto& v : x)
        if (v && (!best || *v < *best)) best = *v;
    sim.charge(PrimitiveKind::global_reduce);
    return best;
}

int64_t global_reduce_sum(CongestSim& sim, const std::vector<int64_t>& x) {
    int64_t s = 0;
    for (int64_t v : x) s += v;
    sim.charge(PrimitiveKind::global_reduce);
    return s;
}

int64_t global_reduce_count(CongestSim& sim, const std::vector<char>& indicator) {
    int64_t s = 0;
    for (char v : indicator) s += v ? 1 : 0;
    sim.charge(PrimitiveKind::global_reduce);
    return s;
}

std::optional<Rat> global_reduce_max_rat(CongestSim& sim,
                                         const std::vector<std::optional<Rat>>& x) {
    std::optional<Rat> best;
    for (const auto& v : x)
        if (v && (!best || *best < *v)) best = *v;
    sim.charge(PrimitiveKind::global_reduce);
    return best;
}

}  // namespace mcds
