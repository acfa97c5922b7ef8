#include "mcds/phase_state.hpp"

#include <algorithm>
#include <cassert>

#include "mcds/union_find.hpp"

namespace mcds {

int64_t PhaseState::unsatisfied_count() const {
    int64_t c = 0;
    for (const auto& [label, sat] : satisfied)
        if (!sat) ++c;
    return c;
}

static std::vector<int32_t> label_subgraph(const WeightedGraph& g,
                                           const std::vector<char>& member) {
    UnionFind uf(g.n);
    for (auto [u, v] : g.edges)
        if (member[u] && member[v]) uf.unite(u, v);
    std::vector<int32_t> min_id(g.n, -1);
    for (NodeId v = 0; v < g.n; ++v) {
        if (!member[v]) continue;
        int r = uf.find(v);
        if (min_id[r] < 0 || v < min_id[r]) min_id[r] = v;
    }
    std::vector<int32_t> label(g.n, -1);
    for (NodeId v = 0; v < g.n; ++v)
        if (member[v]) label[v] = min_id[uf.find(v)];
    return label;
}

void central_recompute_satisfaction(PhaseState& st) {
    const WeightedGraph& g = *st.g;
    std::vector<char> nonwhite(g.n, 0);
    for (NodeId v = 0; v < g.n; ++v) nonwhite[v] = st.is_nonwhite(v) ? 1 : 0;
    st.cur_label = label_subgraph(g, nonwhite);

    // a current component is satisfied iff it holds a gray node or spans
    // two or more frozen components
    std::map<int32_t, int32_t> first_frozen;
    std::map<int32_t, bool> sat;
    for (NodeId v = 0; v < g.n; ++v) {
        if (st.cur_label[v] < 0) continue;
        int32_t c = st.cur_label[v];
        if (st.is_gray(v)) {
            sat[c] = sat[c] || true;
        } else {
            auto [it, fresh] = first_frozen.emplace(c, st.frozen_label[v]);
            if (!fresh && it->second != st.frozen_label[v]) sat[c] = true;
            else sat.emplace(c, false);
        }
    }
    st.cur_sat = sat;

    for (NodeId v = 0; v < g.n; ++v) {
        if (!st.is_green(v)) continue;
        bool now = st.cur_sat.at(st.cur_label[v]);
        auto it = st.satisfied.find(st.frozen_label[v]);
        assert(it != st.satisfied.end());
        assert(now || !it->second);  // satisfaction never reverts
        it->second = now;
    }
}

PhaseState make_phase_state(const WeightedGraph& g, const std::vector<char>& green,
                            const std::vector<char>& gray) {
    PhaseState st;
    st.g = &g;
    st.color.assign(g.n, Color::white);
    for (NodeId v = 0; v < g.n; ++v) {
        assert(!(green[v] && gray[v]));
        if (green[v]) st.color[v] = Color::green;
        else if (gray[v]) st.color[v] = Color::gray;
    }
    st.frozen_label = label_subgraph(g, green);
    std::set<int32_t> frozen;
    for (NodeId v = 0; v < g.n; ++v)
        if (st.frozen_label[v] >= 0) frozen.insert(st.frozen_label[v]);
    st.num_frozen = static_cast<int32_t>(frozen.size());
    for (int32_t f : frozen) st.satisfied[f] = false;
    st.view.assign(g.n, {});
    for (NodeId v = 0; v < g.n; ++v) st.view[v].resize(g.adj[v].size());
    central_recompute_satisfaction(st);
    return st;
}

std::set<int32_t> adjacent_components(const PhaseState& st, NodeId v) {
    std::set<int32_t> comps;
    for (NodeId u : st.g->adj[v])
        if (st.is_nonwhite(u)) comps.insert(st.cur_label[u]);
    return comps;
}

bool is_self_sufficient(const PhaseState& st, NodeId v) {
    if (!st.is_white(v)) return false;
    auto comps = adjacent_components(st, v);
    if (comps.size() < 2) return false;
    for (int32_t c : comps)
        if (!st.cur_sat.at(c)) return true;
    return false;
}

std::optional<StarValue> evaluate_star(const PhaseState& st, NodeId center,
                                       const std::vector<NodeId>& legs) {
    std::set<int32_t> comps = adjacent_components(st, center);
    int64_t cost = st.g->weight[center];
    for (NodeId u : legs) {
        auto c = adjacent_components(st, u);
        comps.insert(c.begin(), c.end());
        cost += st.g->weight[u];
    }
    if (comps.size() < 2) return std::nullopt;
    StarValue sv;
    sv.cost = cost;
    for (int32_t c : comps)
        if (!st.cur_sat.at(c)) sv.phi.push_back(c);
    if (sv.phi.empty()) return std::nullopt;
    sv.efficiency = Rat(static_cast<int64_t>(sv.phi.size()), cost);
    return sv;
}

}  // namespace mcds
