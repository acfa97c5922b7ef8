#include "mcds/dominating_set.hpp"

#include <algorithm>
#include <optional>

#include "mcds/aggregation.hpp"

namespace mcds {

namespace {

// Message tags scoped to this stage's rounds.
enum DsTag : int { kCovered = 1, kCandidate = 2, kCoverCount = 3, kJoined = 4 };

}  // namespace

DominatingSetResult compute_dominating_set(CongestSim& sim) {
    const WeightedGraph& g = sim.graph();
    const int64_t start_rounds = sim.metrics().raw_rounds;

    std::vector<char> in_set(g.n, 0);
    std::vector<char> covered(g.n, 0);
    // nbr_covered[v][j]: covered flag of g.adj[v][j] as last announced
    std::vector<std::vector<char>> nbr_covered(g.n);
    for (NodeId v = 0; v < g.n; ++v) nbr_covered[v].assign(g.adj[v].size(), 0);

    auto broadcast_bit = [&](int tag, const std::vector<char>& bit) {
        std::vector<std::vector<std::pair<NodeId, BoundedMessage>>> out(g.n);
        for (NodeId v = 0; v < g.n; ++v)
            for (NodeId u : g.adj[v])
                out[v].emplace_back(u, BoundedMessage::with_tag(tag).add_bool(bit[v]));
        return sim.exchange(out);
    };

    int stall = 0;
    while (true) {
        // refresh each node's view of neighbor coverage
        auto inbox = broadcast_bit(kCovered, covered);
        for (NodeId v = 0; v < g.n; ++v)
            for (const auto& d : inbox[v]) {
                auto it = std::lower_bound(g.adj[v].begin(), g.adj[v].end(), d.from);
                nbr_covered[v][it - g.adj[v].begin()] = static_cast<char>(d.msg.fields[0]);
            }

        // span(v) = uncovered nodes in N[v]; effectiveness e(v) = span/c(v)
        std::vector<int64_t> span(g.n, 0);
        std::vector<std::optional<Rat>> eff(g.n);
        for (NodeId v = 0; v < g.n; ++v) {
            if (!covered[v]) span[v] += 1;
            for (size_t j = 0; j < g.adj[v].size(); ++j)
                if (!nbr_covered[v][j]) span[v] += 1;
            if (span[v] > 0 && !in_set[v]) eff[v] = Rat(span[v], g.weight[v]);
        }
        auto e_star = global_reduce_max_rat(sim, eff);
        if (!e_star) break;  // every node covered

        std::vector<char> candidate(g.n, 0);
        for (NodeId v = 0; v < g.n; ++v)
            if (eff[v] && Rat(eff[v]->num * 2, eff[v]->den) >= *e_star) candidate[v] = 1;

        auto cand_inbox = broadcast_bit(kCandidate, candidate);
        // uncovered nodes count the candidates covering them and reply
        std::vector<int64_t> cover_count(g.n, 0);
        for (NodeId v = 0; v < g.n; ++v) {
            if (covered[v]) continue;
            int64_t c = candidate[v] ? 1 : 0;
            for (const auto& d : cand_inbox[v]) c += d.msg.fields[0];
            cover_count[v] = c;
        }
        std::vector<std::vector<std::pair<NodeId, BoundedMessage>>> count_out(g.n);
        for (NodeId v = 0; v < g.n; ++v) {
            if (covered[v]) continue;
            for (NodeId u : g.adj[v])
                count_out[v].emplace_back(
                    u, BoundedMessage::with_tag(kCoverCount).add(cover_count[v], sim.count_bits()));
        }
        auto count_inbox = sim.exchange(count_out);

        std::vector<char> joined(g.n, 0);
        for (NodeId v = 0; v < g.n; ++v) {
            if (!candidate[v]) continue;
            // a candidate has an uncovered node in N[v], and that node counts
            // at least this candidate, so dbar >= 1
            int64_t dbar = covered[v] ? 1 : cover_count[v];
            for (const auto& d : count_inbox[v]) dbar = std::max(dbar, d.msg.fields[0]);
            if (sim.stream(v).one_in(static_cast<uint64_t>(1 + dbar))) joined[v] = 1;
        }

        // a stalled effectiveness level eventually forces the best node in
        auto joined_any = [&] {
            for (NodeId v = 0; v < g.n; ++v)
                if (joined[v]) return true;
            return false;
        };
        if (!joined_any()) {
            ++stall;
            if (stall >= 8) {
                NodeId best = -1;
                for (NodeId v = 0; v < g.n; ++v)
                    if (eff[v] && (best < 0 || *eff[best] < *eff[v])) best = v;
                joined[best] = 1;
                stall = 0;
            }
        } else {
            stall = 0;
        }

        auto join_inbox = broadcast_bit(kJoined, joined);
        for (NodeId v = 0; v < g.n; ++v) {
            if (joined[v]) {
                in_set[v] = 1;
                covered[v] = 1;
            }
            for (const auto& d : join_inbox[v])
                if (d.msg.fields[0]) covered[v] = 1;
        }
    }

    DominatingSetResult res;
    for (NodeId v = 0; v < g.n; ++v)
        if (in_set[v]) res.members.push_back(v);
    res.cost = g.cost_of(res.members);
    res.rounds_used = sim.metrics().raw_rounds - start_rounds;
    return res;
}

}  // namespace mcds
