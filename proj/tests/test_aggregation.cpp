#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>

#include "mcds/aggregation.hpp"
#include "mcds/graph.hpp"
#include "mcds/random.hpp"
#include "mcds/union_find.hpp"

using namespace mcds;

namespace {

CongestSim make_sim(const WeightedGraph& g) {
    RunConfig cfg;
    return CongestSim(g, cfg);
}

}  // namespace

TEST_CASE("whole graph is one component labeled by node 0") {
    auto g = gen_random_connected(25, 0.3, 5, 11);
    auto sim = make_sim(g);
    auto lab = identify_components(
        sim, [](NodeId) { return true; }, [](NodeId, NodeId) { return true; });
    for (NodeId v = 0; v < g.n; ++v) CHECK(lab.label[v] == 0);
}

TEST_CASE("empty edge set labels every member by itself") {
    auto g = gen_random_connected(10, 0.5, 5, 3);
    auto sim = make_sim(g);
    auto lab = identify_components(
        sim, [](NodeId) { return true; }, [](NodeId, NodeId) { return false; });
    for (NodeId v = 0; v < g.n; ++v) CHECK(lab.label[v] == v);
}

TEST_CASE("labels match a union-find partition on 500 random subgraphs") {
    RandomStream rng(2024);
    for (int trial = 0; trial < 500; ++trial) {
        int n = 2 + static_cast<int>(rng.below(199));
        auto g = gen_random_connected(n, 0.08, 9, rng.next());
        std::vector<char> member(g.n);
        for (NodeId v = 0; v < g.n; ++v) member[v] = rng.below(4) != 0;
        uint64_t edge_keep = 1 + rng.below(3);

        std::vector<std::pair<NodeId, NodeId>> kept;
        auto sim = make_sim(g);
        RandomStream edge_rng(trial);
        auto edge_ok = [&](NodeId u, NodeId v) {
            // deterministic pseudo-predicate on the edge
            return (static_cast<uint64_t>(u) * 31 + static_cast<uint64_t>(v)) % 4 < edge_keep;
        };
        auto lab = identify_components(
            sim, [&](NodeId v) { return member[v] != 0; }, edge_ok);

        UnionFind uf(g.n);
        for (auto [u, v] : g.edges)
            if (member[u] && member[v] && edge_ok(u, v)) uf.unite(u, v);
        for (NodeId u = 0; u < g.n; ++u) {
            if (!member[u]) {
                CHECK(lab.label[u] == -1);
                continue;
            }
            for (NodeId v = u + 1; v < g.n; ++v) {
                if (!member[v]) continue;
                CHECK((lab.label[u] == lab.label[v]) == uf.same(u, v));
            }
            CHECK(lab.label[u] <= u);  // canonical label is the component minimum
        }
    }
}

TEST_CASE("aggregate variants on a hand-built component structure") {
    // path 0-1-2-3-4 with membership {0,1,2} and {4}: two components
    auto g = WeightedGraph::make(5, {1, 1, 1, 1, 1}, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
    auto sim = make_sim(g);
    auto lab = identify_components(
        sim, [](NodeId v) { return v != 3; }, [](NodeId, NodeId) { return true; });

    SUBCASE("max over a singleton is the identity") {
        std::vector<std::optional<int64_t>> x(5);
        x[4] = 7;
        auto mx = component_aggregate_max(sim, lab, x);
        CHECK(*mx[4] == 7);
    }
    SUBCASE("sum reaches every member") {
        auto s = component_aggregate_sum(sim, lab, {1, 5, 2, 100, 3});
        CHECK(s[0] == 8);
        CHECK(s[1] == 8);
        CHECK(s[2] == 8);
        CHECK(s[4] == 3);
    }
    SUBCASE("sum over all-ones returns component sizes") {
        auto s = component_aggregate_sum(sim, lab, std::vector<int64_t>(5, 1));
        CHECK(s[0] == 3);
        CHECK(s[4] == 1);
    }
}

TEST_CASE("top-k keeps duplicates and sorts descending") {
    auto g = gen_random_connected(5, 1.0, 3, 1);
    auto sim = make_sim(g);
    auto lab = identify_components(
        sim, [](NodeId) { return true; }, [](NodeId, NodeId) { return true; });
    std::vector<std::vector<int64_t>> x = {{9}, {1}, {7}, {7}, {3}};
    auto top = component_aggregate_topk(sim, lab, x, 3);
    CHECK(top[0] == std::vector<int64_t>{9, 7, 7});
    CHECK(top[4] == std::vector<int64_t>{9, 7, 7});
}

TEST_CASE("global reductions") {
    auto g = gen_random_connected(8, 0.5, 5, 2);
    auto sim = make_sim(g);
    CHECK(global_reduce_count(sim, {1, 0, 1, 1, 0, 0, 0, 1}) == 4);
    std::vector<std::optional<int64_t>> x(8);
    x[2] = 5;
    x[6] = -3;
    CHECK(*global_reduce_max(sim, x) == 5);
    CHECK(*global_reduce_min(sim, x) == -3);
    CHECK(global_reduce_sum(sim, {1, 2, 3, 4, 0, 0, 0, 0}) == 10);

    // degenerate: no node holds a value -> flagged as absent
    std::vector<std::optional<int64_t>> none(8);
    CHECK(!global_reduce_min(sim, none).has_value());

    std::vector<std::optional<Rat>> r(8);
    r[1] = Rat(1, 3);
    r[5] = Rat(2, 5);
    CHECK(*global_reduce_max_rat(sim, r) == Rat(2, 5));
}

TEST_CASE("every primitive call charges its documented round cost") {
    auto g = gen_cycle_center(8);  // n=17
    auto sim = make_sim(g);
    int d = sim.diameter();
    int64_t sqrt_n = 5;  // ceil(sqrt(17))
    int64_t comp_charge = 4 * (d + sqrt_n * log_star(g.n));
    int64_t reduce_charge = 4 * d;

    int64_t before = sim.metrics().charged_rounds;
    auto lab = identify_components(
        sim, [](NodeId) { return true; }, [](NodeId, NodeId) { return true; });
    CHECK(sim.metrics().charged_rounds - before == comp_charge);

    before = sim.metrics().charged_rounds;
    component_aggregate_sum(sim, lab, std::vector<int64_t>(g.n, 1));
    CHECK(sim.metrics().charged_rounds - before == comp_charge);

    before = sim.metrics().charged_rounds;
    global_reduce_count(sim, std::vector<char>(g.n, 1));
    CHECK(sim.metrics().charged_rounds - before == reduce_charge);
}
