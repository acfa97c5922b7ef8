#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "mcds/graph.hpp"
#include "mcds/oracle.hpp"
#include "mcds/random.hpp"

using namespace mcds;

namespace {

WeightedGraph path3(int64_t a, int64_t b, int64_t c) {
    return WeightedGraph::make(3, {a, b, c}, {{0, 1}, {1, 2}});
}

}  // namespace

TEST_CASE("load_graph parses a 3-node path") {
    auto g = load_graph(R"({"n":3,"weights":[5,1,5],"edges":[[0,1],[1,2]]})");
    CHECK(g.n == 3);
    CHECK(g.edges.size() == 2);
    CHECK(g.weight == std::vector<int64_t>{5, 1, 5});
}

TEST_CASE("load_graph rejects self-loops with location") {
    try {
        load_graph(R"({"n":2,"weights":[1,1],"edges":[[0,1],[0,0]]})");
        FAIL("expected error");
    } catch (const GraphError& e) {
        CHECK(std::string(e.what()).find("self-loop") != std::string::npos);
    }
}

TEST_CASE("load_graph rejects disconnected graphs") {
    std::string doc = R"({"n":6,"weights":[1,1,1,1,1,1],
        "edges":[[0,1],[1,2],[0,2],[3,4],[4,5],[3,5]]})";
    CHECK_THROWS_WITH_AS(load_graph(doc), doctest::Contains("disconnected"), GraphError);
}

TEST_CASE("load_graph rejects duplicates and bad weights") {
    CHECK_THROWS_AS(load_graph(R"({"n":2,"weights":[1,1],"edges":[[0,1],[1,0]]})"), GraphError);
    CHECK_THROWS_WITH_AS(load_graph(R"({"n":2,"weights":[1,9],"edges":[[0,1]]})"),
                         doctest::Contains("out of range"), GraphError);  // 9 > 2^3
    CHECK_THROWS_WITH_AS(load_graph("{nope"), doctest::Contains("parse failure"), GraphError);
}

TEST_CASE("cycle-center family") {
    auto g = gen_cycle_center(4);
    CHECK(g.n == 9);
    CHECK(g.weight[8] == 9);   // center
    CHECK(g.weight[1] == 3);   // ceil(sqrt(9))
    CHECK(g.weight[0] == 1);

    auto g2 = gen_cycle_center(2);
    CHECK(g2.n == 5);
    CHECK(g2.degree(4) == 2);  // center adjacent to the two weight-1 nodes
    CHECK_THROWS_AS(gen_cycle_center(1), GraphError);
}

TEST_CASE("cycle-center exact optimum, frozen from the oracle") {
    // two weight-1 nodes plus the center beat the four-spokes-plus-center set
    auto r = exact_mcds(gen_cycle_center(4));
    CHECK(r.best_cost == 11);
}

TEST_CASE("weight-1 nodes dominate every cycle-center instance at cost k") {
    for (int k = 2; k <= 50; ++k) {
        auto g = gen_cycle_center(k);
        std::vector<NodeId> ones;
        for (NodeId v = 0; v < 2 * k; v += 2) ones.push_back(v);
        CHECK(g.cost_of(ones) == k);
        CHECK(dominates(g, ones));
    }
}

TEST_CASE("lower-bound family encodes disjointness in the optimum") {
    DisjointnessInstance inst;
    inst.universe_size = 3;
    inst.alpha = 2;

    inst.set_x = {1};
    inst.set_y = {2};
    auto g = gen_lower_bound(inst, 3, 3);
    int64_t m_weight = 2 * g.n + 1;
    auto r = exact_mcds(g);
    CHECK(r.best_cost < m_weight);
    for (NodeId v : r.best_set) CHECK(g.weight[v] < m_weight);  // no M node needed

    inst.set_y = {1};
    auto g2 = gen_lower_bound(inst, 3, 3);
    auto r2 = exact_mcds(g2);
    CHECK(r2.best_cost >= m_weight);
}

TEST_CASE("lower-bound rejects degenerate dimensions") {
    DisjointnessInstance inst;
    inst.universe_size = 1;
    CHECK_THROWS_WITH_AS(gen_lower_bound(inst, 1, 1), doctest::Contains("inconsistent"),
                         GraphError);
    inst.universe_size = 2;
    CHECK_THROWS_AS(gen_lower_bound(inst, 3, 3), GraphError);  // universe != paths
}

TEST_CASE("random generator corner cases and determinism") {
    auto g1 = gen_random_connected(1, 0.5, 10, 7);
    CHECK(g1.n == 1);
    CHECK(g1.edges.empty());

    auto k10 = gen_random_connected(10, 1.0, 5, 7);
    CHECK(k10.edges.size() == 45);

    auto a = gen_random_connected(40, 0.1, 100, 123);
    auto b = gen_random_connected(40, 0.1, 100, 123);
    CHECK(save_graph(a) == save_graph(b));
    auto c = gen_random_connected(40, 0.1, 100, 124);
    CHECK(save_graph(a) != save_graph(c));
}

TEST_CASE("diameter on known shapes") {
    auto p5 = WeightedGraph::make(5, {1, 1, 1, 1, 1}, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
    CHECK(diameter(p5) == 4);
    CHECK(diameter(gen_random_connected(6, 1.0, 3, 1)) == 1);
    std::vector<std::pair<NodeId, NodeId>> cyc;
    for (int i = 0; i < 8; ++i) cyc.push_back({i, (i + 1) % 8});
    CHECK(diameter(WeightedGraph::make(8, std::vector<int64_t>(8, 1), cyc)) == 4);
}

TEST_CASE("serialization round-trips and is byte-stable") {
    RandomStream rng(99);
    auto roundtrip = [](const WeightedGraph& g) {
        std::string doc = save_graph(g);
        auto g2 = load_graph(doc);
        CHECK(g2.n == g.n);
        CHECK(g2.weight == g.weight);
        CHECK(g2.edges == g.edges);
        CHECK(save_graph(g2) == doc);
    };
    for (int trial = 0; trial < 25; ++trial) {
        int n = 2 + static_cast<int>(rng.below(30));
        roundtrip(gen_random_connected(n, 0.3, 20, rng.next()));
    }
    roundtrip(gen_cycle_center(7));
    DisjointnessInstance inst;
    inst.universe_size = 4;
    inst.alpha = 3;
    inst.set_x = {1, 4};
    inst.set_y = {2};
    roundtrip(gen_lower_bound(inst, 4, 5));
}

TEST_CASE("lower-bound optimum avoids M nodes whenever X and Y are disjoint") {
    for (int xm = 0; xm < 8; ++xm) {
        for (int ym = 0; ym < 8; ++ym) {
            if (xm & ym) continue;
            DisjointnessInstance inst;
            inst.universe_size = 3;
            inst.alpha = 2;
            for (int i = 0; i < 3; ++i) {
                if (xm & (1 << i)) inst.set_x.insert(i + 1);
                if (ym & (1 << i)) inst.set_y.insert(i + 1);
            }
            auto g = gen_lower_bound(inst, 3, 3);
            int64_t m_weight = inst.alpha * g.n + 1;
            auto r = exact_mcds(g);
            for (NodeId v : r.best_set) CHECK(g.weight[v] < m_weight);
        }
    }
}

TEST_CASE("path (5,1,5) optimum is the middle node") {
    CHECK(exact_mcds(path3(5, 1, 5)).best_cost == 1);
}
