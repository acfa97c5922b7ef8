#include "mcds/graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

#include "json.hpp"
#include "mcds/random.hpp"
#include "mcds/union_find.hpp"

namespace mcds {

namespace {

int64_t pow_capped(int64_t base, int exp) {
    __int128 r = 1;
    for (int i = 0; i < exp; ++i) {
        r *= base;
        if (r > (__int128)INT64_MAX) return INT64_MAX;
    }
    return static_cast<int64_t>(r);
}

}  // namespace

WeightedGraph WeightedGraph::make(int32_t n, std::vector<int64_t> weights,
                                  std::vector<std::pair<NodeId, NodeId>> edges,
                                  int weight_exponent) {
    if (n < 1) throw GraphError("node count must be positive, got " + std::to_string(n));
    if (static_cast<int32_t>(weights.size()) != n)
        throw GraphError("expected " + std::to_string(n) + " weights, got " +
                         std::to_string(weights.size()));

    int64_t bound = pow_capped(n, weight_exponent);
    WeightedGraph g;
    g.n = n;
    g.weight = std::move(weights);
    for (int32_t v = 0; v < n; ++v) {
        if (g.weight[v] < 1 || g.weight[v] > bound)
            throw GraphError("weights[" + std::to_string(v) + "]: weight " +
                             std::to_string(g.weight[v]) + " out of range [1, n^" +
                             std::to_string(weight_exponent) + "=" + std::to_string(bound) + "]");
        g.max_weight = std::max(g.max_weight, g.weight[v]);
    }

    for (size_t i = 0; i < edges.size(); ++i) {
        auto [u, v] = edges[i];
        if (u == v)
            throw GraphError("edges[" + std::to_string(i) + "]: self-loop at node " +
                             std::to_string(u));
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw GraphError("edges[" + std::to_string(i) + "]: endpoint out of range");
        if (u > v) std::swap(u, v);
        edges[i] = {u, v};
    }
    std::sort(edges.begin(), edges.end());
    for (size_t i = 1; i < edges.size(); ++i)
        if (edges[i] == edges[i - 1])
            throw GraphError("edges[" + std::to_string(i) + "]: duplicate edge (" +
                             std::to_string(edges[i].first) + "," +
                             std::to_string(edges[i].second) + ")");
    g.edges = std::move(edges);

    g.adj.assign(n, {});
    for (auto [u, v] : g.edges) {
        g.adj[u].push_back(v);
        g.adj[v].push_back(u);
    }
    for (auto& lst : g.adj) std::sort(lst.begin(), lst.end());

    UnionFind uf(n);
    for (auto [u, v] : g.edges) uf.unite(u, v);
    for (int32_t v = 1; v < n; ++v)
        if (!uf.same(0, v)) throw GraphError("graph is disconnected (node " + std::to_string(v) +
                                             " unreachable from node 0)");
    return g;
}

int64_t WeightedGraph::cost_of(const std::vector<NodeId>& nodes) const {
    int64_t c = 0;
    for (NodeId v : nodes) c += weight[v];
    return c;
}

int64_t WeightedGraph::total_cost() const {
    int64_t c = 0;
    for (int64_t w : weight) c += w;
    return c;
}

WeightedGraph load_graph(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw GraphError(std::string("parse failure: ") + e.what());
    }
    try {
        int32_t n = j.at("n").get<int32_t>();
        std::vector<int64_t> weights = j.at("weights").get<std::vector<int64_t>>();
        std::vector<std::pair<NodeId, NodeId>> edges;
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 2)
                throw GraphError("edges: each entry must be a [u,v] pair");
            edges.emplace_back(e[0].get<NodeId>(), e[1].get<NodeId>());
        }
        return WeightedGraph::make(n, std::move(weights), std::move(edges));
    } catch (const nlohmann::json::exception& e) {
        throw GraphError(std::string("malformed graph document: ") + e.what());
    }
}

std::string save_graph(const WeightedGraph& g) {
    nlohmann::ordered_json j;
    j["n"] = g.n;
    j["weights"] = g.weight;
    auto edges = g.edges;  // already sorted lexicographically with u < v
    nlohmann::ordered_json je = nlohmann::ordered_json::array();
    for (auto [u, v] : edges) je.push_back({u, v});
    j["edges"] = std::move(je);
    return j.dump(2) + "\n";
}

WeightedGraph gen_cycle_center(int k) {
    if (k < 2) throw GraphError("cycle-center requires k >= 2");
    int32_t n = 2 * k + 1;
    int64_t heavy = static_cast<int64_t>(std::ceil(std::sqrt(static_cast<double>(n))));
    while (heavy * heavy < n) ++heavy;
    while ((heavy - 1) * (heavy - 1) >= n) --heavy;

    std::vector<int64_t> w(n);
    std::vector<std::pair<NodeId, NodeId>> edges;
    NodeId center = 2 * k;
    for (int i = 0; i < 2 * k; ++i) {
        w[i] = (i % 2 == 0) ? 1 : heavy;
        edges.emplace_back(i, (i + 1) % (2 * k));
        if (i % 2 == 0) edges.emplace_back(i, center);
    }
    w[center] = n;
    return WeightedGraph::make(n, std::move(w), std::move(edges));
}

WeightedGraph gen_lower_bound(const DisjointnessInstance& inst, int path_count, int path_len) {
    if (path_count < 2 || path_len < 2)
        throw GraphError("inconsistent dimensions: need path_count >= 2 and path_len >= 2");
    if (inst.universe_size != path_count)
        throw GraphError("inconsistent dimensions: universe size " +
                         std::to_string(inst.universe_size) + " != path count " +
                         std::to_string(path_count));
    for (int i : inst.set_x)
        if (i < 1 || i > inst.universe_size) throw GraphError("set X element out of universe");
    for (int i : inst.set_y)
        if (i < 1 || i > inst.universe_size) throw GraphError("set Y element out of universe");

    int p = path_count, L = path_len;
    // Columns padded to a power of two so the column tree is a complete
    // binary tree; padded columns carry a leaf but no path nodes.
    int leaves = 1;
    while (leaves < L) leaves *= 2;
    int tree_nodes = 2 * leaves - 1;  // heap indexed 1..tree_nodes, leaves at [leaves, 2*leaves-1]
    int32_t n = p * L + tree_nodes;
    int64_t M = inst.alpha * n + 1;

    auto path_node = [&](int i, int j) { return (i - 1) * L + (j - 1); };       // i in 1..p, j in 1..L
    auto tree_node = [&](int t) { return p * L + (t - 1); };                    // t in 1..tree_nodes
    auto leaf_of_col = [&](int j) { return tree_node(leaves + j - 1); };        // j in 1..leaves

    std::vector<int64_t> w(n, 1);
    std::vector<std::pair<NodeId, NodeId>> edges;

    for (int i = 1; i <= p; ++i)
        for (int j = 1; j < L; ++j) edges.emplace_back(path_node(i, j), path_node(i, j + 1));
    for (int t = 2; t <= tree_nodes; ++t) edges.emplace_back(tree_node(t), tree_node(t / 2));
    for (int j = 1; j <= L; ++j)
        for (int i = 1; i <= p; ++i) edges.emplace_back(leaf_of_col(j), path_node(i, j));

    // Alice holds the column-1 leaf, Bob the column-L leaf; every other leaf
    // (including padding leaves) is too expensive for any good CDS.
    for (int j = 1; j <= leaves; ++j) w[leaf_of_col(j)] = (j == 1 || j == L) ? 1 : M;
    for (int i = 1; i <= p; ++i) {
        w[path_node(i, 1)] = inst.set_x.count(i) ? M : 1;
        w[path_node(i, L)] = inst.set_y.count(i) ? M : 1;
    }
    return WeightedGraph::make(n, std::move(w), std::move(edges));
}

WeightedGraph gen_random_connected(int n, double edge_prob, int64_t weight_max, uint64_t seed) {
    if (n < 1) throw GraphError("n must be positive");
    if (edge_prob <= 0.0 || edge_prob > 1.0) throw GraphError("edge_prob must be in (0,1]");
    if (weight_max < 1) throw GraphError("weight_max must be positive");

    RandomStream rng(RandomStream::mix(seed, 0x6772617068ULL));
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (edge_prob >= 1.0 || rng.unit() < edge_prob) edges.emplace_back(u, v);

    // Splice disconnected pieces together with uniformly random cross edges.
    UnionFind uf(n);
    for (auto [u, v] : edges) uf.unite(u, v);
    std::vector<NodeId> reps;
    for (int v = 0; v < n; ++v)
        if (uf.find(v) == v) reps.push_back(v);
    while (reps.size() > 1) {
        NodeId u = static_cast<NodeId>(rng.below(n));
        NodeId v = static_cast<NodeId>(rng.below(n));
        if (uf.same(u, v)) continue;
        uf.unite(u, v);
        edges.emplace_back(std::min(u, v), std::max(u, v));
        reps.clear();
        for (int x = 0; x < n; ++x)
            if (uf.find(x) == x) reps.push_back(x);
    }

    std::vector<int64_t> w(n);
    int64_t bound = std::min<int64_t>(weight_max, pow_capped(n, 3));
    if (bound < 1) bound = 1;
    for (int v = 0; v < n; ++v) w[v] = 1 + static_cast<int64_t>(rng.below(bound));
    return WeightedGraph::make(n, std::move(w), std::move(edges));
}

int diameter(const WeightedGraph& g) {
    int diam = 0;
    std::vector<int> dist(g.n);
    for (NodeId s = 0; s < g.n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        std::queue<NodeId> q;
        q.push(s);
        dist[s] = 0;
        while (!q.empty()) {
            NodeId u = q.front();
            q.pop();
            diam = std::max(diam, dist[u]);
            for (NodeId v : g.adj[u])
                if (dist[v] < 0) {
                    dist[v] = dist[u] + 1;
                    q.push(v);
                }
        }
    }
    return diam;
}

bool is_connected_subset(const WeightedGraph& g, const std::vector<char>& member) {
    NodeId start = -1;
    int count = 0;
    for (NodeId v = 0; v < g.n; ++v)
        if (member[v]) {
            if (start < 0) start = v;
            ++count;
        }
    if (count == 0) return false;
    std::vector<char> seen(g.n, 0);
    std::queue<NodeId> q;
    q.push(start);
    seen[start] = 1;
    int reached = 1;
    while (!q.empty()) {
        NodeId u = q.front();
        q.pop();
        for (NodeId v : g.adj[u])
            if (member[v] && !seen[v]) {
                seen[v] = 1;
                ++reached;
                q.push(v);
            }
    }
    return reached == count;
}

}  // namespace mcds
