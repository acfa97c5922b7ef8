#include "mcds/runtime.hpp"

#include <algorithm>
#include <cmath>

namespace mcds {

namespace {

int ceil_log2(int64_t x) {
    int b = 0;
    int64_t v = 1;
    while (v < x) {
        v *= 2;
        ++b;
    }
    return b;
}

}  // namespace

int log_star(int64_t n) {
    int s = 0;
    double x = static_cast<double>(n);
    while (x > 1.0) {
        x = std::log2(x);
        ++s;
    }
    return s;
}

void charge_rounds(RunMetrics& metrics, PrimitiveKind kind, const WeightedGraph& g,
                   int diameter_hint, int c1) {
    int d = diameter_hint >= 0 ? diameter_hint : diameter(g);
    int64_t charge;
    if (kind == PrimitiveKind::global_reduce) {
        charge = static_cast<int64_t>(c1) * d;
    } else {
        int64_t sqrt_n = static_cast<int64_t>(std::ceil(std::sqrt(static_cast<double>(g.n))));
        while (sqrt_n * sqrt_n < g.n) ++sqrt_n;
        while (sqrt_n > 1 && (sqrt_n - 1) * (sqrt_n - 1) >= g.n) --sqrt_n;
        charge = static_cast<int64_t>(c1) * (d + sqrt_n * log_star(g.n));
    }
    metrics.charged_rounds += charge;
}

CongestSim::CongestSim(const WeightedGraph& g, RunConfig cfg) : g_(&g), cfg_(cfg) {
    diameter_ = mcds::diameter(g);
    id_bits_ = ceil_log2(g.n);
    weight_bits_ = ceil_log2(g.max_weight + 1);
    count_bits_ = ceil_log2(static_cast<int64_t>(g.n) + 1);
    b_bits_ = cfg_.b_bits > 0 ? cfg_.b_bits : 8 * ceil_log2(static_cast<int64_t>(g.n) + 1);
    int needed = 2 * id_bits_ + weight_bits_ + 4;
    if (b_bits_ < needed)
        throw BudgetError("configured budget B=" + std::to_string(b_bits_) +
                          " bits cannot encode two ids, a weight and a tag (needs " +
                          std::to_string(needed) + ")");
    streams_.reserve(g.n);
    for (NodeId v = 0; v < g.n; ++v)
        streams_.emplace_back(RandomStream::mix(cfg_.seed, static_cast<uint64_t>(v)));
}

std::vector<std::vector<Delivery>> CongestSim::exchange(
    const std::vector<std::vector<std::pair<NodeId, BoundedMessage>>>& outboxes) {
    const WeightedGraph& g = *g_;
    if (metrics_.raw_rounds >= cfg_.round_limit)
        throw RoundLimitError("round limit " + std::to_string(cfg_.round_limit) + " exceeded");
    int64_t round = metrics_.raw_rounds;
    std::vector<std::vector<Delivery>> inboxes(g.n);
    for (NodeId from = 0; from < g.n; ++from) {
        std::vector<char> used(g.adj[from].size(), 0);
        for (const auto& [to, msg] : outboxes[from]) {
            auto it = std::lower_bound(g.adj[from].begin(), g.adj[from].end(), to);
            if (it == g.adj[from].end() || *it != to)
                throw SimError("node " + std::to_string(from) + " sent to non-neighbor " +
                               std::to_string(to) + " in round " + std::to_string(round));
            size_t slot = static_cast<size_t>(it - g.adj[from].begin());
            if (used[slot])
                throw SimError("node " + std::to_string(from) + " sent two messages on edge (" +
                               std::to_string(from) + "," + std::to_string(to) + ") in round " +
                               std::to_string(round));
            used[slot] = 1;
            if (msg.bit_size < 1)
                throw SimError("node " + std::to_string(from) +
                               " sent an empty (0-bit) message in round " + std::to_string(round));
            if (msg.bit_size > b_bits_)
                throw BudgetError("budget violation: node " + std::to_string(from) + " sent " +
                                  std::to_string(msg.bit_size) + " bits > B=" +
                                  std::to_string(b_bits_) + " on edge (" + std::to_string(from) +
                                  "," + std::to_string(to) + ") in round " + std::to_string(round));
            metrics_.bits_sent += msg.bit_size;
            max_message_bits_ = std::max(max_message_bits_, msg.bit_size);
            inboxes[to].push_back({from, msg});
        }
    }
    for (auto& box : inboxes)
        std::stable_sort(box.begin(), box.end(),
                         [](const Delivery& a, const Delivery& b) { return a.from < b.from; });
    metrics_.raw_rounds += 1;
    metrics_.charged_rounds += 1;
    return inboxes;
}

}  // namespace mcds
