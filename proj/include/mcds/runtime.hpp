#ifndef MCDS_RUNTIME_HPP
#define MCDS_RUNTIME_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mcds/graph.hpp"
#include "mcds/random.hpp"

namespace mcds {

struct SimError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BudgetError : SimError {
    using SimError::SimError;
};
struct RoundLimitError : SimError {
    using SimError::SimError;
};

struct RunConfig {
    int b_bits = 0;  // 0 means the default 8*ceil(log2(n+1))
    uint64_t seed = 0;
    enum class Mode { strict, charged } mode = Mode::charged;
    int64_t round_limit = 10'000'000;
};

struct RunMetrics {
    int64_t raw_rounds = 0;
    int64_t charged_rounds = 0;
    int64_t bits_sent = 0;
    int64_t phases = 0;
    int64_t iterations = 0;
    int64_t output_cost = 0;
};

// A message with a declared on-wire size. Field widths follow the encoding
// rules: node/component ids ceil(log2 n) bits, weights ceil(log2(maxw+1)),
// tags 4 bits, booleans 1 bit. The engine rejects any message wider than B.
struct BoundedMessage {
    int tag = -1;  // < 0: no tag on the wire
    std::vector<int64_t> fields;
    int bit_size = 0;

    static BoundedMessage with_tag(int t) {
        BoundedMessage m;
        m.tag = t;
        m.bit_size = 4;
        return m;
    }
    BoundedMessage& add(int64_t value, int bits) {
        fields.push_back(value);
        bit_size += bits;
        return *this;
    }
    BoundedMessage& add_bool(bool value) { return add(value ? 1 : 0, 1); }
};

struct Delivery {
    NodeId from;
    BoundedMessage msg;
};

// Base-2 iterated logarithm, log*(1) = 0.
int log_star(int64_t n);

enum class PrimitiveKind { component_identify, component_aggregate, global_reduce };

// Adds the documented Thurimella-style round charge for one black-box
// primitive call: C1*(D + ceil(sqrt(n))*log*(n)) for component primitives,
// C1*D for a global broadcast/reduce. C1 defaults to 4.
void charge_rounds(RunMetrics& metrics, PrimitiveKind kind, const WeightedGraph& g,
                   int diameter_hint = -1, int c1 = 4);

// Synchronous round engine. One B-bit message per directed edge per round,
// full bit accounting, one deterministic random stream per node.
class CongestSim {
public:
    CongestSim(const WeightedGraph& g, RunConfig cfg);

    const WeightedGraph& graph() const { return *g_; }
    const RunConfig& config() const { return cfg_; }
    RunMetrics& metrics() { return metrics_; }
    const RunMetrics& metrics() const { return metrics_; }
    int diameter() const { return diameter_; }
    int b_bits() const { return b_bits_; }

    int id_bits() const { return id_bits_; }
    int weight_bits() const { return weight_bits_; }
    int count_bits() const { return count_bits_; }
    int max_message_bits() const { return max_message_bits_; }

    RandomStream& stream(NodeId v) { return streams_[v]; }

    // One synchronous round: outboxes[v] holds (neighbor, message) pairs,
    // at most one per incident edge. Returns per-node inboxes sorted by
    // sender id. Throws BudgetError on an oversized message.
    std::vector<std::vector<Delivery>> exchange(
        const std::vector<std::vector<std::pair<NodeId, BoundedMessage>>>& outboxes);

    void charge(PrimitiveKind kind) { charge_rounds(metrics_, kind, *g_, diameter_); }

private:
    const WeightedGraph* g_;
    RunConfig cfg_;
    RunMetrics metrics_;
    std::vector<RandomStream> streams_;
    int diameter_;
    int b_bits_;
    int id_bits_;
    int weight_bits_;
    int count_bits_;
    int max_message_bits_ = 0;
};

// Node-program interface for run_protocol. A program sees only its own
// identity, weight, adjacency list and random stream.
struct NodeEnv {
    NodeId id;
    int64_t weight;
    const std::vector<NodeId>* neighbors;
    RandomStream* rng;
};

struct StepResult {
    std::vector<std::pair<NodeId, BoundedMessage>> outbox;
    bool halt = false;
};

// Runs a deterministic node program in lock-step rounds until every node has
// halted (or the round limit trips). State must be default-constructible;
// per-node outputs are read from the final states by the caller.
template <class State, class Init, class Step>
std::vector<State> run_protocol(CongestSim& sim, Init init, Step step) {
    const WeightedGraph& g = sim.graph();
    std::vector<State> states(g.n);
    std::vector<char> halted(g.n, 0);
    for (NodeId v = 0; v < g.n; ++v) {
        NodeEnv env{v, g.weight[v], &g.adj[v], &sim.stream(v)};
        init(env, states[v]);
    }
    std::vector<std::vector<Delivery>> inboxes(g.n);
    int64_t rounds = 0;
    while (true) {
        bool all_halted = true;
        for (NodeId v = 0; v < g.n; ++v)
            if (!halted[v]) all_halted = false;
        if (all_halted) break;
        if (rounds >= sim.config().round_limit)
            throw RoundLimitError("round limit " + std::to_string(sim.config().round_limit) +
                                  " exceeded in run_protocol");
        std::vector<std::vector<std::pair<NodeId, BoundedMessage>>> outboxes(g.n);
        for (NodeId v = 0; v < g.n; ++v) {
            if (halted[v]) continue;
            NodeEnv env{v, g.weight[v], &g.adj[v], &sim.stream(v)};
            StepResult r = step(env, states[v], inboxes[v]);
            outboxes[v] = std::move(r.outbox);
            if (r.halt) halted[v] = 1;
        }
        inboxes = sim.exchange(outboxes);
        ++rounds;
    }
    return states;
}

}  // namespace mcds

#endif
