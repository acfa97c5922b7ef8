#ifndef MCDS_PHASE_STATE_HPP
#define MCDS_PHASE_STATE_HPP

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "mcds/graph.hpp"
#include "mcds/rational.hpp"

namespace mcds {

enum class Color : uint8_t { green, white, gray };

// What a node has learned about one neighbor from this iteration's message
// rounds. Silence is informative: a white neighbor that sent nothing in the
// star-info round is self-sufficient.
struct NbrView {
    enum class Kind : uint8_t { unknown, nonwhite, white_single, white_allsat, white_selfsuff };
    Kind kind = Kind::unknown;
    int32_t label = -1;  // nonwhite: current component; white_single: its only component
    bool sat = false;
    int64_t weight = 0;
};

// Mutable world state of one connection phase. Green nodes are the members
// of S at phase start, gray nodes joined during the phase, colors only move
// white -> gray. The frozen components (labels of G[green] at phase start)
// never change within the phase; satisfaction is tracked per frozen label.
struct PhaseState {
    const WeightedGraph* g = nullptr;
    std::vector<Color> color;
    std::vector<int32_t> frozen_label;      // -1 unless green
    std::vector<int32_t> cur_label;         // label in G[non-white]; -1 for white
    std::map<int32_t, bool> satisfied;      // frozen label -> satisfied
    std::map<int32_t, bool> cur_sat;        // current label -> contains gray or merged
    int32_t num_frozen = 0;                 // N = |F|

    std::vector<std::vector<NbrView>> view;  // per node, aligned with g->adj[v]

    bool is_white(NodeId v) const { return color[v] == Color::white; }
    bool is_green(NodeId v) const { return color[v] == Color::green; }
    bool is_gray(NodeId v) const { return color[v] == Color::gray; }
    bool is_nonwhite(NodeId v) const { return color[v] != Color::white; }

    int64_t unsatisfied_count() const;
};

// Builds a consistent state from a green set and a gray set: frozen labels
// from G[green], current labels from G[green+gray], satisfaction derived.
// Central construction; round charging is the caller's business.
PhaseState make_phase_state(const WeightedGraph& g, const std::vector<char>& green,
                            const std::vector<char>& gray);

// Recomputes cur_label / cur_sat / satisfied from colors alone. A frozen
// component is satisfied iff its current component contains a gray node or
// a node of a different frozen component.
void central_recompute_satisfaction(PhaseState& st);

// Current component labels adjacent to v (through non-white neighbors),
// read straight from the state. This is the ground-truth view that message
// rounds are checked against.
std::set<int32_t> adjacent_components(const PhaseState& st, NodeId v);

// White node adjacent to two or more components, at least one unsatisfied.
bool is_self_sufficient(const PhaseState& st, NodeId v);

// Efficiency of the star {center} + legs per the star definitions: Phi is
// the set of adjacent unsatisfied components, counted only when the star
// touches at least two distinct components. nullopt when the star is useless.
struct StarValue {
    std::vector<int32_t> phi;
    int64_t cost = 0;
    Rat efficiency;
};
std::optional<StarValue> evaluate_star(const PhaseState& st, NodeId center,
                                       const std::vector<NodeId>& legs);

// A basic-star: the center plus non-self-sufficient white legs.
struct BasicStar {
    NodeId center = -1;
    std::vector<NodeId> legs;
    std::vector<int32_t> phi;
    int64_t cost = 0;
    Rat efficiency;
};

// A rho~-augmented basic-star: a minimal core plus good auxiliary legs, with
// one responsible node per satisfiable component.
struct AugmentedStar {
    BasicStar core;
    std::vector<NodeId> aux_legs;             // in addition order
    std::vector<int32_t> phi;                 // unsat labels adjacent to the full star
    int64_t cost = 0;
    std::map<int32_t, NodeId> responsible;    // comp label -> member node

    std::vector<NodeId> members() const {
        std::vector<NodeId> m;
        m.push_back(core.center);
        m.insert(m.end(), core.legs.begin(), core.legs.end());
        m.insert(m.end(), aux_legs.begin(), aux_legs.end());
        return m;
    }
};

struct IterationContext {
    Rat rho_star;
    Rat rho_tilde;
    int64_t delta_star = 0;
    int iteration_index = 0;
};

}  // namespace mcds

#endif
