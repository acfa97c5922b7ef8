#ifndef MCDS_CDS_PHASES_HPP
#define MCDS_CDS_PHASES_HPP

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "mcds/aggregation.hpp"
#include "mcds/phase_state.hpp"
#include "mcds/runtime.hpp"

namespace mcds {

// A lemma-level invariant failed mid-run. Always a bug, never an input error.
struct InvariantViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IterationTrace {
    int phase = 0;
    int iteration = 0;  // 1-based within the phase
    Rat rho_star;
    Rat rho_tilde;
    int64_t delta_star = 0;
    int64_t unsatisfied_count = 0;  // measured at S1
    int64_t grayed_cost = 0;        // added in S7 + S8
    std::map<int32_t, int64_t> per_component_active_degree;

    // instrumentation extras, kept in memory for the test suites
    std::set<int32_t> newly_satisfied;
    int64_t grayed_cost_s7 = 0;
    int64_t newly_satisfied_s7 = 0;
    int64_t stars_selected = 0;
};

struct PhaseTrace {
    int phase = 0;
    int32_t n_frozen = 0;           // N at phase start
    int64_t unsat_at_end = 0;
    int64_t components_after = 0;   // components of G[green+gray] at phase end
    int64_t gray_cost = 0;
    std::vector<IterationTrace> iterations;
};

struct RunTrace {
    std::vector<PhaseTrace> phases;
};

struct McdsResult {
    std::vector<NodeId> cds;
    RunMetrics metrics;
    RunTrace trace;
    int max_message_bits = 0;  // widest message sent, for budget audits
    int b_bits = 0;
};

struct S2Result {
    std::optional<Rat> rho_star;
    std::vector<std::optional<Rat>> best_local;  // per node, whites only
};

struct ProposalSet {
    std::set<NodeId> marked_centers;
    std::map<int32_t, std::vector<NodeId>> by_comp;        // delivered proposals
    std::vector<std::vector<int64_t>> received_per_node;   // aggregate input
};

struct GrantSet {
    std::map<int32_t, std::vector<NodeId>> by_comp;  // <= 3 center ids, descending
};

struct CommitResult {
    std::vector<NodeId> committed_centers;
    int64_t grayed_cost = 0;
    std::set<int32_t> newly_satisfied;
};

struct CleanupResult {
    int64_t grayed_cost = 0;
    std::set<int32_t> newly_satisfied;
};

// A holder that is not self-sufficient submits at most 3 proposals to its
// single unsatisfied component, keeping the lowest center ids.
std::vector<NodeId> cap_proposals(std::vector<NodeId> centers, bool self_sufficient);

// A marked star turns gray when at least a third of its proposals were
// granted, compared exactly.
inline bool star_commits(int64_t granted, int64_t submitted) {
    return 3 * granted >= submitted && submitted > 0;
}

// S1: component identification of non-white nodes, satisfaction flags, a
// status broadcast to neighbors, and the global unsatisfied count.
int64_t s1_identify_and_count(PhaseState& st, CongestSim& sim);

// S2: the star-info message round plus each white node's local best
// basic-star efficiency; the global maximum rho* via reduce.
S2Result s2_max_efficiency(PhaseState& st, CongestSim& sim);

// S3: one rho~-augmented basic-star per qualifying white node: a minimal
// rho~-efficient core grown by all good auxiliary legs, with responsibles.
std::map<NodeId, AugmentedStar> s3_select_augmented(PhaseState& st, const IterationContext& ctx,
                                                    CongestSim& sim);

// S4: per-component count of active stars; returns the global maximum
// active-degree and fills the per-component map.
int64_t s4_active_degrees(PhaseState& st, const std::map<NodeId, AugmentedStar>& stars,
                          CongestSim& sim, std::map<int32_t, int64_t>& degrees_out);

// S5: mark stars with probability 1/(5*delta_star), deliver proposals
// through responsibles (at most 3 per non-self-sufficient holder).
ProposalSet s5_mark_and_propose(PhaseState& st, const std::map<NodeId, AugmentedStar>& stars,
                                const IterationContext& ctx, CongestSim& sim);

// S6: every component grants the <= 3 proposals with the largest center ids.
GrantSet s6_grant(PhaseState& st, const ProposalSet& proposals, CongestSim& sim);

// S7: a marked star whose granted proposals reach a third of its submissions
// turns gray; satisfaction flags are recomputed and rebroadcast.
CommitResult s7_commit(PhaseState& st, const std::map<NodeId, AugmentedStar>& stars,
                       const ProposalSet& proposals, const GrantSet& grants, CongestSim& sim);

// S8: the blue cleanup that satisfies every component reachable through
// nodes of cost <= 1/rho~, so no new cheap stars appear later.
CleanupResult s8_cleanup(PhaseState& st, const IterationContext& ctx, CongestSim& sim);

// One phase: iterate S1..S8 until fewer than ceil(N/2) frozen components
// remain unsatisfied. Checks the 3N/4 component reduction on exit.
void run_phase(PhaseState& st, CongestSim& sim, PhaseTrace& trace);

// Dominating set stage followed by connection phases until G[S] is one
// component. The output is verified to be a connected dominating set.
McdsResult run_mcds(const WeightedGraph& g, const RunConfig& cfg);

}  // namespace mcds

#endif
