#include "mcds/cds_phases.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "mcds/dominating_set.hpp"
#include "mcds/oracle.hpp"

namespace mcds {

namespace {

// Message tags, scoped per round (receivers know the current step).
enum PhTag : int {
    kCompStatus = 1,
    kStarSingle = 2,
    kStarAllsat = 3,
    kStarAssign = 4,
    kDegreeReport = 5,
    kMark = 6,
    kProposal = 7,
    kGrant = 8,
    kGrantStatus = 9,
    kCommit = 10,
    kBlueReport = 11,
    kBlueProposal = 12,
    kBlueGrant = 13,
    kBluePartner = 14,
};

using Outboxes = std::vector<std::vector<std::pair<NodeId, BoundedMessage>>>;

size_t adj_index(const WeightedGraph& g, NodeId v, NodeId u) {
    auto it = std::lower_bound(g.adj[v].begin(), g.adj[v].end(), u);
    assert(it != g.adj[v].end() && *it == u);
    return static_cast<size_t>(it - g.adj[v].begin());
}

// Lowest-id non-white neighbor of v lying in component c, per v's view.
NodeId comp_contact(const PhaseState& st, const WeightedGraph& g, NodeId v, int32_t c) {
    for (size_t j = 0; j < g.adj[v].size(); ++j)
        if (st.view[v][j].kind == NbrView::Kind::nonwhite && st.view[v][j].label == c)
            return g.adj[v][j];
    return -1;
}

void check(bool ok, const std::string& what) {
    if (!ok) throw InvariantViolation(what);
}

// Recomputes component labels and satisfaction flags through the charged
// primitives, cross-checks them against a from-scratch recomputation, and
// broadcasts (label, satisfied) so neighbors refresh their views.
void recompute_and_broadcast(PhaseState& st, CongestSim& sim) {
    const WeightedGraph& g = sim.graph();
    auto nonwhite = [&](NodeId v) { return st.is_nonwhite(v); };
    ComponentLabeling lab =
        identify_components(sim, nonwhite, [](NodeId, NodeId) { return true; });
    st.cur_label = lab.label;

    std::vector<std::optional<int64_t>> gray_ind(g.n), fro(g.n), fro_neg(g.n);
    for (NodeId v = 0; v < g.n; ++v) {
        if (!st.is_nonwhite(v)) continue;
        gray_ind[v] = st.is_gray(v) ? 1 : 0;
        if (st.is_green(v)) {
            fro[v] = st.frozen_label[v];
            fro_neg[v] = static_cast<int64_t>(g.n) - st.frozen_label[v];
        }
    }
    auto mx_gray = component_aggregate_max(sim, lab, gray_ind);
    auto mx_fro = component_aggregate_max(sim, lab, fro);
    auto mx_neg = component_aggregate_max(sim, lab, fro_neg);

    st.cur_sat.clear();
    for (NodeId v = 0; v < g.n; ++v) {
        if (!st.is_nonwhite(v)) continue;
        bool has_gray = mx_gray[v] && *mx_gray[v] > 0;
        bool merged = mx_fro[v] && mx_neg[v] &&
                      (*mx_fro[v] != static_cast<int64_t>(g.n) - *mx_neg[v]);
        st.cur_sat[st.cur_label[v]] = has_gray || merged;
    }
    for (NodeId v = 0; v < g.n; ++v) {
        if (!st.is_green(v)) continue;
        bool now = st.cur_sat.at(st.cur_label[v]);
        auto it = st.satisfied.find(st.frozen_label[v]);
        check(it != st.satisfied.end(), "frozen label missing from satisfied map");
        check(now || !it->second, "satisfied flag reverted for component " +
                                      std::to_string(st.frozen_label[v]));
        it->second = now;
    }

    // cross-check the message-path flags against a from-scratch recomputation
    {
        PhaseState ref = st;
        for (auto& [label, sat] : ref.satisfied) sat = false;
        central_recompute_satisfaction(ref);
        check(ref.cur_label == st.cur_label, "component labels disagree with oracle recompute");
        check(ref.satisfied == st.satisfied, "satisfied flags disagree with oracle recompute");
        check(ref.cur_sat == st.cur_sat, "component satisfaction disagrees with oracle recompute");
    }

    Outboxes out(g.n);
    for (NodeId v = 0; v < g.n; ++v) {
        if (!st.is_nonwhite(v)) continue;
        for (NodeId u : g.adj[v])
            out[v].emplace_back(u, BoundedMessage::with_tag(kCompStatus)
                                       .add(st.cur_label[v], sim.id_bits())
                                       .add_bool(st.cur_sat.at(st.cur_label[v])));
    }
    auto inbox = sim.exchange(out);
    for (NodeId v = 0; v < g.n; ++v)
        for (const auto& d : inbox[v]) {
            NbrView& nb = st.view[v][adj_index(g, v, d.from)];
            nb.kind = NbrView::Kind::nonwhite;
            nb.label = static_cast<int32_t>(d.msg.fields[0]);
            nb.sat = d.msg.fields[1] != 0;
        }
}

// ---- local star computation (S2/S3) --------------------------------------

struct LegCand {
    int64_t w = 0;
    NodeId id = -1;
    int32_t label = -1;
};

// Everything a white node can derive about stars centered on itself from the
// star-info round: its own adjacent components, the cheapest eligible leg
// per fresh unsatisfied component, and the cheapest anchor.
struct LocalStarData {
    int64_t c0 = 0;
    int m0 = 0;
    int u0 = 0;
    std::set<int32_t> adj_labels;
    std::vector<int32_t> adj_unsat;
    std::vector<LegCand> fresh;    // sorted by (cost, id), one per component
    std::vector<int64_t> prefix;   // prefix[k] = cost of k cheapest fresh legs
    bool has_anchor = false;
    int64_t anchor_cost = 0;
    NodeId anchor_id = -1;
};

LocalStarData gather_local(const PhaseState& st, const WeightedGraph& g, NodeId v) {
    LocalStarData d;
    d.c0 = g.weight[v];
    const auto& vw = st.view[v];
    std::map<int32_t, bool> comps;
    for (const NbrView& nb : vw)
        if (nb.kind == NbrView::Kind::nonwhite) comps[nb.label] = nb.sat;
    d.m0 = static_cast<int>(comps.size());
    for (auto& [lab, sat] : comps) {
        d.adj_labels.insert(lab);
        if (!sat) {
            d.adj_unsat.push_back(lab);
            ++d.u0;
        }
    }
    std::map<int32_t, LegCand> per_label;
    auto consider_anchor = [&](int64_t w, NodeId id) {
        if (!d.has_anchor || std::make_pair(w, id) < std::make_pair(d.anchor_cost, d.anchor_id)) {
            d.has_anchor = true;
            d.anchor_cost = w;
            d.anchor_id = id;
        }
    };
    for (size_t j = 0; j < vw.size(); ++j) {
        const NbrView& nb = vw[j];
        NodeId u = g.adj[v][j];
        if (nb.kind == NbrView::Kind::white_single) {
            if (d.adj_labels.count(nb.label)) continue;  // adds cost, never coverage
            if (!nb.sat) {
                auto it = per_label.find(nb.label);
                if (it == per_label.end() ||
                    std::make_pair(nb.weight, u) < std::make_pair(it->second.w, it->second.id))
                    per_label[nb.label] = {nb.weight, u, nb.label};
            } else {
                consider_anchor(nb.weight, u);
            }
        } else if (nb.kind == NbrView::Kind::white_allsat) {
            consider_anchor(nb.weight, u);
        }
    }
    for (auto& [lab, cand] : per_label) d.fresh.push_back(cand);
    std::sort(d.fresh.begin(), d.fresh.end(), [](const LegCand& a, const LegCand& b) {
        return std::make_pair(a.w, a.id) < std::make_pair(b.w, b.id);
    });
    d.prefix.assign(d.fresh.size() + 1, 0);
    for (size_t i = 0; i < d.fresh.size(); ++i) d.prefix[i + 1] = d.prefix[i] + d.fresh[i].w;
    return d;
}

// Efficiency of {v} + k cheapest fresh legs (+ anchor): the star covers
// u0 + k unsatisfied components and is useful only when it touches >= 2
// distinct components in total.
std::optional<Rat> shape_value(const LocalStarData& d, int k, bool use_anchor) {
    int64_t covered = d.u0 + k;
    int touched = d.m0 + k + (use_anchor ? 1 : 0);
    if (covered < 1 || touched < 2) return std::nullopt;
    int64_t cost = d.c0 + d.prefix[k] + (use_anchor ? d.anchor_cost : 0);
    return Rat(covered, cost);
}

struct CoreShape {
    int k = 0;
    bool anchor = false;
};

// Max-efficiency basic-star centered here, by the sort-by-cost greedy over
// deduplicated legs. The anchor variant only competes where the plain star
// would touch a single component.
std::optional<Rat> local_best(const LocalStarData& d, CoreShape* shape_out) {
    std::optional<Rat> best;
    for (int k = 0; k <= static_cast<int>(d.fresh.size()); ++k) {
        auto plain = shape_value(d, k, false);
        bool anchored = false;
        if (!plain && d.has_anchor) {
            plain = shape_value(d, k, true);
            anchored = true;
        }
        if (plain && (!best || *best < *plain)) {
            best = *plain;
            if (shape_out) *shape_out = {k, anchored};
        }
    }
    return best;
}

}  // namespace

std::vector<NodeId> cap_proposals(std::vector<NodeId> centers, bool self_sufficient) {
    std::sort(centers.begin(), centers.end());
    if (!self_sufficient && centers.size() > 3) centers.resize(3);
    return centers;
}

// ---- S1 -------------------------------------------------------------------

int64_t s1_identify_and_count(PhaseState& st, CongestSim& sim) {
    const WeightedGraph& g = sim.graph();
    for (auto& views : st.view)
        for (NbrView& nb : views) nb = NbrView{};
    recompute_and_broadcast(st, sim);

    std::vector<char> ind(g.n, 0);
    for (NodeId v = 0; v < g.n; ++v)
        if (st.is_green(v) && st.frozen_label[v] == v && !st.satisfied.at(v)) ind[v] = 1;
    return global_reduce_count(sim, ind);
}

// ---- S2 -------------------------------------------------------------------

S2Result s2_max_efficiency(PhaseState& st, CongestSim& sim) {
    const WeightedGraph& g = sim.graph();
    Outboxes out(g.n);
    for (NodeId v = 0; v < g.n; ++v) {
        if (!st.is_white(v)) continue;
        std::map<int32_t, bool> comps;
        for (const NbrView& nb : st.view[v])
            if (nb.kind == NbrView::Kind::nonwhite) comps[nb.label] = nb.sat;
        int unsat = 0;
        for (auto& [lab, sat] : comps)
            if (!sat) ++unsat;
        if (comps.size() == 1) {
            auto [lab, sat] = *comps.begin();
            for (NodeId u : g.adj[v])
                out[v].emplace_back(u, BoundedMessage::with_tag(kStarSingle)
                                           .add(lab, sim.id_bits())
                                           .add_bool(sat)
                                           .add(v, sim.id_bits())
                                           .add(g.weight[v], sim.weight_bits()));
        } else if (comps.size() >= 2 && unsat == 0) {
            for (NodeId u : g.adj[v])
                out[v].emplace_back(u, BoundedMessage::with_tag(kStarAllsat)
                                           .add(v, sim.id_bits())
                                           .add(g.weight[v], sim.weight_bits()));
        }
        // self-sufficient nodes (>= 2 components, one unsatisfied) stay
        // silent, as do white nodes with no adjacent component at all
    }
    auto inbox = sim.exchange(out);
    for (NodeId v = 0; v < g.n; ++v) {
        if (!st.is_white(v)) continue;
        for (const auto& d : inbox[v]) {
            NbrView& nb = st.view[v][adj_index(g, v, d.from)];
            if (d.msg.tag == kStarSingle) {
                nb.kind = NbrView::Kind::white_single;
                nb.label = static_cast<int32_t>(d.msg.fields[0]);
                nb.sat = d.msg.fields[1] != 0;
                nb.weight = d.msg.fields[3];
            } else if (d.msg.tag == kStarAllsat) {
                nb.kind = NbrView::Kind::white_allsat;
                nb.weight = d.msg.fields[1];
            }
        }
        for (NbrView& nb : st.view[v])
            if (nb.kind == NbrView::Kind::unknown) nb.kind = NbrView::Kind::white_selfsuff;
    }

    S2Result res;
    res.best_local.assign(g.n, std::nullopt);
    std::vector<std::optional<Rat>> vals(g.n);
    for (NodeId v = 0; v < g.n; ++v) {
        if (!st.is_white(v)) continue;
        LocalStarData d = gather_local(st, g, v);
        res.best_local[v] = local_best(d, nullptr);
        vals[v] = res.best_local[v];
    }
    res.rho_star = global_reduce_max_rat(sim, vals);
    return res;
}

// ---- S3 -------------------------------------------------------------------

std::map<NodeId, AugmentedStar> s3_select_augmented(PhaseState& st, const IterationContext& ctx,
                                                    CongestSim& sim) {
    const WeightedGraph& g = sim.graph();
    const Rat& rho = ctx.rho_tilde;
    std::map<NodeId, AugmentedStar> stars;

    for (NodeId v = 0; v < g.n; ++v) {
        if (!st.is_white(v)) continue;
        LocalStarData d = gather_local(st, g, v);
        CoreShape shape;
        auto best = local_best(d, &shape);
        if (!best || *best < rho) continue;

        // shrink the greedy star to a rho~-minimal core: drop the most
        // expensive removable leg until nothing removable is left
        int k = shape.k;
        bool anc = shape.anchor;
        while (true) {
            bool drop_anchor_ok = false, drop_tail_ok = false;
            if (anc) {
                auto val = shape_value(d, k, false);
                drop_anchor_ok = val && rho <= *val;
            }
            if (k >= 1) {
                auto val = shape_value(d, k - 1, anc);
                drop_tail_ok = val && rho <= *val;
            }
            if (drop_anchor_ok && drop_tail_ok) {
                // higher-cost leg goes first, node id breaks ties
                auto a = std::make_pair(d.anchor_cost, d.anchor_id);
                auto t = std::make_pair(d.fresh[k - 1].w, d.fresh[k - 1].id);
                if (a > t) anc = false;
                else --k;
            } else if (drop_anchor_ok) {
                anc = false;
            } else if (drop_tail_ok) {
                --k;
            } else {
                break;
            }
        }
        // minimality per the definition: removing any single leg must break
        // rho~-efficiency (or usefulness)
        for (int j = 0; j < k; ++j) {
            int64_t covered = d.u0 + k - 1;
            int touched = d.m0 + (k - 1) + (anc ? 1 : 0);
            if (covered < 1 || touched < 2) continue;
            Rat val(covered, d.c0 + d.prefix[k] - d.fresh[j].w + (anc ? d.anchor_cost : 0));
            check(val < rho, "core star not minimal: dropping a leg keeps efficiency");
        }
        if (anc) {
            auto val = shape_value(d, k, false);
            check(!val || *val < rho, "core star not minimal: anchor removable");
        }

        AugmentedStar star;
        star.core.center = v;
        std::set<int32_t> comps_x = d.adj_labels;
        std::set<NodeId> members{v};
        for (int j = 0; j < k; ++j) {
            star.core.legs.push_back(d.fresh[j].id);
            star.core.phi.push_back(d.fresh[j].label);
            comps_x.insert(d.fresh[j].label);
            members.insert(d.fresh[j].id);
        }
        if (anc) {
            star.core.legs.push_back(d.anchor_id);
            members.insert(d.anchor_id);
        }
        for (int32_t c : d.adj_unsat) star.core.phi.push_back(c);
        std::sort(star.core.phi.begin(), star.core.phi.end());
        star.core.cost = d.c0 + d.prefix[k] + (anc ? d.anchor_cost : 0);
        star.core.efficiency = Rat(static_cast<int64_t>(star.core.phi.size()), star.core.cost);
        check(rho <= star.core.efficiency, "core star lost rho~-efficiency");

        // good auxiliary legs, cheapest first, re-testing adjacency after
        // every single addition
        std::vector<std::pair<std::pair<int64_t, NodeId>, int32_t>> aux_cands;
        for (size_t j = 0; j < st.view[v].size(); ++j) {
            const NbrView& nb = st.view[v][j];
            NodeId u = g.adj[v][j];
            if (nb.kind != NbrView::Kind::white_single || nb.sat) continue;
            if (members.count(u)) continue;
            if (nb.weight * rho.num > 2 * rho.den) continue;  // Cost(u) <= 2/rho~
            aux_cands.push_back({{nb.weight, u}, nb.label});
        }
        std::sort(aux_cands.begin(), aux_cands.end());
        star.cost = star.core.cost;
        for (auto& [wu, lab] : aux_cands) {
            if (comps_x.count(lab)) continue;  // component already adjacent to the star
            star.aux_legs.push_back(wu.second);
            members.insert(wu.second);
            comps_x.insert(lab);
            star.cost += wu.first;
        }

        star.phi = star.core.phi;
        std::map<int32_t, NodeId> leg_of_comp;
        for (int j = 0; j < k; ++j) leg_of_comp[d.fresh[j].label] = d.fresh[j].id;
        for (NodeId u : star.aux_legs) {
            int32_t lab = st.view[v][adj_index(g, v, u)].label;
            star.phi.push_back(lab);
            leg_of_comp[lab] = u;
        }
        std::sort(star.phi.begin(), star.phi.end());
        for (int32_t c : star.phi) {
            auto it = leg_of_comp.find(c);
            if (it != leg_of_comp.end()) {
                star.responsible[c] = it->second;
            } else {
                check(d.adj_labels.count(c) != 0, "no star node adjacent to component");
                star.responsible[c] = v;
            }
        }

        // the whole augmented star keeps at least half the working efficiency
        std::vector<NodeId> all_legs(star.core.legs);
        all_legs.insert(all_legs.end(), star.aux_legs.begin(), star.aux_legs.end());
        auto sv = evaluate_star(st, v, all_legs);
        check(sv.has_value(), "selected star is useless on recomputation");
        check(sv->phi == star.phi, "star Phi disagrees with direct recomputation");
        check(sv->cost == star.cost, "star cost disagrees with direct recomputation");
        check(rho <= sv->efficiency * Rat(2),
              "augmented star efficiency fell below half the working efficiency");

        stars.emplace(v, std::move(star));
    }
    return stars;
}

// ---- S4 -------------------------------------------------------------------

int64_t s4_active_degrees(PhaseState& st, const std::map<NodeId, AugmentedStar>& stars,
                          CongestSim& sim, std::map<int32_t, int64_t>& degrees_out) {
    const WeightedGraph& g = sim.graph();

    // round A: centers tell members about the star and their responsibility
    Outboxes out(g.n);
    for (const auto& [v, star] : stars) {
        std::map<NodeId, int32_t> resp_of_leg;
        for (const auto& [c, u] : star.responsible)
            if (u != v) {
                check(!resp_of_leg.count(u), "leg responsible for two components in one star");
                resp_of_leg[u] = c;
            }
        for (NodeId u : star.members()) {
            if (u == v) continue;
            auto it = resp_of_leg.find(u);
            bool has = it != resp_of_leg.end();
            out[v].emplace_back(u, BoundedMessage::with_tag(kStarAssign)
                                       .add_bool(has)
                                       .add(has ? it->second : 0, sim.id_bits()));
        }
    }
    sim.exchange(out);

    // round B: every responsible reports its per-component star count to one
    // node of that component
    std::map<NodeId, std::map<int32_t, int64_t>> holder_counts;
    for (const auto& [v, star] : stars)
        for (const auto& [c, u] : star.responsible) holder_counts[u][c] += 1;

    Outboxes out2(g.n);
    for (const auto& [u, counts] : holder_counts)
        for (const auto& [c, cnt] : counts) {
            NodeId contact = comp_contact(st, g, u, c);
            check(contact >= 0, "responsible node has no contact in its component");
            out2[u].emplace_back(contact, BoundedMessage::with_tag(kDegreeReport)
                                              .add(cnt, sim.count_bits()));
        }
    auto inbox = sim.exchange(out2);

    std::vector<int64_t> received(g.n, 0);
    for (NodeId v = 0; v < g.n; ++v)
        for (const auto& d : inbox[v]) received[v] += d.msg.fields[0];
    ComponentLabeling lab;
    lab.label = st.cur_label;
    auto sums = component_aggregate_sum(sim, lab, received);

    degrees_out.clear();
    std::vector<std::optional<int64_t>> for_max(g.n);
    for (NodeId v = 0; v < g.n; ++v) {
        if (!st.is_nonwhite(v)) continue;
        int32_t c = st.cur_label[v];
        if (st.cur_sat.at(c)) continue;
        if (sums[v] > 0) degrees_out[c] = sums[v];
        for_max[v] = sums[v];
    }

    // oracle recount straight from the stars map
    std::map<int32_t, int64_t> recount;
    for (const auto& [v, star] : stars)
        for (int32_t c : star.phi) recount[c] += 1;
    check(recount == degrees_out, "active-degrees disagree with recount from stars");

    auto mx = global_reduce_max(sim, for_max);
    return mx ? *mx : 0;
}

// ---- S5 -------------------------------------------------------------------

ProposalSet s5_mark_and_propose(PhaseState& st, const std::map<NodeId, AugmentedStar>& stars,
                                const IterationContext& ctx, CongestSim& sim) {
    const WeightedGraph& g = sim.graph();
    check(ctx.delta_star >= 1, "marking requires a positive max active-degree");
    ProposalSet ps;
    ps.received_per_node.assign(g.n, {});

    // centers draw the mark and send it to the star members
    Outboxes mark_out(g.n);
    for (const auto& [v, star] : stars) {
        bool marked = sim.stream(v).one_in(static_cast<uint64_t>(5 * ctx.delta_star));
        if (marked) ps.marked_centers.insert(v);
        for (NodeId u : star.members())
            if (u != v)
                mark_out[v].emplace_back(u, BoundedMessage::with_tag(kMark).add_bool(marked));
    }
    sim.exchange(mark_out);

    // responsibles forward proposals of marked stars; a non-self-sufficient
    // holder submits at most 3 per component, lowest center ids first
    std::map<NodeId, std::map<int32_t, std::vector<NodeId>>> pending;
    for (NodeId v : ps.marked_centers) {
        const AugmentedStar& star = stars.at(v);
        for (const auto& [c, u] : star.responsible) pending[u][c].push_back(v);
    }
    Outboxes prop_out(g.n);
    for (auto& [u, per_comp] : pending) {
        bool selfsuff = is_self_sufficient(st, u);
        for (auto& [c, raw] : per_comp) {
            std::vector<NodeId> centers = cap_proposals(raw, selfsuff);
            // a self-sufficient node is only ever in its own star
            check(!selfsuff || centers.size() <= 1,
                  "self-sufficient holder exceeded one proposal per component");
            NodeId contact = comp_contact(st, g, u, c);
            check(contact >= 0, "proposal holder has no contact in target component");
            BoundedMessage m = BoundedMessage::with_tag(kProposal)
                                   .add(static_cast<int64_t>(centers.size()), 2);
            for (NodeId cen : centers) m.add(cen, sim.id_bits());
            prop_out[u].emplace_back(contact, m);
        }
    }
    auto inbox = sim.exchange(prop_out);
    for (NodeId v = 0; v < g.n; ++v) {
        for (const auto& d : inbox[v]) {
            int64_t cnt = d.msg.fields[0];
            for (int64_t i = 0; i < cnt; ++i) {
                NodeId center = static_cast<NodeId>(d.msg.fields[1 + i]);
                ps.received_per_node[v].push_back(center);
                ps.by_comp[st.cur_label[v]].push_back(center);
            }
        }
        std::sort(ps.received_per_node[v].begin(), ps.received_per_node[v].end());
    }
    for (auto& [c, centers] : ps.by_comp) std::sort(centers.begin(), centers.end());
    return ps;
}

// ---- S6 -------------------------------------------------------------------

GrantSet s6_grant(PhaseState& st, const ProposalSet& proposals, CongestSim& sim) {
    const WeightedGraph& g = sim.graph();
    ComponentLabeling lab;
    lab.label = st.cur_label;
    auto topk = component_aggregate_topk(sim, lab, proposals.received_per_node, 3);

    GrantSet grants;
    for (NodeId v = 0; v < g.n; ++v) {
        if (!st.is_nonwhite(v) || topk[v].empty()) continue;
        std::vector<NodeId> ids(topk[v].begin(), topk[v].end());
        grants.by_comp[st.cur_label[v]] = ids;  // already descending
    }

    // components report the granted center ids to adjacent white nodes
    Outboxes out(g.n);
    for (NodeId v = 0; v < g.n; ++v) {
        if (!st.is_nonwhite(v)) continue;
        auto it = grants.by_comp.find(st.cur_label[v]);
        if (it == grants.by_comp.end()) continue;
        BoundedMessage m =
            BoundedMessage::with_tag(kGrant).add(static_cast<int64_t>(it->second.size()), 2);
        for (NodeId id : it->second) m.add(id, sim.id_bits());
        for (NodeId u : g.adj[v]) out[v].emplace_back(u, m);
    }
    sim.exchange(out);
    return grants;
}

// ---- S7 -------------------------------------------------------------------

CommitResult s7_commit(PhaseState& st, const std::map<NodeId, AugmentedStar>& stars,
                       const ProposalSet& proposals, const GrantSet& grants, CongestSim& sim) {
    const WeightedGraph& g = sim.graph();

    auto comp_granted = [&](int32_t c, NodeId center) {
        auto it = grants.by_comp.find(c);
        if (it == grants.by_comp.end()) return false;
        return std::find(it->second.begin(), it->second.end(), center) != it->second.end();
    };

    // responsibles relay the grant outcome back to their centers
    Outboxes status_out(g.n);
    for (NodeId v : proposals.marked_centers) {
        const AugmentedStar& star = stars.at(v);
        for (const auto& [c, u] : star.responsible)
            if (u != v)
                status_out[u].emplace_back(
                    v, BoundedMessage::with_tag(kGrantStatus).add_bool(comp_granted(c, v)));
    }
    sim.exchange(status_out);

    CommitResult res;
    std::set<NodeId> to_gray;
    Outboxes commit_out(g.n);
    for (NodeId v : proposals.marked_centers) {
        const AugmentedStar& star = stars.at(v);
        int64_t submitted = static_cast<int64_t>(star.phi.size());
        int64_t granted = 0;
        for (int32_t c : star.phi)
            if (comp_granted(c, v)) ++granted;
        bool commit = star_commits(granted, submitted);
        for (NodeId u : star.members())
            if (u != v)
                commit_out[v].emplace_back(u, BoundedMessage::with_tag(kCommit).add_bool(commit));
        if (commit) {
            res.committed_centers.push_back(v);
            for (NodeId u : star.members()) to_gray.insert(u);
        }
    }
    sim.exchange(commit_out);

    // adjacent unsatisfied components of every member: all of them must be
    // satisfied once the star goes gray
    std::map<NodeId, std::set<int32_t>> pre_adj_unsat;
    for (NodeId u : to_gray) {
        for (int32_t c : adjacent_components(st, u))
            if (!st.cur_sat.at(c)) pre_adj_unsat[u].insert(c);
    }

    auto sat_before = st.satisfied;
    for (NodeId u : to_gray) {
        check(st.is_white(u), "committed star member is not white");
        st.color[u] = Color::gray;
        res.grayed_cost += g.weight[u];
    }
    recompute_and_broadcast(st, sim);

    for (const auto& [c, sat] : st.satisfied)
        if (sat && !sat_before.at(c)) res.newly_satisfied.insert(c);
    for (const auto& [u, cs] : pre_adj_unsat)
        for (int32_t c : cs)
            check(st.satisfied.at(c),
                  "component adjacent to a committed node left unsatisfied");
    return res;
}

// ---- S8 -------------------------------------------------------------------

CleanupResult s8_cleanup(PhaseState& st, const IterationContext& ctx, CongestSim& sim) {
    const WeightedGraph& g = sim.graph();
    const Rat& rho = ctx.rho_tilde;
    std::vector<char> blue(g.n, 0);
    for (NodeId v = 0; v < g.n; ++v)
        if (st.is_white(v) && g.weight[v] * rho.num <= rho.den) blue[v] = 1;  // c(v) <= 1/rho~

    // round 1: blue nodes report their component adjacency
    Outboxes r1(g.n);
    for (NodeId v = 0; v < g.n; ++v) {
        if (!blue[v]) continue;
        auto comps = adjacent_components(st, v);
        if (comps.empty()) continue;
        bool two_or_more = comps.size() >= 2;
        int32_t lab = two_or_more ? 0 : *comps.begin();
        for (NodeId u : g.adj[v])
            r1[v].emplace_back(u, BoundedMessage::with_tag(kBlueReport)
                                      .add_bool(two_or_more)
                                      .add(lab, sim.id_bits())
                                      .add(v, sim.id_bits()));
    }
    auto r1_inbox = sim.exchange(r1);
    // per node: blue neighbors' reports as (neighbor, two_or_more, label)
    std::vector<std::vector<std::pair<NodeId, std::pair<bool, int32_t>>>> reports(g.n);
    for (NodeId v = 0; v < g.n; ++v)
        for (const auto& d : r1_inbox[v])
            reports[v].push_back({d.from, {d.msg.fields[0] != 0,
                                           static_cast<int32_t>(d.msg.fields[1])}});

    // round 2: proposals to adjacent unsatisfied components
    Outboxes r2(g.n);
    for (NodeId v = 0; v < g.n; ++v) {
        if (!blue[v]) continue;
        auto comps = adjacent_components(st, v);
        for (int32_t c : comps) {
            if (st.cur_sat.at(c)) continue;
            bool direct = false;
            for (int32_t c2 : comps)
                if (c2 != c) direct = true;
            NodeId partner = -1;
            if (!direct) {
                for (const auto& [w, rep] : reports[v]) {
                    if (!blue[w]) continue;
                    if (rep.first || rep.second != c) {
                        partner = w;
                        break;  // reports arrive sorted by id; lowest wins
                    }
                }
                if (partner < 0) continue;  // nothing to offer this component
            }
            NodeId contact = comp_contact(st, g, v, c);
            check(contact >= 0, "blue proposer has no contact in its component");
            r2[v].emplace_back(contact, BoundedMessage::with_tag(kBlueProposal)
                                            .add(v, sim.id_bits())
                                            .add_bool(partner >= 0)
                                            .add(partner >= 0 ? partner : 0, sim.id_bits()));
        }
    }
    auto r2_inbox = sim.exchange(r2);

    // each unsatisfied component grants the proposal with the largest
    // proposer id; encode (u, partner) so the max picks it up whole
    std::vector<std::optional<int64_t>> encoded(g.n);
    int64_t base = static_cast<int64_t>(g.n) + 1;
    for (NodeId v = 0; v < g.n; ++v) {
        for (const auto& d : r2_inbox[v]) {
            NodeId u = static_cast<NodeId>(d.msg.fields[0]);
            NodeId w = d.msg.fields[1] ? static_cast<NodeId>(d.msg.fields[2]) : -1;
            int64_t enc = static_cast<int64_t>(u) * base + (w + 1);
            if (!encoded[v] || enc > *encoded[v]) encoded[v] = enc;
        }
    }
    ComponentLabeling lab;
    lab.label = st.cur_label;
    auto granted = component_aggregate_max(sim, lab, encoded);

    std::map<int32_t, std::pair<NodeId, NodeId>> grant_of_comp;  // comp -> (u, w or -1)
    for (NodeId v = 0; v < g.n; ++v) {
        if (!st.is_nonwhite(v) || !granted[v]) continue;
        int32_t c = st.cur_label[v];
        if (st.cur_sat.at(c)) continue;
        NodeId u = static_cast<NodeId>(*granted[v] / base);
        NodeId w = static_cast<NodeId>(*granted[v] % base) - 1;
        grant_of_comp[c] = {u, w};
    }

    // grant broadcast to adjacent white nodes
    Outboxes r3(g.n);
    for (NodeId v = 0; v < g.n; ++v) {
        if (!st.is_nonwhite(v)) continue;
        auto it = grant_of_comp.find(st.cur_label[v]);
        if (it == grant_of_comp.end()) continue;
        for (NodeId u : g.adj[v])
            r3[v].emplace_back(u, BoundedMessage::with_tag(kBlueGrant)
                                      .add(it->second.first, sim.id_bits())
                                      .add_bool(it->second.second >= 0)
                                      .add(std::max<NodeId>(it->second.second, 0), sim.id_bits()));
    }
    sim.exchange(r3);

    // granted nodes inform their partners, then everything granted grays
    CleanupResult res;
    std::set<NodeId> to_gray;
    Outboxes r4(g.n);
    for (const auto& [c, uw] : grant_of_comp) {
        to_gray.insert(uw.first);
        if (uw.second >= 0) {
            to_gray.insert(uw.second);
            r4[uw.first].emplace_back(uw.second, BoundedMessage::with_tag(kBluePartner));
        }
    }
    sim.exchange(r4);

    auto sat_before = st.satisfied;
    for (NodeId u : to_gray) {
        check(st.is_white(u) && blue[u], "cleanup grayed a non-blue node");
        st.color[u] = Color::gray;
        res.grayed_cost += g.weight[u];
    }
    recompute_and_broadcast(st, sim);
    for (const auto& [c, sat] : st.satisfied)
        if (sat && !sat_before.at(c)) res.newly_satisfied.insert(c);

    // cleanup completeness: nothing blue-satisfiable may remain
    auto left = blue_satisfiable_components(g, st, Rat(rho.den, rho.num));
    check(left.empty(), "a component satisfiable with only blue nodes survived cleanup");
    return res;
}

// ---- phase loop -----------------------------------------------------------

void run_phase(PhaseState& st, CongestSim& sim, PhaseTrace& trace) {
    const WeightedGraph& g = sim.graph();
    const int32_t N = st.num_frozen;
    trace.n_frozen = N;
    if (N <= 1) return;  // already connected, nothing to satisfy
    const int64_t half = (N + 1) / 2;  // phase runs while unsat >= ceil(N/2)

    double lg = std::log2(static_cast<double>(g.n) + 1.0) + 1.0;
    const int64_t iter_cap = 200 + static_cast<int64_t>(200.0 * lg * lg * lg);

    std::optional<Rat> prev_rho_tilde;
    std::map<int32_t, int64_t> prev_degrees;
    int iter = 0;
    int64_t unsat = 0;

    while (true) {
        ++iter;
        if (iter > iter_cap)
            throw RoundLimitError("phase iteration cap exceeded (" + std::to_string(iter_cap) +
                                  ")");
        unsat = s1_identify_and_count(st, sim);
        if (unsat < half) break;

        S2Result s2 = s2_max_efficiency(st, sim);
        if (!s2.rho_star)
            throw InvariantViolation(
                "no useful basic-star exists while half the components are unsatisfied\n"
                "(the efficiency lower bound guarantees one): " +
                std::to_string(unsat) + " of " + std::to_string(N) + " components unsatisfied");

        IterationContext ctx;
        ctx.rho_star = *s2.rho_star;
        ctx.rho_tilde = floor_pow2(*s2.rho_star);
        ctx.iteration_index = iter;

        auto stars = s3_select_augmented(st, ctx, sim);
        check(!stars.empty(), "rho* defined but no star selected");

        IterationTrace it;
        it.phase = trace.phase;
        it.iteration = iter;
        it.rho_star = ctx.rho_star;
        it.rho_tilde = ctx.rho_tilde;
        it.unsatisfied_count = unsat;

        ctx.delta_star = s4_active_degrees(st, stars, sim, it.per_component_active_degree);
        check(ctx.delta_star >= 1, "no active star degree despite selected stars");

        // active-degrees per component never increase across iterations that
        // share the working efficiency
        if (prev_rho_tilde && *prev_rho_tilde == ctx.rho_tilde) {
            for (const auto& [c, deg] : it.per_component_active_degree) {
                auto it2 = prev_degrees.find(c);
                int64_t before = it2 == prev_degrees.end() ? 0 : it2->second;
                check(deg <= before, "active-degree of component " + std::to_string(c) +
                                         " grew from " + std::to_string(before) + " to " +
                                         std::to_string(deg) + " at equal rho~");
            }
        }
        prev_rho_tilde = ctx.rho_tilde;
        prev_degrees = it.per_component_active_degree;

        auto proposals = s5_mark_and_propose(st, stars, ctx, sim);
        auto grants = s6_grant(st, proposals, sim);
        auto commit = s7_commit(st, stars, proposals, grants, sim);

        // newly satisfied vs grayed in S7 stays within the 18x slack of the
        // working efficiency (three 1/3- and 3-way factors from the analysis)
        if (commit.grayed_cost > 0) {
            int64_t newly = static_cast<int64_t>(commit.newly_satisfied.size());
            check(18 * newly * ctx.rho_tilde.den >= ctx.rho_tilde.num * commit.grayed_cost,
                  "commit efficiency below rho~/18");
        }

        auto cleanup = s8_cleanup(st, ctx, sim);

        it.delta_star = ctx.delta_star;
        it.stars_selected = static_cast<int64_t>(stars.size());
        it.grayed_cost = commit.grayed_cost + cleanup.grayed_cost;
        it.grayed_cost_s7 = commit.grayed_cost;
        it.newly_satisfied_s7 = static_cast<int64_t>(commit.newly_satisfied.size());
        it.newly_satisfied = commit.newly_satisfied;
        it.newly_satisfied.insert(cleanup.newly_satisfied.begin(), cleanup.newly_satisfied.end());
        trace.gray_cost += it.grayed_cost;
        trace.iterations.push_back(std::move(it));
        sim.metrics().iterations += 1;
    }

    trace.unsat_at_end = unsat;
    std::set<int32_t> comps;
    for (NodeId v = 0; v < g.n; ++v)
        if (st.is_nonwhite(v)) comps.insert(st.cur_label[v]);
    trace.components_after = static_cast<int64_t>(comps.size());
    check(trace.components_after <= (3 * static_cast<int64_t>(N) + 3) / 4,
          "phase ended with " + std::to_string(trace.components_after) +
          " components, above ceil(3N/4) for N=" + std::to_string(N));
}

// ---- full run ---------------------------------------------------------------

McdsResult run_mcds(const WeightedGraph& g, const RunConfig& cfg) {
    CongestSim sim(g, cfg);
    auto ds = compute_dominating_set(sim);
    check(dominates(g, ds.members), "stage-1 output does not dominate");

    std::vector<char> green(g.n, 0);
    for (NodeId v : ds.members) green[v] = 1;
    std::vector<char> none(g.n, 0);

    McdsResult res;
    int phase_idx = 0;
    while (true) {
        // phase start: identify G[S] components and learn N
        PhaseState st = make_phase_state(g, green, none);
        sim.charge(PrimitiveKind::component_identify);
        std::vector<char> leader(g.n, 0);
        for (NodeId v = 0; v < g.n; ++v)
            if (st.is_green(v) && st.frozen_label[v] == v) leader[v] = 1;
        int64_t n_comps = global_reduce_count(sim, leader);
        check(n_comps == st.num_frozen, "component count mismatch at phase start");
        if (n_comps <= 1) break;

        ++phase_idx;
        if (phase_idx > 3 * static_cast<int>(std::log2(g.n + 1)) + 10)
            throw RoundLimitError("phase count exceeded the O(log n) budget");
        PhaseTrace pt;
        pt.phase = phase_idx;
        run_phase(st, sim, pt);
        sim.metrics().phases += 1;
        res.trace.phases.push_back(std::move(pt));

        for (NodeId v = 0; v < g.n; ++v)
            if (st.is_gray(v)) green[v] = 1;
    }

    for (NodeId v = 0; v < g.n; ++v)
        if (green[v]) res.cds.push_back(v);
    check(is_cds(g, res.cds), "output is not a connected dominating set");
    sim.metrics().output_cost = g.cost_of(res.cds);
    res.metrics = sim.metrics();
    res.max_message_bits = sim.max_message_bits();
    res.b_bits = sim.b_bits();
    return res;
}

}  // namespace mcds
