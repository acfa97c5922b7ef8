#include "mcds/harness.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "mcds/oracle.hpp"

namespace mcds {

ExperimentReport run_experiment(const WeightedGraph& g, const std::string& descriptor,
                                RunConfig cfg, bool with_oracle, RunTrace* trace_out) {
    ExperimentReport rep;
    rep.instance = descriptor;
    rep.seed = cfg.seed;
    try {
        McdsResult res = run_mcds(g, cfg);
        rep.metrics = res.metrics;
        rep.cds_cost = res.metrics.output_cost;
        if (trace_out) *trace_out = std::move(res.trace);
        if (with_oracle) {
            OracleResult opt = exact_mcds(g);
            rep.oracle_cost = opt.best_cost;
            rep.ratio = static_cast<double>(rep.cds_cost) / static_cast<double>(opt.best_cost);
        }
    } catch (const std::exception& e) {
        rep.violations.push_back(e.what());
    }
    return rep;
}

std::string metrics_to_json(const RunMetrics& m) {
    nlohmann::ordered_json j;
    j["raw_rounds"] = m.raw_rounds;
    j["charged_rounds"] = m.charged_rounds;
    j["bits_sent"] = m.bits_sent;
    j["phases"] = m.phases;
    j["iterations"] = m.iterations;
    j["output_cost"] = m.output_cost;
    return j.dump();
}

static nlohmann::ordered_json metrics_json(const RunMetrics& m) {
    return nlohmann::ordered_json::parse(metrics_to_json(m));
}

std::string report_to_json(const ExperimentReport& r) {
    nlohmann::ordered_json j;
    j["instance"] = r.instance;
    j["seed"] = r.seed;
    j["metrics"] = metrics_json(r.metrics);
    j["cds_cost"] = r.cds_cost;
    if (r.oracle_cost) j["oracle_cost"] = *r.oracle_cost;
    else j["oracle_cost"] = nullptr;
    if (r.ratio) j["ratio"] = *r.ratio;
    else j["ratio"] = nullptr;
    j["violations"] = r.violations;
    return j.dump(2) + "\n";
}

std::string trace_to_json(const RunTrace& t) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const PhaseTrace& pt : t.phases)
        for (const IterationTrace& it : pt.iterations) {
            nlohmann::ordered_json j;
            j["phase"] = it.phase;
            j["iteration"] = it.iteration;
            j["rho_star"] = {{"num", it.rho_star.num}, {"den", it.rho_star.den}};
            j["rho_tilde"] = {{"num", it.rho_tilde.num}, {"den", it.rho_tilde.den}};
            j["delta_star"] = it.delta_star;
            j["unsatisfied_count"] = it.unsatisfied_count;
            j["grayed_cost"] = it.grayed_cost;
            nlohmann::ordered_json deg = nlohmann::ordered_json::object();
            for (const auto& [c, d] : it.per_component_active_degree)
                deg[std::to_string(c)] = d;
            j["per_component_active_degree"] = std::move(deg);
            arr.push_back(std::move(j));
        }
    return arr.dump(2) + "\n";
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, int threads) {
    struct Job {
        int n;
        uint64_t seed;
        double p;
        int64_t wmax;
    };
    std::vector<Job> jobs;
    for (int n : spec.ns) {
        double p = spec.edge_prob > 0.0
                       ? spec.edge_prob
                       : std::min(1.0, spec.target_avg_deg / std::max(1.0, n - 1.0));
        int64_t wmax = spec.weight_max > 0 ? spec.weight_max : n;
        for (int s = 0; s < spec.seeds; ++s) jobs.push_back({n, spec.seed_base + s, p, wmax});
    }

    std::vector<SweepRow> rows(jobs.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        while (true) {
            size_t i = next.fetch_add(1);
            if (i >= jobs.size()) return;
            const Job& job = jobs[i];
            char desc[128];
            // no commas: the descriptor lands in a CSV column
            std::snprintf(desc, sizeof(desc), "random(n=%d p=%g wmax=%lld)", job.n, job.p,
                          static_cast<long long>(job.wmax));
            SweepRow row;
            row.instance = desc;
            row.seed = job.seed;
            try {
                WeightedGraph g = gen_random_connected(job.n, job.p, job.wmax, job.seed);
                row.n = g.n;
                row.m = static_cast<int64_t>(g.edges.size());
                row.diameter = diameter(g);
                RunConfig cfg;
                cfg.seed = job.seed;
                RunTrace trace;
                ExperimentReport rep =
                    run_experiment(g, desc, cfg, spec.with_oracle && g.n <= 20, &trace);
                row.metrics = rep.metrics;
                row.cds_cost = rep.cds_cost;
                row.opt_cost = rep.oracle_cost;
                row.ratio = rep.ratio;
                row.violations = rep.violations;
                for (const PhaseTrace& pt : trace.phases)
                    row.max_iters_per_phase = std::max(
                        row.max_iters_per_phase, static_cast<int64_t>(pt.iterations.size()));
            } catch (const std::exception& e) {
                row.violations.push_back(e.what());
            }
            rows[i] = std::move(row);
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return rows;
}

std::string sweep_summary(const std::vector<SweepRow>& rows) {
    auto stat = [&](const char* name, auto get) {
        std::vector<double> v;
        for (const SweepRow& r : rows) {
            auto val = get(r);
            if (val) v.push_back(*val);
        }
        char line[96];
        if (v.empty()) {
            std::snprintf(line, sizeof(line), "%-14s n/a\n", name);
            return std::string(line);
        }
        std::sort(v.begin(), v.end());
        double med = v.size() % 2 ? v[v.size() / 2]
                                  : 0.5 * (v[v.size() / 2 - 1] + v[v.size() / 2]);
        std::snprintf(line, sizeof(line), "%-14s median %.6g max %.6g\n", name, med, v.back());
        return std::string(line);
    };
    auto num = [](auto x) { return std::optional<double>(static_cast<double>(x)); };
    std::string out;
    out += stat("n", [&](const SweepRow& r) { return num(r.n); });
    out += stat("m", [&](const SweepRow& r) { return num(r.m); });
    out += stat("diameter", [&](const SweepRow& r) { return num(r.diameter); });
    out += stat("charged_rounds",
                [&](const SweepRow& r) { return num(r.metrics.charged_rounds); });
    out += stat("raw_rounds", [&](const SweepRow& r) { return num(r.metrics.raw_rounds); });
    out += stat("bits_sent", [&](const SweepRow& r) { return num(r.metrics.bits_sent); });
    out += stat("phases", [&](const SweepRow& r) { return num(r.metrics.phases); });
    out += stat("iterations", [&](const SweepRow& r) { return num(r.metrics.iterations); });
    out += stat("cds_cost", [&](const SweepRow& r) { return num(r.cds_cost); });
    out += stat("opt_cost", [&](const SweepRow& r) {
        return r.opt_cost ? std::optional<double>(static_cast<double>(*r.opt_cost))
                          : std::nullopt;
    });
    out += stat("ratio", [&](const SweepRow& r) { return r.ratio; });
    return out;
}

const char* kSweepCsvHeader =
    "schema,instance,seed,n,m,diameter,charged_rounds,raw_rounds,bits_sent,phases,"
    "iterations,cds_cost,opt_cost,ratio,violations";

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    out << kSweepCsvHeader << "\n";
    for (const SweepRow& r : rows) {
        out << 1 << ',' << r.instance << ',' << r.seed << ',' << r.n << ',' << r.m << ','
            << r.diameter << ',' << r.metrics.charged_rounds << ',' << r.metrics.raw_rounds << ','
            << r.metrics.bits_sent << ',' << r.metrics.phases << ',' << r.metrics.iterations << ','
            << r.cds_cost << ',';
        if (r.opt_cost) out << *r.opt_cost;
        out << ',';
        if (r.ratio) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.6g", *r.ratio);
            out << buf;
        }
        out << ',';
        for (size_t i = 0; i < r.violations.size(); ++i) {
            std::string v = r.violations[i];
            for (char& c : v)
                if (c == ',' || c == '\n') c = ';';
            out << (i ? ";" : "") << v;
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace mcds
