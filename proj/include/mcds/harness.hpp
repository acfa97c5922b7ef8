#ifndef MCDS_HARNESS_HPP
#define MCDS_HARNESS_HPP

#include <optional>
#include <string>
#include <vector>

#include "mcds/cds_phases.hpp"
#include "mcds/graph.hpp"
#include "mcds/runtime.hpp"

namespace mcds {

struct ExperimentReport {
    std::string instance;
    uint64_t seed = 0;
    RunMetrics metrics;
    int64_t cds_cost = 0;
    std::optional<int64_t> oracle_cost;
    std::optional<double> ratio;
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
};

// Runs the full pipeline on one instance and collects the outcome. Any
// invariant violation or engine error lands in the violations list instead
// of propagating. The oracle comparison requires n <= 20.
ExperimentReport run_experiment(const WeightedGraph& g, const std::string& descriptor,
                                RunConfig cfg, bool with_oracle, RunTrace* trace_out = nullptr);

std::string metrics_to_json(const RunMetrics& m);
std::string report_to_json(const ExperimentReport& r);
std::string trace_to_json(const RunTrace& t);

struct SweepRow {
    std::string instance;
    uint64_t seed = 0;
    int n = 0;
    int64_t m = 0;
    int diameter = 0;
    RunMetrics metrics;
    int64_t cds_cost = 0;
    std::optional<int64_t> opt_cost;
    std::optional<double> ratio;
    std::vector<std::string> violations;
    int64_t max_iters_per_phase = 0;
};

struct SweepSpec {
    std::vector<int> ns;
    double edge_prob = 0.0;     // <= 0: scale to the target average degree
    double target_avg_deg = 8.0;
    int64_t weight_max = 0;     // <= 0: use n
    int seeds = 5;
    uint64_t seed_base = 1;
    bool with_oracle = false;   // only honored for n <= 20
};

// One row per (n, seed), in deterministic grid order; rows may be computed
// in parallel.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, int threads = 1);

extern const char* kSweepCsvHeader;
std::string sweep_to_csv(const std::vector<SweepRow>& rows);

// Median and maximum of every numeric CSV column, one line per column.
std::string sweep_summary(const std::vector<SweepRow>& rows);

}  // namespace mcds

#endif
