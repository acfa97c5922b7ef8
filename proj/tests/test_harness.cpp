#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "mcds/harness.hpp"
#include "mcds/oracle.hpp"

using namespace mcds;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(const std::string& args) {
    std::string cmd = std::string(MCDS_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

}  // namespace

TEST_CASE("report JSON carries the exact field set") {
    auto g = WeightedGraph::make(3, {5, 1, 5}, {{0, 1}, {1, 2}});
    RunConfig cfg;
    cfg.seed = 2;
    auto rep = run_experiment(g, "path(5,1,5)", cfg, /*with_oracle=*/true);
    CHECK(rep.ok());
    CHECK(rep.oracle_cost.has_value());
    CHECK(*rep.oracle_cost == 1);
    REQUIRE(rep.ratio.has_value());
    CHECK(*rep.ratio == static_cast<double>(rep.cds_cost));  // opt = 1

    std::string json = report_to_json(rep);
    for (const char* key : {"\"instance\"", "\"seed\"", "\"metrics\"", "\"cds_cost\"",
                            "\"oracle_cost\"", "\"ratio\"", "\"violations\"", "\"raw_rounds\"",
                            "\"charged_rounds\"", "\"bits_sent\"", "\"phases\"", "\"iterations\"",
                            "\"output_cost\""})
        CHECK(json.find(key) != std::string::npos);
}

TEST_CASE("same seed gives byte-identical reports") {
    auto g = gen_random_connected(24, 0.2, 12, 8);
    RunConfig cfg;
    cfg.seed = 77;
    auto a = report_to_json(run_experiment(g, "r", cfg, true));
    auto b = report_to_json(run_experiment(g, "r", cfg, true));
    CHECK(a == b);
}

TEST_CASE("undersized budget surfaces as a violation, not a crash") {
    auto g = WeightedGraph::make(3, {5, 1, 5}, {{0, 1}, {1, 2}});
    RunConfig cfg;
    cfg.b_bits = 4;
    auto rep = run_experiment(g, "tiny-budget", cfg, false);
    REQUIRE(!rep.violations.empty());
    CHECK(rep.violations[0].find("budget") != std::string::npos);
}

TEST_CASE("sweep emits one row per instance/seed with the documented header") {
    SweepSpec spec;
    spec.ns = {10, 14, 18, 22};
    spec.seeds = 5;
    spec.with_oracle = true;
    auto rows = run_sweep(spec, 2);
    REQUIRE(rows.size() == 20);
    for (const auto& r : rows) {
        CHECK(r.violations.empty());
        if (r.n <= 20) {
            REQUIRE(r.opt_cost.has_value());
            CHECK(*r.opt_cost <= r.cds_cost);
        } else {
            CHECK(!r.opt_cost.has_value());
        }
    }
    std::string csv = sweep_to_csv(rows);
    std::istringstream lines(csv);
    std::string header;
    std::getline(lines, header);
    CHECK(header ==
          "schema,instance,seed,n,m,diameter,charged_rounds,raw_rounds,bits_sent,phases,"
          "iterations,cds_cost,opt_cost,ratio,violations");
    int count = 0;
    std::string line;
    while (std::getline(lines, line))
        if (!line.empty()) ++count;
    CHECK(count == 20);

    std::string summary = sweep_summary(rows);
    CHECK(summary.find("charged_rounds") != std::string::npos);
    CHECK(summary.find("ratio") != std::string::npos);
    CHECK(summary.find("median") != std::string::npos);
}

TEST_CASE("charged rounds per iteration grow sub-linearly in n at fixed degree") {
    SweepSpec spec;
    spec.ns = {25, 50, 100, 200, 400, 800};
    spec.seeds = 3;
    spec.target_avg_deg = 6.0;
    auto rows = run_sweep(spec, 1);
    std::vector<double> medians;
    for (int n : spec.ns) {
        std::vector<double> c;
        for (const auto& r : rows) {
            CHECK(r.violations.empty());
            if (r.n == n)
                c.push_back(static_cast<double>(r.metrics.charged_rounds) /
                            static_cast<double>(std::max<int64_t>(1, r.metrics.iterations)));
        }
        std::sort(c.begin(), c.end());
        medians.push_back(c[c.size() / 2]);
    }
    for (size_t i = 1; i < medians.size(); ++i) CHECK(medians[i] >= medians[i - 1]);
    // 32x more nodes must cost far less than 32x more rounds per iteration
    CHECK(medians.back() < medians.front() * 32.0);
}

TEST_CASE("trace serialization exposes the per-iteration schema") {
    auto g = gen_cycle_center(6);
    RunConfig cfg;
    cfg.seed = 3;
    RunTrace trace;
    auto rep = run_experiment(g, "cc6", cfg, false, &trace);
    CHECK(rep.ok());
    std::string json = trace_to_json(trace);
    for (const char* key :
         {"\"phase\"", "\"iteration\"", "\"rho_star\"", "\"rho_tilde\"", "\"delta_star\"",
          "\"unsatisfied_count\"", "\"grayed_cost\"", "\"per_component_active_degree\""})
        CHECK(json.find(key) != std::string::npos);
}

TEST_CASE("cli end-to-end: gen, run, oracle, determinism, exit codes") {
    std::string dir = "/tmp/mcds_cli_test";
    std::system(("rm -rf " + dir + " && mkdir -p " + dir).c_str());

    CHECK(run_cli("gen cycle-center --k 4 -o " + dir + "/cc.json") == 0);
    CHECK(run_cli("gen random --n 30 --p 0.2 --wmax 50 --seed 7 -o " + dir + "/r1.json") == 0);
    CHECK(run_cli("gen random --n 30 --p 0.2 --wmax 50 --seed 7 -o " + dir + "/r2.json") == 0);
    CHECK(slurp(dir + "/r1.json") == slurp(dir + "/r2.json"));  // byte identical
    CHECK(run_cli("gen lower-bound --paths 3 --len 3 --x 1 --y 2 --alpha 2 -o " + dir +
                  "/lb.json") == 0);

    CHECK(run_cli("run " + dir + "/cc.json --oracle --seed 3 --report " + dir + "/rep1.json") ==
          0);
    CHECK(run_cli("run " + dir + "/cc.json --oracle --seed 3 --report " + dir + "/rep2.json") ==
          0);
    CHECK(slurp(dir + "/rep1.json") == slurp(dir + "/rep2.json"));

    CHECK(run_cli("run " + dir + "/cc.json --b-bits 4") != 0);  // budget violation
    CHECK(run_cli("oracle " + dir + "/cc.json") == 0);
    CHECK(run_cli("oracle " + dir + "/cc.json --mds") == 0);
    CHECK(run_cli("gen cycle-center --k 0") != 0);
    CHECK(run_cli("run " + dir + "/does_not_exist.json") != 0);
}
