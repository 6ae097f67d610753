#include <doctest.h>

#include "gridtest/experiment.hpp"
#include "gridtest/common.hpp"

using namespace gridtest;

TEST_CASE("configs validate strictly") {
    CHECK_THROWS_AS(run_experiment_json("{"), Error);
    CHECK_THROWS_AS(run_experiment_json(R"({"kind":"sse-sweep","seed":1})"), Error); // no version
    CHECK_THROWS_AS(run_experiment_json(R"({"version":2,"kind":"sse-sweep","seed":1})"), Error);
    CHECK_THROWS_AS(run_experiment_json(R"({"version":1,"kind":"nope","seed":1})"), Error);
    // seed is mandatory
    CHECK_THROWS_AS(
        run_experiment_json(R"({"version":1,"kind":"sigma-goodness","params":{"r":8,"k":2,"samples":10}})"),
        Error);
    // unknown keys rejected, top level and params
    CHECK_THROWS_AS(
        run_experiment_json(R"({"version":1,"kind":"sigma-goodness","seed":1,"bogus":0,
                                "params":{"r":8,"k":2,"samples":10}})"),
        Error);
    try {
        run_experiment_json(R"({"version":1,"kind":"sigma-goodness","seed":1,
                                "params":{"r":8,"k":2,"samples":10,"extra":5}})");
        FAIL("expected rejection of unknown param");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("extra") != std::string::npos);
    }
}

TEST_CASE("experiments are deterministic byte for byte") {
    std::string cfg = R"({"version":1,"kind":"sse-sweep","seed":7,
        "params":{"n":4,"s":3,"nu":[0.5,1.0],"sets":6,"density_lo":0.05,"density_hi":0.4}})";
    ExperimentResult a = run_experiment_json(cfg, 1);
    ExperimentResult b = run_experiment_json(cfg, 4);
    CHECK(a.csv == b.csv);
    CHECK(a.pass);
    CHECK(a.csv.substr(0, a.csv.find('\n')) == "n,s,nu,set,delta,lhs,bound,ok");
    // one row per (set, nu)
    CHECK(std::count(a.csv.begin(), a.csv.end(), '\n') == 1 + 6 * 2);
}

TEST_CASE("sigma goodness experiment") {
    ExperimentResult r = run_experiment_json(
        R"({"version":1,"kind":"sigma-goodness","seed":3,"params":{"r":32,"k":4,"samples":20000}})");
    CHECK(r.pass);
    CHECK(r.csv.find("r,k,samples,good,rate") == 0);
}

TEST_CASE("oracle crosscheck experiment, exhaustive branch") {
    ExperimentResult r = run_experiment_json(
        R"({"version":1,"kind":"oracle-crosscheck","seed":5,
            "params":{"s":2,"n":2,"codomain":"Z3","functions":0,"exhaustive":true}})");
    CHECK(r.pass);
    CHECK(std::count(r.csv.begin(), r.csv.end(), '\n') == 1 + 81);
}

TEST_CASE("small completeness experiment passes") {
    ExperimentResult r = run_experiment_json(
        R"({"version":1,"kind":"completeness","seed":11,
            "params":{"family":"junta","s":3,"n":6,"d":1,"codomain":"Z5","k":4,"trials":50}})");
    CHECK(r.pass);
    CHECK(r.summary.size() == 2); // both forms
    for (const auto& line : r.summary) CHECK(line.find("PASS") != std::string::npos);
}

TEST_CASE("degree completeness experiment passes") {
    ExperimentResult r = run_experiment_json(
        R"({"version":1,"kind":"completeness","seed":19,
            "params":{"family":"degree","s":3,"n":6,"d":1,"codomain":"F7","k":4,"t":6,"trials":25}})");
    CHECK(r.pass);
    CHECK(r.csv.find("degree,deg,3,6,1,4,6,25,0,0") != std::string::npos);
}

TEST_CASE("soundness experiment flags positive rejection") {
    ExperimentResult r = run_experiment_json(
        R"({"version":1,"kind":"soundness-sweep","seed":13,
            "params":{"test":"weak","s":3,"n":6,"d":1,"codomain":"F7",
                      "function":{"kind":"hard-quadratic"},"trials":100}})");
    CHECK(r.pass);
}

TEST_CASE("impossibility experiment") {
    ExperimentResult r = run_experiment_json(
        R"({"version":1,"kind":"impossibility","seed":17,"params":{"n":27,"l":2,"trials":50}})");
    CHECK(r.pass);
    CHECK(r.summary.size() == 2);
}
