#ifndef GRIDTEST_EXPERIMENT_HPP
#define GRIDTEST_EXPERIMENT_HPP

#include <string>
#include <vector>

namespace gridtest {

/// Result of one experiment run: the CSV artifact, human-readable summary
/// lines ("assert <name>: PASS|FAIL ..."), and the conjunction of all
/// asserted inequalities. Both artifacts are pure functions of the config.
struct ExperimentResult {
    std::string csv;
    std::vector<std::string> summary;
    bool pass = true;
};

/// Runs an experiment from a JSON config string. Schema:
///   { "version": 1, "kind": "...", "seed": <u64>, "output": "path.csv"?,
///     "params": { ... } }
/// Kinds: completeness | soundness-sweep | sse-sweep | sigma-goodness |
/// impossibility | oracle-crosscheck. Unknown keys are rejected; seed is
/// mandatory. When "output" is present the CSV is also written there.
ExperimentResult run_experiment_json(const std::string& config_json, int threads = 0);

/// Same, reading the config from a file.
ExperimentResult run_experiment_file(const std::string& config_path, int threads = 0);

} // namespace gridtest

#endif
