// Command-line front end for the local testers, exact distance oracles, and
// experiment runner. Talks to the core exclusively through the C API.

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gridtest.h"

namespace {

int die(gt_status st) {
    std::fprintf(stderr, "error: %s\n", gt_last_error());
    return st == GT_OK ? 1 : (int)st;
}

struct OracleGuard {
    gt_oracle* handle = nullptr;
    ~OracleGuard() { gt_oracle_free(handle); }
};

void print_summary_row(const gt_test_summary& s) {
    std::printf("%.6f,%.6f,%.6f,%.2f\n", s.rate, s.ci_lo, s.ci_hi, s.mean_queries);
}

void print_arms(const gt_test_summary& s) {
    std::fprintf(stderr, "trials=%llu rejections=%llu junta_arm=%llu weak_arm=%llu\n",
                 (unsigned long long)s.trials, (unsigned long long)s.rejections,
                 (unsigned long long)s.junta_arm_rejections,
                 (unsigned long long)s.weak_arm_rejections);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"local testers for junta-degree and degree over grids"};
    app.require_subcommand(1);

    std::string fn_path, out_path, witness_path, config_path, only;
    int d = 1, k = 0, t = 0, psi = 1, n = 6, s = 3, l = 2, sets = 200, threads = 0;
    std::uint64_t trials = 1000, seed = 1;
    bool paper_params = false, verbose = false;
    std::string form = "rephrased", family = "junta";
    std::vector<double> nus{1.0 / 3, 0.5, 2.0 / 3, 1.0};
    double density_lo = 0.005, density_hi = 0.5;

    auto add_common = [&](CLI::App* cmd, bool with_fn) {
        if (with_fn) cmd->add_option("--fn", fn_path, "function table file")->required();
        cmd->add_option("--trials", trials, "number of trials");
        cmd->add_option("--seed", seed, "master seed");
        cmd->add_option("--threads", threads, "worker threads (0 = auto)");
        cmd->add_flag("--paper-params", paper_params, "use k = psi*s^2*d and t = s^3");
        cmd->add_flag("-v,--verbose", verbose, "per-arm counts on stderr");
    };

    auto* junta = app.add_subcommand("junta-test", "junta-degree-d tester");
    junta->add_option("--d", d, "degree bound")->required();
    junta->add_option("--k", k, "locality (0 = default)");
    junta->add_option("--form", form, "recursive|rephrased")
        ->check(CLI::IsMember({"recursive", "rephrased"}));
    junta->add_option("--psi", psi, "locality constant psi used by --paper-params");
    add_common(junta, true);

    auto* weak = app.add_subcommand("weak-deg", "weak degree-d tester");
    weak->add_option("--d", d, "degree bound")->required();
    weak->add_option("--t", t, "block length (0 = default)");
    add_common(weak, true);

    auto* deg = app.add_subcommand("deg-test", "degree-d tester (junta arm + weak arm)");
    deg->add_option("--d", d, "degree bound")->required();
    deg->add_option("--k", k, "junta arm locality (0 = default)");
    deg->add_option("--t", t, "weak arm block length (0 = default)");
    deg->add_option("--psi", psi, "locality constant psi used by --paper-params");
    add_common(deg, true);

    auto* dist = app.add_subcommand("distance", "exact brute-force distance to a family");
    dist->add_option("--family", family, "junta|degree")->check(CLI::IsMember({"junta", "degree"}));
    dist->add_option("--d", d, "degree bound")->required();
    dist->add_option("--fn", fn_path, "function table file")->required();
    dist->add_option("--witness", witness_path, "save a nearest member here");

    auto* sse = app.add_subcommand("sse", "spherical small-set expansion sweep");
    sse->add_option("--n", n, "arity");
    sse->add_option("--s", s, "alphabet size");
    sse->add_option("--nu", nus, "noise rates");
    sse->add_option("--sets", sets, "number of random sets");
    sse->add_option("--density-lo", density_lo, "min density");
    sse->add_option("--density-hi", density_hi, "max density");
    sse->add_option("--seed", seed, "master seed");
    sse->add_option("--threads", threads, "worker threads");
    sse->add_option("--out", out_path, "CSV output path");

    auto* imp = app.add_subcommand("impossibility", "asymmetric-grid lower-bound demo");
    imp->add_option("--n", n, "number of coordinates");
    imp->add_option("--l", l, "queries per matrix");
    imp->add_option("--trials", trials, "number of matrices");
    imp->add_option("--seed", seed, "master seed");
    imp->add_option("--threads", threads, "worker threads");
    imp->add_option("--out", out_path, "CSV output path");

    auto* exp = app.add_subcommand("experiment", "run a JSON experiment config");
    exp->add_option("--config", config_path, "config file")->required();
    exp->add_option("--threads", threads, "worker threads");

    auto* acc = app.add_subcommand("acceptance", "run the acceptance suite");
    acc->add_option("--only", only, "restrict to criteria containing this substring");
    acc->add_option("--threads", threads, "worker threads");

    CLI11_PARSE(app, argc, argv);

    if (junta->parsed() || weak->parsed() || deg->parsed()) {
        OracleGuard oracle;
        gt_status st = gt_oracle_load(fn_path.c_str(), &oracle.handle);
        if (st != GT_OK) return die(st);
        gt_test_summary summary{};
        if (junta->parsed()) {
            int32_t f = form == "recursive" ? GT_JUNTA_FORM_RECURSIVE : GT_JUNTA_FORM_REPHRASED;
            st = gt_junta_test(oracle.handle, d, k, f, paper_params, psi, trials, seed, threads, &summary);
        } else if (weak->parsed()) {
            st = gt_weak_deg_test(oracle.handle, d, t, paper_params, trials, seed, threads, &summary);
        } else {
            st = gt_deg_test(oracle.handle, d, k, t, paper_params, psi, trials, seed, threads, &summary);
        }
        if (st != GT_OK) return die(st);
        print_summary_row(summary);
        if (verbose) print_arms(summary);
        return 0;
    }

    if (dist->parsed()) {
        OracleGuard oracle;
        gt_status st = gt_oracle_load(fn_path.c_str(), &oracle.handle);
        if (st != GT_OK) return die(st);
        uint64_t num = 0, den = 1;
        st = gt_exact_distance(oracle.handle, family == "junta" ? GT_FAMILY_JUNTA : GT_FAMILY_DEGREE,
                               d, &num, &den, witness_path.empty() ? nullptr : witness_path.c_str());
        if (st != GT_OK) return die(st);
        std::printf("%llu/%llu\n", (unsigned long long)num, (unsigned long long)den);
        return 0;
    }

    if (sse->parsed()) {
        int32_t violations = -1;
        gt_status st = gt_sse_sweep(n, s, nus.data(), (int32_t)nus.size(), sets, density_lo,
                                    density_hi, seed, threads,
                                    out_path.empty() ? nullptr : out_path.c_str(), &violations);
        if (st != GT_OK) return die(st);
        std::printf("sets=%d rates=%zu violations=%d\n", sets, nus.size(), violations);
        return violations == 0 ? 0 : 1;
    }

    if (imp->parsed()) {
        gt_impossibility_summary summary{};
        gt_status st = gt_impossibility(n, l, trials, seed, threads,
                                        out_path.empty() ? nullptr : out_path.c_str(), &summary);
        if (st != GT_OK) return die(st);
        std::printf("matrices=%llu bound_violations=%llu collisions=%llu certificates_ok=%llu\n",
                    (unsigned long long)summary.matrices,
                    (unsigned long long)summary.bound_violations,
                    (unsigned long long)summary.collisions,
                    (unsigned long long)summary.certificates_ok);
        bool ok = summary.bound_violations == 0 && summary.certificates_ok == summary.collisions;
        return ok ? 0 : 1;
    }

    if (exp->parsed()) {
        int32_t pass = 0;
        gt_status st = gt_experiment_run(config_path.c_str(), threads, &pass);
        if (st != GT_OK) return die(st);
        return pass ? 0 : 1;
    }

    if (acc->parsed()) {
        int32_t failures = 0;
        gt_status st = gt_acceptance_run(only.empty() ? nullptr : only.c_str(), threads, &failures);
        if (st != GT_OK) return die(st);
        return failures == 0 ? 0 : 1;
    }

    return 0;
}
