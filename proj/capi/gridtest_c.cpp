#include "gridtest.h"

#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>

#include "gridtest/acceptance.hpp"
#include "gridtest/distance.hpp"
#include "gridtest/experiment.hpp"
#include "gridtest/lower_bound.hpp"
#include "gridtest/noise_fourier.hpp"
#include "gridtest/parallel.hpp"
#include "gridtest/table_io.hpp"
#include "gridtest/testers.hpp"

using namespace gridtest;

struct gt_oracle {
    LoadedOracle inner;
};

namespace {

thread_local std::string g_last_error;

gt_status status_of(const Error& e) {
    switch (e.code()) {
        case Errc::invalid_argument: return GT_EINVAL;
        case Errc::domain_mismatch: return GT_EDOMAIN;
        case Errc::domain_too_large: return GT_ETOOLARGE;
        case Errc::family_too_large: return GT_ETOOLARGE;
        case Errc::budget_exceeded: return GT_EBUDGET;
        case Errc::parse_error: return GT_EPARSE;
        case Errc::construction_failed: return GT_ECONSTRUCT;
        case Errc::no_collision: return GT_ECONSTRUCT;
        case Errc::io_error: return GT_EIO;
    }
    return GT_ERROR;
}

template <typename Fn>
gt_status guarded(Fn&& fn) {
    try {
        fn();
        return GT_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return status_of(e);
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return GT_ERROR;
    } catch (...) {
        g_last_error = "unknown error";
        return GT_ERROR;
    }
}

gt_status invalid(const char* what) {
    g_last_error = what;
    return GT_EINVAL;
}

void fill_summary(const RejectionEstimate& est, gt_test_summary* out) {
    out->trials = est.trials;
    out->rejections = est.rejections;
    out->rate = est.rate;
    out->ci_lo = est.ci_lo;
    out->ci_hi = est.ci_hi;
    out->mean_queries = est.mean_queries;
    out->junta_arm_rejections = est.junta_arm_rejections;
    out->weak_arm_rejections = est.weak_arm_rejections;
}

// symmetric group oracle, lifting asymmetric grids through the lcm alphabet
GroupOracle symmetric_group_view(const GroupOracle& f) {
    if (f.domain().symmetric_shape()) return f;
    return lift_general_grid(f);
}

} // namespace

extern "C" {

const char* gt_version(void) { return "1.0.0"; }

const char* gt_last_error(void) { return g_last_error.c_str(); }

gt_status gt_oracle_load(const char* path, gt_oracle** out) {
    if (!path || !out) return invalid("gt_oracle_load: NULL argument");
    return guarded([&] { *out = new gt_oracle{load_table(path)}; });
}

gt_status gt_oracle_save(const gt_oracle* oracle, const char* path) {
    if (!oracle || !path) return invalid("gt_oracle_save: NULL argument");
    return guarded([&] { save_table(path, oracle->inner); });
}

void gt_oracle_free(gt_oracle* oracle) { delete oracle; }

gt_status gt_oracle_info(const gt_oracle* oracle, int32_t* n_out, int32_t* sizes_buf, int32_t cap,
                         char* codomain_buf, size_t codomain_cap) {
    if (!oracle) return invalid("gt_oracle_info: NULL oracle");
    return guarded([&] {
        const GridDomain& dom = loaded_domain(oracle->inner);
        if (n_out) *n_out = dom.arity();
        if (sizes_buf)
            for (int i = 0; i < dom.arity() && i < cap; ++i) sizes_buf[i] = dom.size(i);
        if (codomain_buf && codomain_cap > 0) {
            std::string desc = loaded_codomain_descriptor(oracle->inner);
            std::strncpy(codomain_buf, desc.c_str(), codomain_cap - 1);
            codomain_buf[codomain_cap - 1] = '\0';
        }
    });
}

uint64_t gt_oracle_query_count(const gt_oracle* oracle) {
    if (!oracle) return 0;
    return std::visit([](const auto& o) { return o.query_count(); }, oracle->inner);
}

gt_status gt_junta_test(const gt_oracle* oracle, int32_t d, int32_t k, int32_t form,
                        int32_t paper_params, int32_t psi, uint64_t trials, uint64_t seed,
                        int32_t threads, gt_test_summary* out) {
    if (!oracle || !out) return invalid("gt_junta_test: NULL argument");
    if (form != GT_JUNTA_FORM_RECURSIVE && form != GT_JUNTA_FORM_REPHRASED)
        return invalid("gt_junta_test: bad form");
    return guarded([&] {
        // field tables run against the additive group of F_p
        const GroupOracle* gp = std::get_if<GroupOracle>(&oracle->inner);
        GroupOracle f = gp != nullptr
                            ? symmetric_group_view(*gp)
                            : symmetric_group_view(additive_group_view(std::get<FieldOracle>(oracle->inner)));
        int s = f.domain().size(0);
        JuntaDegTester tester(d, resolve_locality(d, s, k, paper_params != 0, psi > 0 ? psi : 1));
        auto est = estimate_rejection(
            [&](Rng& rng) {
                return form == GT_JUNTA_FORM_RECURSIVE ? tester.run_recursive(f, rng)
                                                       : tester.run_rephrased(f, rng);
            },
            trials, seed, threads);
        fill_summary(est, out);
    });
}

gt_status gt_weak_deg_test(const gt_oracle* oracle, int32_t d, int32_t t, int32_t paper_params,
                           uint64_t trials, uint64_t seed, int32_t threads, gt_test_summary* out) {
    if (!oracle || !out) return invalid("gt_weak_deg_test: NULL argument");
    return guarded([&] {
        const FieldOracle* fp = std::get_if<FieldOracle>(&oracle->inner);
        require(fp != nullptr, Errc::invalid_argument,
                "weak-deg test: table must have a field codomain (F<p>)");
        require(fp->domain().symmetric_shape(), Errc::invalid_argument,
                "weak-deg test: symmetric grid required");
        int s = fp->domain().size(0);
        EvalSet S = EvalSet::prefix(fp->codomain(), s);
        WeakDegTester tester(S, fp->domain().arity(), d,
                             resolve_block_length(S, t, paper_params != 0));
        auto est = estimate_rejection([&](Rng& rng) { return tester.run(*fp, rng); }, trials, seed,
                                      threads);
        fill_summary(est, out);
    });
}

gt_status gt_deg_test(const gt_oracle* oracle, int32_t d, int32_t k, int32_t t,
                      int32_t paper_params, int32_t psi, uint64_t trials, uint64_t seed,
                      int32_t threads, gt_test_summary* out) {
    if (!oracle || !out) return invalid("gt_deg_test: NULL argument");
    return guarded([&] {
        const FieldOracle* fp = std::get_if<FieldOracle>(&oracle->inner);
        require(fp != nullptr, Errc::invalid_argument,
                "deg test: table must have a field codomain (F<p>)");
        require(fp->domain().symmetric_shape(), Errc::invalid_argument,
                "deg test: symmetric grid required");
        int s = fp->domain().size(0);
        EvalSet S = EvalSet::prefix(fp->codomain(), s);
        DegTester tester(S, fp->domain().arity(), d,
                         resolve_locality(d, s, k, paper_params != 0, psi > 0 ? psi : 1),
                         resolve_block_length(S, t, paper_params != 0));
        auto est = estimate_rejection([&](Rng& rng) { return tester.run(*fp, rng); }, trials, seed,
                                      threads);
        fill_summary(est, out);
    });
}

gt_status gt_exact_distance(const gt_oracle* oracle, int32_t family, int32_t d, uint64_t* num,
                            uint64_t* den, const char* witness_path) {
    if (!oracle || !num || !den) return invalid("gt_exact_distance: NULL argument");
    return guarded([&] {
        if (family == GT_FAMILY_JUNTA) {
            const GroupOracle* gp = std::get_if<GroupOracle>(&oracle->inner);
            require(gp != nullptr, Errc::invalid_argument,
                    "distance: junta family needs a group codomain table");
            auto res = exact_distance_junta(*gp, d);
            *num = res.distance.num;
            *den = res.distance.den;
            if (witness_path)
                save_table(witness_path,
                           GroupOracle(gp->domain(), gp->codomain(), std::move(res.witness)));
        } else if (family == GT_FAMILY_DEGREE) {
            const FieldOracle* fo = std::get_if<FieldOracle>(&oracle->inner);
            require(fo != nullptr, Errc::invalid_argument,
                    "distance: degree family needs a field codomain table");
            require(fo->domain().symmetric_shape(), Errc::invalid_argument,
                    "distance: degree family needs a symmetric grid");
            EvalSet S = EvalSet::prefix(fo->codomain(), fo->domain().size(0));
            auto res = exact_distance_degree(*fo, S, d);
            *num = res.distance.num;
            *den = res.distance.den;
            if (witness_path)
                save_table(witness_path,
                           FieldOracle(fo->domain(), fo->codomain(), std::move(res.witness)));
        } else {
            fail(Errc::invalid_argument, "distance: family must be junta or degree");
        }
    });
}

gt_status gt_sse_sweep(int32_t n, int32_t s, const double* nus, int32_t num_nus, int32_t sets,
                       double density_lo, double density_hi, uint64_t seed, int32_t threads,
                       const char* csv_path, int32_t* violations_out) {
    if (!nus || num_nus <= 0) return invalid("gt_sse_sweep: no noise rates");
    return guarded([&] {
        std::ostringstream cfg;
        cfg << "{\"version\":1,\"kind\":\"sse-sweep\",\"seed\":" << seed << ",\"params\":{"
            << "\"n\":" << n << ",\"s\":" << s << ",\"sets\":" << sets
            << ",\"density_lo\":" << density_lo << ",\"density_hi\":" << density_hi << ",\"nu\":[";
        for (int i = 0; i < num_nus; ++i) cfg << (i ? "," : "") << nus[i];
        cfg << "]}}";
        ExperimentResult r = run_experiment_json(cfg.str(), threads);
        if (csv_path) {
            std::ofstream out(csv_path);
            require(static_cast<bool>(out), Errc::io_error, "sse sweep: cannot write CSV");
            out << r.csv;
        }
        if (violations_out) {
            // count failing rows from the CSV's trailing ok column; for
            // s = 2 the inequality is reported, never asserted
            int32_t v = 0;
            if (s >= 3) {
                std::istringstream lines(r.csv);
                std::string line;
                std::getline(lines, line); // header
                while (std::getline(lines, line))
                    if (line.size() >= 2 && line.substr(line.size() - 2) == ",0") ++v;
            }
            *violations_out = v;
        }
    });
}

gt_status gt_impossibility(int32_t n, int32_t l, uint64_t trials, uint64_t seed, int32_t threads,
                           const char* csv_path, gt_impossibility_summary* out) {
    return guarded([&] {
        std::ostringstream cfg;
        cfg << "{\"version\":1,\"kind\":\"impossibility\",\"seed\":" << seed << ",\"params\":{"
            << "\"n\":" << n << ",\"l\":" << l << ",\"trials\":" << trials << "}}";
        ExperimentResult r = run_experiment_json(cfg.str(), threads);
        if (csv_path) {
            std::ofstream os(csv_path);
            require(static_cast<bool>(os), Errc::io_error, "impossibility: cannot write CSV");
            os << r.csv;
        }
        if (out) {
            *out = gt_impossibility_summary{};
            std::istringstream lines(r.csv);
            std::string line;
            std::getline(lines, line);
            while (std::getline(lines, line)) {
                // n,l,matrix,bad_count,bad_fraction,bound,collisions,certificates_ok,in_colspace
                std::istringstream row(line);
                std::string tok;
                std::vector<std::string> cols;
                while (std::getline(row, tok, ',')) cols.push_back(tok);
                if (cols.size() != 9) continue;
                ++out->matrices;
                double frac = std::stod(cols[4]), bound = std::stod(cols[5]);
                if (frac > bound + 1e-12) ++out->bound_violations;
                out->collisions += std::stoull(cols[6]);
                std::uint64_t okc = std::stoull(cols[7]), inc = std::stoull(cols[8]);
                out->certificates_ok += std::min(okc, inc);
            }
        }
    });
}

gt_status gt_experiment_run(const char* config_path, int32_t threads, int32_t* pass_out) {
    if (!config_path) return invalid("gt_experiment_run: NULL path");
    return guarded([&] {
        ExperimentResult r = run_experiment_file(config_path, threads);
        for (const auto& line : r.summary) std::cout << line << '\n';
        std::cout << "SUMMARY: " << (r.pass ? "PASS" : "FAIL") << std::endl;
        if (pass_out) *pass_out = r.pass ? 1 : 0;
    });
}

gt_status gt_acceptance_run(const char* only_substring, int32_t threads, int32_t* failures_out) {
    return guarded([&] {
        auto results = run_acceptance(std::cout, threads, only_substring ? only_substring : "");
        int32_t failures = 0;
        for (const auto& r : results) failures += !r.pass;
        if (failures_out) *failures_out = failures;
    });
}

} // extern "C"
