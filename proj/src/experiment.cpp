#include "gridtest/experiment.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gridtest/distance.hpp"
#include "gridtest/lower_bound.hpp"
#include "gridtest/noise_fourier.hpp"
#include "gridtest/parallel.hpp"
#include "gridtest/reference.hpp"
#include "gridtest/table_io.hpp"
#include "gridtest/testers.hpp"

namespace gridtest {

namespace {

using nlohmann::json;

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

void check_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* key : allowed)
            if (it.key() == key) {
                ok = true;
                break;
            }
        require(ok, Errc::parse_error, "config: unknown key '" + it.key() + "' in " + where);
    }
}

json need(const json& obj, const char* key, const std::string& where) {
    require(obj.contains(key), Errc::parse_error, "config: missing key '" + std::string(key) + "' in " + where);
    return obj.at(key);
}

struct Assertion {
    std::string name;
    bool pass;
    std::string detail;
};

void emit(ExperimentResult& r, const Assertion& a) {
    r.summary.push_back("assert " + a.name + ": " + (a.pass ? "PASS" : "FAIL") +
                        (a.detail.empty() ? "" : " (" + a.detail + ")"));
    r.pass = r.pass && a.pass;
}

// ---- completeness ----------------------------------------------------------

ExperimentResult run_completeness(const json& params, std::uint64_t seed, int threads) {
    check_keys(params, {"family", "s", "n", "d", "codomain", "k", "t", "form", "trials"}, "params");
    std::string family = need(params, "family", "params");
    int s = need(params, "s", "params");
    int n = need(params, "n", "params");
    int d = need(params, "d", "params");
    std::uint64_t trials = need(params, "trials", "params");

    ExperimentResult r;
    std::ostringstream csv;
    csv << "family,form,s,n,d,k,t,trials,rejections,rate\n";
    if (family == "junta") {
        AbelianGroup g = AbelianGroup::parse(need(params, "codomain", "params"));
        int k = resolve_locality(d, s, params.value("k", 0), false, 1);
        std::string form = params.value("form", "both");
        JuntaDegTester tester(d, k);
        for (std::string which : {std::string("recursive"), std::string("rephrased")}) {
            if (form != "both" && form != which) continue;
            auto est = estimate_rejection(
                [&](Rng& rng) {
                    JuntaPolynomial member = JuntaPolynomial::random(g, s, n, d, rng);
                    GroupOracle f = member.oracle();
                    return which == "recursive" ? tester.run_recursive(f, rng)
                                                : tester.run_rephrased(f, rng);
                },
                trials, seed, threads);
            csv << "junta," << which << ',' << s << ',' << n << ',' << d << ',' << k << ",,"
                << trials << ',' << est.rejections << ',' << fmt_double(est.rate) << '\n';
            emit(r, {"completeness-junta-" + which, est.rejections == 0,
                     std::to_string(est.rejections) + " rejections"});
        }
    } else if (family == "degree") {
        PrimeField fp = PrimeField::parse(need(params, "codomain", "params"));
        EvalSet S = EvalSet::prefix(fp, s);
        int t = resolve_block_length(S, params.value("t", 0), false);
        int k = resolve_locality(d, s, params.value("k", 0), false, 1);
        DegTester tester(S, n, d, k, t);
        auto est = estimate_rejection(
            [&](Rng& rng) {
                ReducedPolynomial member = ReducedPolynomial::random(fp, n, s, d, rng);
                FieldOracle f(GridDomain::symmetric(s, n), fp, [&S, member](const GridPoint& x) {
                    std::vector<Fp> vals(x.arity());
                    for (int i = 0; i < x.arity(); ++i) vals[i] = S.elem(x[i]);
                    return member.evaluate(vals);
                });
                return tester.run(f, rng);
            },
            trials, seed, threads);
        csv << "degree,deg," << s << ',' << n << ',' << d << ',' << k << ',' << t << ',' << trials
            << ',' << est.rejections << ',' << fmt_double(est.rate) << '\n';
        emit(r, {"completeness-degree", est.rejections == 0,
                 std::to_string(est.rejections) + " rejections"});
    } else {
        fail(Errc::parse_error, "config: family must be junta|degree");
    }
    r.csv = csv.str();
    return r;
}

// ---- soundness sweep -------------------------------------------------------

ExperimentResult run_soundness(const json& params, std::uint64_t seed, int threads) {
    check_keys(params, {"test", "s", "n", "d", "k", "t", "codomain", "function", "trials"}, "params");
    std::string test = need(params, "test", "params");
    int s = need(params, "s", "params");
    int n = need(params, "n", "params");
    int d = need(params, "d", "params");
    std::uint64_t trials = need(params, "trials", "params");
    json fn = need(params, "function", "params");
    check_keys(fn, {"kind", "weight", "symbol", "path"}, "params.function");
    std::string fkind = need(fn, "kind", "params.function");

    ExperimentResult r;
    std::ostringstream csv;
    csv << "test,function,s,n,d,k,t,trials,rejections,rate,ci_lo,ci_hi,junta_arm_rejections,"
           "weak_arm_rejections,mean_queries\n";

    RejectionEstimate est;
    int k_used = 0, t_used = 0;
    if (test == "junta") {
        AbelianGroup g = AbelianGroup::parse(need(params, "codomain", "params"));
        int k = resolve_locality(d, s, params.value("k", 0), false, 1);
        k_used = k;
        require(fkind == "pattern-indicator", Errc::parse_error,
                "config: junta soundness needs a pattern-indicator function");
        int weight = need(fn, "weight", "params.function");
        int symbol = fn.value("symbol", 1);
        JuntaPolynomial hard(g, s, n);
        Pattern a;
        for (int i = 0; i < weight; ++i) a.emplace_back((std::uint16_t)i, (std::uint16_t)symbol);
        hard.accumulate(a, g.from_index(1));
        GroupOracle f = hard.oracle();
        JuntaDegTester tester(d, k);
        est = estimate_rejection([&](Rng& rng) { return tester.run_rephrased(f, rng); }, trials,
                                 seed, threads);
    } else if (test == "weak" || test == "deg") {
        PrimeField fp = PrimeField::parse(need(params, "codomain", "params"));
        EvalSet S = EvalSet::prefix(fp, s);
        int t = resolve_block_length(S, params.value("t", 0), false);
        int k = resolve_locality(d, s, params.value("k", 0), false, 1);
        t_used = t;
        GridDomain dom = GridDomain::symmetric(s, n);
        FieldOracle f = [&]() -> FieldOracle {
            if (fkind == "hard-quadratic")
                // x_1(x_1 - 1), junta-degree 1 but not degree 1
                return FieldOracle(dom, fp, [&S, fp](const GridPoint& x) {
                    Fp v = S.elem(x[0]);
                    return fp.mul(v, fp.sub(v, 1));
                });
            if (fkind == "pattern-indicator") {
                int weight = need(fn, "weight", "params.function");
                int symbol = fn.value("symbol", 1);
                return FieldOracle(dom, fp, [weight, symbol](const GridPoint& x) -> Fp {
                    for (int i = 0; i < weight; ++i)
                        if (x[i] != symbol) return 0;
                    return 1;
                });
            }
            fail(Errc::parse_error, "config: unknown function kind '" + fkind + "'");
        }();
        if (test == "weak") {
            WeakDegTester tester(S, n, d, t);
            est = estimate_rejection([&](Rng& rng) { return tester.run(f, rng); }, trials, seed,
                                     threads);
        } else {
            k_used = k;
            DegTester tester(S, n, d, k, t);
            est = estimate_rejection([&](Rng& rng) { return tester.run(f, rng); }, trials, seed,
                                     threads);
        }
    } else {
        fail(Errc::parse_error, "config: test must be junta|weak|deg");
    }

    csv << test << ',' << fkind << ',' << s << ',' << n << ',' << d << ',' << k_used << ','
        << t_used << ',' << trials << ',' << est.rejections << ',' << fmt_double(est.rate) << ','
        << fmt_double(est.ci_lo) << ',' << fmt_double(est.ci_hi) << ','
        << est.junta_arm_rejections << ',' << est.weak_arm_rejections << ','
        << fmt_double(est.mean_queries) << '\n';
    emit(r, {"soundness-positive", est.ci_lo > 0,
             "rate " + fmt_double(est.rate) + ", ci_lo " + fmt_double(est.ci_lo)});
    r.csv = csv.str();
    return r;
}

// ---- sse sweep -------------------------------------------------------------

ExperimentResult run_sse_sweep(const json& params, std::uint64_t seed, int threads) {
    check_keys(params, {"n", "s", "nu", "sets", "density_lo", "density_hi"}, "params");
    int n = need(params, "n", "params");
    int s = need(params, "s", "params");
    std::vector<double> nus = need(params, "nu", "params").get<std::vector<double>>();
    int sets = need(params, "sets", "params");
    double lo = params.value("density_lo", 0.005);
    double hi = params.value("density_hi", 0.5);
    require(s >= 2 && n >= 1 && sets >= 1 && lo > 0 && hi >= lo && hi <= 1, Errc::parse_error,
            "config: bad sse-sweep parameters");

    GridDomain dom = GridDomain::symmetric(s, n);
    std::uint64_t npts = dom.cardinality_checked();

    struct Row {
        int set;
        int m;
        SseResult res;
    };
    std::vector<Row> rows((std::size_t)sets * nus.size());
    parallel_chunks(sets, threads, [&](std::uint64_t, std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t a = begin; a < end; ++a) {
            Rng rng = Rng::for_trial(seed, a);
            double density = lo + (hi - lo) * rng.uniform01();
            std::uint64_t size = std::max<std::uint64_t>(1, (std::uint64_t)(density * npts));
            // random subset of exactly `size` points
            std::vector<std::uint32_t> idx(npts);
            for (std::uint64_t i = 0; i < npts; ++i) idx[i] = (std::uint32_t)i;
            std::vector<char> indicator(npts, 0);
            for (std::uint64_t i = 0; i < size; ++i) {
                std::uint64_t j = i + rng.below(npts - i);
                std::swap(idx[i], idx[j]);
                indicator[idx[i]] = 1;
            }
            for (std::size_t v = 0; v < nus.size(); ++v) {
                bool snapped = false;
                NoiseSpec spec = NoiseSpec::spherical_snapped(n, nus[v], &snapped);
                rows[a * nus.size() + v] = Row{(int)a, spec.sphere_m, sse_check(s, n, indicator, spec.sphere_m)};
            }
        }
    });

    ExperimentResult r;
    std::ostringstream csv;
    csv << "n,s,nu,set,delta,lhs,bound,ok\n";
    bool all_ok = true;
    for (const auto& row : rows) {
        csv << n << ',' << s << ',' << fmt_double((double)row.m / n) << ',' << row.set << ','
            << fmt_double(row.res.delta) << ',' << fmt_double(row.res.lhs) << ','
            << fmt_double(row.res.bound) << ',' << (row.res.ok ? 1 : 0) << '\n';
        if (row.res.asserted) all_ok = all_ok && row.res.ok;
    }
    emit(r, {"sse-bound", all_ok, std::to_string(rows.size()) + " rows"});
    r.csv = csv.str();
    return r;
}

// ---- sigma goodness --------------------------------------------------------

ExperimentResult run_sigma_goodness(const json& params, std::uint64_t seed, int threads) {
    check_keys(params, {"r", "k", "samples"}, "params");
    int rr = need(params, "r", "params");
    int k = need(params, "k", "params");
    std::uint64_t samples = need(params, "samples", "params");

    std::vector<std::uint64_t> good_per_chunk((std::size_t)thread_count(threads), 0);
    parallel_chunks(samples, threads, [&](std::uint64_t chunk, std::uint64_t begin, std::uint64_t end) {
        std::uint64_t good = 0;
        for (std::uint64_t i = begin; i < end; ++i) {
            Rng rng = Rng::for_trial(seed, i);
            std::vector<int> sigma = sample_sigma(rr, k, rng);
            std::vector<int> fiber(k, 0);
            for (int v : sigma) ++fiber[v];
            bool ok = true;
            for (int b = 0; b < k; ++b) ok = ok && 4 * k * fiber[b] >= rr;
            good += ok;
        }
        good_per_chunk[chunk] += good;
    });
    std::uint64_t good = 0;
    for (auto g : good_per_chunk) good += g;

    ExperimentResult r;
    std::ostringstream csv;
    csv << "r,k,samples,good,rate\n";
    csv << rr << ',' << k << ',' << samples << ',' << good << ','
        << fmt_double((double)good / (double)samples) << '\n';
    emit(r, {"sigma-goodness-positive", good > 0, std::to_string(good) + " good maps"});
    r.csv = csv.str();
    return r;
}

// ---- impossibility ---------------------------------------------------------

ExperimentResult run_impossibility(const json& params, std::uint64_t seed, int threads) {
    check_keys(params, {"n", "l", "trials"}, "params");
    int n = need(params, "n", "params");
    int ell = need(params, "l", "params");
    std::uint64_t trials = need(params, "trials", "params");
    AsymmetricGrid grid = make_asymmetric_grid(n);

    struct Row {
        Frac bad;
        bool bound_ok = false;
        std::uint64_t collisions = 0, verified = 0, in_colspace = 0;
    };
    std::vector<Row> rows(trials);
    parallel_chunks(trials, threads, [&](std::uint64_t, std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t i = begin; i < end; ++i) {
            Rng rng = Rng::for_trial(seed, i);
            QueryMatrix m = QueryMatrix::random(grid, ell, rng);
            Row row;
            row.bad = bad_fraction(m);
            std::uint64_t pow3 = 1;
            for (int e = 0; e < ell; ++e) pow3 *= 3;
            row.bound_ok = row.bad <= Frac(std::min<std::uint64_t>(pow3, n), (std::uint64_t)n);
            for (int col = 0; col < n; ++col) {
                auto j = zeta_collision(m, col);
                if (!j) continue;
                ++row.collisions;
                auto cert = fooling_certificate(m, col, *j, grid);
                ++row.verified; // fooling_certificate verifies exactly or throws
                auto gm = hard_values_on_rows(m, col, grid);
                row.in_colspace += in_column_space(m, grid, gm);
            }
            rows[i] = row;
        }
    });

    ExperimentResult r;
    std::ostringstream csv;
    csv << "n,l,matrix,bad_count,bad_fraction,bound,collisions,certificates_ok,in_colspace\n";
    bool bounds_ok = true, certs_ok = true;
    std::uint64_t pow3 = 1;
    for (int e = 0; e < ell; ++e) pow3 *= 3;
    for (std::uint64_t i = 0; i < trials; ++i) {
        const Row& row = rows[i];
        csv << n << ',' << ell << ',' << i << ',' << row.bad.num << ','
            << fmt_double(row.bad.to_double()) << ',' << fmt_double((double)pow3 / n) << ','
            << row.collisions << ',' << row.verified << ',' << row.in_colspace << '\n';
        bounds_ok = bounds_ok && row.bound_ok;
        certs_ok = certs_ok && row.verified == row.collisions && row.in_colspace == row.collisions;
    }
    emit(r, {"impossibility-bad-fraction", bounds_ok, "3^l/n bound"});
    emit(r, {"impossibility-certificates", certs_ok, "all collisions certified"});
    r.csv = csv.str();
    return r;
}

// ---- oracle crosscheck -----------------------------------------------------

ExperimentResult run_oracle_crosscheck(const json& params, std::uint64_t seed, int threads) {
    check_keys(params, {"s", "n", "codomain", "functions", "exhaustive"}, "params");
    int s = need(params, "s", "params");
    int n = need(params, "n", "params");
    AbelianGroup g = AbelianGroup::parse(need(params, "codomain", "params"));
    bool exhaustive = params.value("exhaustive", false);
    std::uint64_t count;
    GridDomain dom = GridDomain::symmetric(s, n);
    std::uint64_t npts = dom.cardinality_checked();
    if (exhaustive) {
        BigUint total = BigUint::pow(g.size(), npts);
        require(total.fits_u64() && total.to_u64() <= 1'000'000, Errc::budget_exceeded,
                "config: exhaustive crosscheck space too large");
        count = total.to_u64();
    } else {
        count = (std::uint64_t)need(params, "functions", "params");
    }

    std::vector<std::uint8_t> agree(count, 0);
    std::vector<std::uint8_t> degrees(count, 0);
    parallel_chunks(count, threads, [&](std::uint64_t, std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t i = begin; i < end; ++i) {
            std::vector<GroupElem> table(npts);
            if (exhaustive) {
                std::uint64_t code = i;
                for (std::uint64_t p = 0; p < npts; ++p) {
                    table[p] = g.from_index(code % g.size());
                    code /= g.size();
                }
            } else {
                Rng rng = Rng::for_trial(seed, i);
                for (auto& v : table) v = g.random(rng);
            }
            GroupOracle f(dom, g, table);
            int via_interp = junta_degree(f);
            int via_brute = reference::brute_force_junta_degree(dom, g, table);
            agree[i] = via_interp == via_brute;
            degrees[i] = (std::uint8_t)via_interp;
        }
    });

    ExperimentResult r;
    std::ostringstream csv;
    csv << "index,degree,agree\n";
    bool all = true;
    for (std::uint64_t i = 0; i < count; ++i) {
        csv << i << ',' << (int)degrees[i] << ',' << (int)agree[i] << '\n';
        all = all && agree[i];
    }
    emit(r, {"oracle-crosscheck", all, std::to_string(count) + " functions"});
    r.csv = csv.str();
    return r;
}

} // namespace

ExperimentResult run_experiment_json(const std::string& config_json, int threads) {
    json cfg;
    try {
        cfg = json::parse(config_json);
    } catch (const std::exception& e) {
        fail(Errc::parse_error, std::string("config: ") + e.what());
    }
    require(cfg.is_object(), Errc::parse_error, "config: top level must be an object");
    check_keys(cfg, {"version", "kind", "seed", "output", "params"}, "top level");
    require(need(cfg, "version", "top level") == 1, Errc::parse_error, "config: version must be 1");
    std::string kind = need(cfg, "kind", "top level");
    require(cfg.contains("seed") && cfg.at("seed").is_number_unsigned(), Errc::parse_error,
            "config: seed is mandatory");
    std::uint64_t seed = cfg.at("seed");
    json params = cfg.value("params", json::object());

    ExperimentResult r;
    if (kind == "completeness") r = run_completeness(params, seed, threads);
    else if (kind == "soundness-sweep") r = run_soundness(params, seed, threads);
    else if (kind == "sse-sweep") r = run_sse_sweep(params, seed, threads);
    else if (kind == "sigma-goodness") r = run_sigma_goodness(params, seed, threads);
    else if (kind == "impossibility") r = run_impossibility(params, seed, threads);
    else if (kind == "oracle-crosscheck") r = run_oracle_crosscheck(params, seed, threads);
    else fail(Errc::parse_error, "config: unknown kind '" + kind + "'");

    if (cfg.contains("output")) {
        std::string path = cfg.at("output");
        std::ofstream out(path);
        require(static_cast<bool>(out), Errc::io_error, "config: cannot write '" + path + "'");
        out << r.csv;
    }
    return r;
}

ExperimentResult run_experiment_file(const std::string& config_path, int threads) {
    std::ifstream in(config_path);
    require(static_cast<bool>(in), Errc::io_error, "config: cannot open '" + config_path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return run_experiment_json(buf.str(), threads);
}

} // namespace gridtest
