#include "gridtest/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

#include "gridtest/distance.hpp"
#include "gridtest/hitting_set.hpp"
#include "gridtest/lower_bound.hpp"
#include "gridtest/noise_fourier.hpp"
#include "gridtest/parallel.hpp"
#include "gridtest/reference.hpp"
#include "gridtest/testers.hpp"

namespace gridtest {

namespace {

constexpr std::uint64_t kSeed = 0x6772696474657374ull; // fixed master seed

struct Check {
    bool pass = true;
    std::ostringstream detail;

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            pass = false;
            if (detail.tellp() > 0) detail << "; ";
            detail << what;
        }
    }
    void note(const std::string& what) {
        if (detail.tellp() > 0) detail << "; ";
        detail << what;
    }
};

// 1. junta tester completeness: members over Z_3^8 -> Z_5, d in {1,2},
//    k in {4,6}, both forms, zero rejections
Check criterion_junta_completeness(int threads) {
    Check c;
    AbelianGroup g = AbelianGroup::cyclic(5);
    const int s = 3, n = 8;
    std::uint64_t total_trials = 0;
    for (int d : {1, 2})
        for (int k : {4, 6}) {
            JuntaDegTester tester(d, k);
            for (int form = 0; form < 2; ++form) {
                auto est = estimate_rejection(
                    [&](Rng& rng) {
                        JuntaPolynomial member = JuntaPolynomial::random(g, s, n, d, rng);
                        GroupOracle f = member.oracle();
                        return form == 0 ? tester.run_recursive(f, rng)
                                         : tester.run_rephrased(f, rng);
                    },
                    1000, kSeed + d * 16 + k * 2 + form, threads);
                total_trials += est.trials;
                c.expect(est.rejections == 0,
                         "d=" + std::to_string(d) + " k=" + std::to_string(k) +
                             (form ? " rephrased" : " recursive") + ": " +
                             std::to_string(est.rejections) + " rejections");
            }
        }
    c.note(std::to_string(total_trials) + " member trials, all accepted");
    return c;
}

// 2. Deg tester completeness: degree-1 members over {0,1,2}^10 in F_7, t=6
Check criterion_deg_completeness(int threads) {
    Check c;
    PrimeField fp(7);
    const int s = 3, n = 10, d = 1, t = 6;
    EvalSet S = EvalSet::prefix(fp, s);
    int k = resolve_locality(d, s, 0, false, 1);
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
        1000, kSeed + 201, threads);
    c.expect(est.rejections == 0, std::to_string(est.rejections) + " rejections");
    c.note("1000 degree-1 members, all accepted (k=" + std::to_string(k) + ", t=6)");
    return c;
}

// 3. soundness positivity with arm attribution
Check criterion_soundness(int threads) {
    Check c;
    PrimeField fp(7);
    const int s = 3, n = 10, d = 1, t = 6;
    EvalSet S = EvalSet::prefix(fp, s);
    int k = resolve_locality(d, s, 0, false, 1);
    DegTester tester(S, n, d, k, t);
    GridDomain dom = GridDomain::symmetric(s, n);

    // x_1(x_1 - 1): junta-degree 1 but not degree 1 -> weak arm must reject
    FieldOracle quad(dom, fp, [&S, fp](const GridPoint& x) {
        Fp v = S.elem(x[0]);
        return fp.mul(v, fp.sub(v, 1));
    });
    auto est1 = estimate_rejection([&](Rng& rng) { return tester.run(quad, rng); }, 2000,
                                   kSeed + 301, threads);
    double lo, hi;
    wilson_ci(est1.rejections, est1.trials, lo, hi);
    c.expect(est1.rejections > 0 && lo > 0, "x1(x1-1): rejection lower bound not positive");
    c.expect(est1.junta_arm_rejections == 0, "x1(x1-1): junta arm rejected a junta-degree-1 input");
    double wlo, whi;
    wilson_ci(est1.weak_arm_rejections, est1.trials, wlo, whi);
    c.expect(est1.weak_arm_rejections == est1.rejections && wlo > 0,
             "x1(x1-1): rejections not attributed to the weak arm");
    c.note("x1(x1-1) rate " + std::to_string(est1.rate) + " (all weak-arm)");

    // two-coordinate indicator: junta-degree 2 -> junta arm must reject
    FieldOracle ind(dom, fp, [](const GridPoint& x) -> Fp {
        return (x[0] == 1 && x[1] == 1) ? 1 : 0;
    });
    auto est2 = estimate_rejection([&](Rng& rng) { return tester.run(ind, rng); }, 2000,
                                   kSeed + 302, threads);
    double jlo, jhi;
    wilson_ci(est2.junta_arm_rejections, est2.trials, jlo, jhi);
    c.expect(est2.junta_arm_rejections > 0 && jlo > 0,
             "indicator: junta-arm rejection lower bound not positive");
    c.note("junta-degree-2 indicator junta-arm rate " +
           std::to_string((double)est2.junta_arm_rejections / est2.trials));
    return c;
}

// 4. junta_degree via interpolation == definition-based brute force
Check criterion_oracle_equivalence(int threads) {
    Check c;
    {
        // all 81 functions Z_2^2 -> Z_3
        GridDomain dom = GridDomain::symmetric(2, 2);
        AbelianGroup g = AbelianGroup::cyclic(3);
        int mismatches = 0;
        for (std::uint64_t code = 0; code < 81; ++code) {
            std::uint64_t cc = code;
            std::vector<GroupElem> table(4);
            for (auto& v : table) {
                v = g.from_index(cc % 3);
                cc /= 3;
            }
            GroupOracle f(dom, g, table);
            if (junta_degree(f) != reference::brute_force_junta_degree(dom, g, table)) ++mismatches;
        }
        c.expect(mismatches == 0, std::to_string(mismatches) + " mismatches on Z_2^2 -> Z_3");
    }
    {
        GridDomain dom = GridDomain::symmetric(3, 3);
        AbelianGroup g = AbelianGroup::cyclic(2);
        std::vector<int> bad(thread_count(threads), 0);
        parallel_chunks(1000, threads, [&](std::uint64_t chunk, std::uint64_t b, std::uint64_t e) {
            for (std::uint64_t i = b; i < e; ++i) {
                Rng rng = Rng::for_trial(kSeed + 401, i);
                std::vector<GroupElem> table(27);
                for (auto& v : table) v = g.random(rng);
                GroupOracle f(dom, g, table);
                if (junta_degree(f) != reference::brute_force_junta_degree(dom, g, table))
                    ++bad[chunk];
            }
        });
        int mismatches = 0;
        for (int b : bad) mismatches += b;
        c.expect(mismatches == 0, std::to_string(mismatches) + " mismatches on Z_3^3 -> Z_2");
    }
    c.note("81 exhaustive + 1000 random functions agree");
    return c;
}

// 5. non-root count lower bound
Check criterion_nonroots(int) {
    Check c;
    AbelianGroup g = AbelianGroup::cyclic(5);
    std::uint64_t checked = 0;
    for (int s : {2, 3})
        for (int n : {3, 4})
            for (int d : {1, 2}) {
                Rng rng(kSeed + 500 + s * 100 + n * 10 + d);
                BigUint bound = BigUint::pow((std::uint64_t)s, (std::uint64_t)(n - d));
                for (int trial = 0; trial < 1000; ++trial) {
                    JuntaPolynomial p = JuntaPolynomial::random(g, s, n, d, rng);
                    while (p.zero()) p = JuntaPolynomial::random(g, s, n, d, rng);
                    if (!(p.count_nonroots() >= bound)) {
                        c.expect(false, "violation at s=" + std::to_string(s) +
                                            " n=" + std::to_string(n) + " d=" + std::to_string(d));
                        break;
                    }
                    ++checked;
                }
            }
    c.note(std::to_string(checked) + " nonzero junta-polynomials >= s^(n-d)");
    return c;
}

// 6. exact distance of x_1(x_1-1) from degree-1
Check criterion_hard_distance(int) {
    Check c;
    PrimeField fp(7);
    for (int n : {2, 3}) {
        EvalSet S = EvalSet::prefix(fp, 3);
        GridDomain dom = GridDomain::symmetric(3, n);
        FieldOracle f(dom, fp, [&S, fp](const GridPoint& x) {
            Fp v = S.elem(x[0]);
            return fp.mul(v, fp.sub(v, 1));
        });
        auto res = exact_distance_degree(f, S, 1);
        c.expect(res.distance >= Frac(1, 3),
                 "n=" + std::to_string(n) + ": distance " + res.distance.str() + " < 1/3");
        c.note("n=" + std::to_string(n) + ": delta'_1 = " + res.distance.str());
    }
    return c;
}

// 7. small-set expansion over Z_3^6, spherical nu in {1/3, 1/2, 2/3, 1}
Check criterion_sse(int threads) {
    Check c;
    const int s = 3, n = 6;
    GridDomain dom = GridDomain::symmetric(s, n);
    std::uint64_t npts = dom.cardinality_checked();
    const int sets = 200;
    std::vector<int> radii{2, 3, 4, 6};
    std::vector<char> ok((std::size_t)sets, 1);
    std::vector<double> worst((std::size_t)sets, -1e300);
    parallel_chunks(sets, threads, [&](std::uint64_t, std::uint64_t b, std::uint64_t e) {
        for (std::uint64_t a = b; a < e; ++a) {
            Rng rng = Rng::for_trial(kSeed + 701, a);
            double density = 0.005 + (0.5 - 0.005) * rng.uniform01();
            std::uint64_t size = std::max<std::uint64_t>(1, (std::uint64_t)(density * npts));
            std::vector<std::uint32_t> idx(npts);
            for (std::uint64_t i = 0; i < npts; ++i) idx[i] = (std::uint32_t)i;
            std::vector<char> indicator(npts, 0);
            for (std::uint64_t i = 0; i < size; ++i) {
                std::uint64_t j = i + rng.below(npts - i);
                std::swap(idx[i], idx[j]);
                indicator[idx[i]] = 1;
            }
            for (int m : radii) {
                SseResult r = sse_check(s, n, indicator, m);
                if (!r.ok) ok[a] = 0;
                worst[a] = std::max(worst[a], r.lhs - r.bound);
            }
        }
    });
    int violations = 0;
    double margin = -1e9;
    for (int a = 0; a < sets; ++a) {
        if (!ok[a]) ++violations;
        margin = std::max(margin, worst[a]);
    }
    c.expect(violations == 0, std::to_string(violations) + " sets violated the bound");
    c.note("200 sets x 4 radii, max(lhs - bound) = " + std::to_string(margin));
    return c;
}

// 8. character expectations, exact spherical + bernoulli vs rho^h
Check criterion_char_expectations(int threads) {
    Check c;
    std::uint64_t spherical_checked = 0, bernoulli_checked = 0;
    bool spherical_ok = true;
    for (int s : {3, 4}) {
        for (int n = 1; n <= 5 && spherical_ok; ++n) {
            GridDomain dom = GridDomain::symmetric(s, n);
            std::uint64_t total = dom.cardinality_checked();
            std::vector<char> fails(thread_count(threads), 0);
            std::vector<std::uint64_t> counts(thread_count(threads), 0);
            parallel_chunks(total, threads, [&](std::uint64_t chunk, std::uint64_t b, std::uint64_t e) {
                for (std::uint64_t ai = b; ai < e; ++ai) {
                    GridPoint alpha = dom.point_at(ai);
                    int h = hamming_weight(alpha);
                    for (int m = 0; m <= n; ++m) {
                        BigRat closed = spherical_char_expectation_exact(h, m, n, s);
                        BigRat brute = reference::sphere_char_expectation_bruteforce(alpha.x, s, m);
                        if (!(closed == brute)) fails[chunk] = 1;
                        ++counts[chunk];
                    }
                }
            });
            for (std::size_t t = 0; t < fails.size(); ++t) {
                if (fails[t]) spherical_ok = false;
                spherical_checked += counts[t];
            }
        }
    }
    c.expect(spherical_ok, "spherical closed form != cyclotomic brute force");

    // bernoulli: E[chi_alpha(mu)] over mu ~ D_nu^n equals rho^#alpha
    double worst = 0;
    for (int s : {3, 4})
        for (int n = 1; n <= 4; ++n)
            for (double nu : {0.25, 0.5, (double)(s - 1) / s}) {
                GridDomain dom = GridDomain::symmetric(s, n);
                double stay = 1.0 - nu, move = nu / (s - 1);
                GridPoint alpha = dom.first_point();
                do {
                    Cplx acc = 0;
                    GridPoint mu = dom.first_point();
                    do {
                        double pr = 1.0;
                        double phase = 0;
                        for (int i = 0; i < n; ++i) {
                            pr *= mu[i] == 0 ? stay : move;
                            phase += 2.0 * std::numbers::pi * alpha[i] * mu[i] / s;
                        }
                        acc += pr * Cplx(std::cos(phase), std::sin(phase));
                    } while (dom.advance(mu));
                    double want = std::pow(noise_rho(nu, s), hamming_weight(alpha));
                    worst = std::max(worst, std::abs(acc - Cplx(want, 0)));
                    ++bernoulli_checked;
                } while (dom.advance(alpha));
            }
    c.expect(worst <= 1e-12, "bernoulli deviation " + std::to_string(worst));
    c.note(std::to_string(spherical_checked) + " spherical exact + " +
           std::to_string(bernoulli_checked) + " bernoulli pairs, max dev " + std::to_string(worst));
    return c;
}

// 9. hitting set construction and verification at k=16
Check criterion_hitting_set(int) {
    Check c;
    AbelianGroup z5 = AbelianGroup::cyclic(5);
    for (int d : {1, 2})
        for (int s : {2, 3}) {
            Rng rng(kSeed + 900 + d * 10 + s);
            HittingSet h = build_hitting_set(16, d, s, rng, 1000);
            c.expect(verify_hitting_set(h, s), "invariants failed at d=" + std::to_string(d) +
                                                   " s=" + std::to_string(s));
            c.expect(verify_one_point_separation(h, s, z5, rng, 1000),
                     "sign-sum identity failed at d=" + std::to_string(d) +
                         " s=" + std::to_string(s));
        }
    c.note("k=16, d in {1,2}, s in {2,3}: exhaustive invariants + 1000 random Z_5 junta-polys each");
    return c;
}

// 10. graded basis contract on B({0,1},4)^2 and the dimension inequality
Check criterion_graded_basis(int) {
    Check c;
    PrimeField fp(7);
    EvalSet S01(fp, {0, 1});
    PointList T = balanced_power(S01, 4, 2);
    GradedBasis basis = graded_basis(fp, T, 2);
    c.expect(basis.elements.size() == T.size(), "basis does not span");

    Rng rng(kSeed + 1001);
    int member_fail = 0, nonmember_fail = 0;
    for (int trial = 0; trial < 100; ++trial) {
        // random degree-1 member restricted to T
        ReducedPolynomial p = ReducedPolynomial::random(fp, 8, 2, 1, rng);
        std::vector<Fp> fv(T.size());
        for (std::size_t i = 0; i < T.size(); ++i) fv[i] = p.evaluate(T[i]);
        auto coords = basis.coordinates(fp, fv);
        for (std::size_t i = 0; i < coords.size(); ++i)
            if (basis.tags[i] > 1 && coords[i] != 0) ++member_fail;

        // random non-member
        std::vector<Fp> gv(T.size());
        do {
            for (auto& v : gv) v = fp.random(rng);
        } while (is_degree_d_on(fp, T, gv, 1, 2));
        auto gcoords = basis.coordinates(fp, gv);
        bool has_high = false;
        for (std::size_t i = 0; i < gcoords.size(); ++i)
            if (basis.tags[i] > 1 && gcoords[i] != 0) has_high = true;
        if (!has_high) ++nonmember_fail;
    }
    c.expect(member_fail == 0, std::to_string(member_fail) + " member coordinates above degree 1");
    c.expect(nonmember_fail == 0,
             std::to_string(nonmember_fail) + " non-members with clean high coordinates");

    for (int s : {2, 3, 4}) {
        int t = s * s * s;
        BigUint lhs = balanced_size(s, t);
        BigUint rhs = BigUint::pow((std::uint64_t)(s - 1), (std::uint64_t)t);
        c.expect(lhs > rhs, "balanced_size(" + std::to_string(s) + ", s^3) not > (s-1)^(s^3)");
    }
    c.note("200 functions separated; |B(s,s^3)| > (s-1)^(s^3) for s in {2,3,4}");
    return c;
}

// 11. lifting preserves distance on asymmetric grids
Check criterion_lifting(int threads) {
    Check c;
    AbelianGroup z2 = AbelianGroup::cyclic(2);
    struct Cfg {
        std::vector<Coord> sizes;
        const char* name;
    };
    for (const Cfg& cfg : {Cfg{{2, 3, 2, 3}, "(2,3)^2"}, Cfg{{2, 3, 4}, "(2,3,4)"}}) {
        GridDomain dom(cfg.sizes);
        std::uint64_t npts = dom.cardinality_checked();
        std::vector<char> ok(20, 1);
        parallel_chunks(20, threads, [&](std::uint64_t, std::uint64_t b, std::uint64_t e) {
            for (std::uint64_t i = b; i < e; ++i) {
                Rng rng = Rng::for_trial(kSeed + 1101, i);
                std::vector<GroupElem> table(npts);
                for (auto& v : table) v = z2.random(rng);
                GroupOracle f(dom, z2, table);
                Frac direct = exact_distance_junta(f, 1).distance;
                GroupOracle lifted = lift_general_grid(f);
                Frac via_lift = exact_distance_junta(lifted.densified(), 1).distance;
                ok[i] = direct == via_lift;
            }
        });
        int bad = 0;
        for (char o : ok) bad += !o;
        c.expect(bad == 0, std::string(cfg.name) + ": " + std::to_string(bad) + " mismatches");
        c.note(std::string(cfg.name) + ": 20 random f, delta_1 preserved exactly");
    }
    return c;
}

// 12. lower-bound demo: bad fractions and fooling certificates
Check criterion_impossibility(int threads) {
    Check c;
    for (int n : {27, 81, 243})
        for (int ell : {1, 2, 3}) {
            AsymmetricGrid grid = make_asymmetric_grid(n);
            std::uint64_t pow3 = 1;
            for (int e = 0; e < ell; ++e) pow3 *= 3;
            Frac bound(std::min<std::uint64_t>(pow3, (std::uint64_t)n), (std::uint64_t)n);
            std::vector<char> ok(1000, 1);
            parallel_chunks(1000, threads, [&](std::uint64_t, std::uint64_t b, std::uint64_t e) {
                for (std::uint64_t i = b; i < e; ++i) {
                    Rng rng = Rng::for_trial(kSeed + 1200 + n + ell, i);
                    QueryMatrix m = QueryMatrix::random(grid, ell, rng);
                    if (!(bad_fraction(m) <= bound)) {
                        ok[i] = 0;
                        continue;
                    }
                    // column-space span, once per matrix
                    SpanReducer colspan(grid.field);
                    for (int col = 0; col < n; ++col) {
                        std::vector<Fp> cv(ell);
                        for (int r = 0; r < ell; ++r) cv[r] = grid.value(col, m.at(r, col));
                        colspan.add(std::move(cv));
                    }
                    for (int col = 0; col < n; ++col) {
                        auto j = zeta_collision(m, col);
                        if (!j) continue;
                        try {
                            fooling_certificate(m, col, *j, grid);
                        } catch (const Error&) {
                            ok[i] = 0;
                            break;
                        }
                        if (!colspan.contains(hard_values_on_rows(m, col, grid))) {
                            ok[i] = 0;
                            break;
                        }
                    }
                }
            });
            int bad = 0;
            for (char o : ok) bad += !o;
            c.expect(bad == 0, "n=" + std::to_string(n) + " l=" + std::to_string(ell) + ": " +
                                   std::to_string(bad) + " failures");
        }
    c.note("9000 matrices: bad fraction <= 3^l/n, every collision certified in colspace");
    return c;
}

// 13. recursive and rephrased junta testers agree within 3 sigma
Check criterion_form_equivalence(int threads) {
    Check c;
    AbelianGroup z3 = AbelianGroup::cyclic(3);
    const int s = 3, n = 5, d = 1, k = 4;
    JuntaDegTester tester(d, k);

    // five fixed non-members of the junta-degree-1 family
    std::vector<JuntaPolynomial> hard;
    Rng gen(kSeed + 1301);
    while ((int)hard.size() < 5) {
        JuntaPolynomial p = JuntaPolynomial::random(z3, s, n, 2 + (int)hard.size() % 2, gen);
        if (p.degree() > d) hard.push_back(std::move(p));
    }

    const std::uint64_t trials = 10000;
    for (std::size_t i = 0; i < hard.size(); ++i) {
        GroupOracle f = hard[i].oracle();
        auto rec = estimate_rejection([&](Rng& rng) { return tester.run_recursive(f, rng); },
                                      trials, kSeed + 1310 + i, threads);
        auto reph = estimate_rejection([&](Rng& rng) { return tester.run_rephrased(f, rng); },
                                       trials, kSeed + 1320 + i, threads);
        double pooled = (double)(rec.rejections + reph.rejections) / (double)(2 * trials);
        double sigma = std::sqrt(pooled * (1.0 - pooled) * (2.0 / (double)trials));
        double diff = std::abs(rec.rate - reph.rate);
        c.expect(diff <= 3.0 * sigma + 1e-12,
                 "function " + std::to_string(i) + ": |" + std::to_string(rec.rate) + " - " +
                     std::to_string(reph.rate) + "| > 3 sigma");
    }
    c.note("5 non-members x 10^4 trials per form, all within 3 sigma");
    return c;
}

} // namespace

std::vector<CriterionResult> run_acceptance(std::ostream& out, int threads, const std::string& only) {
    struct Entry {
        const char* name;
        Check (*fn)(int);
    };
    const Entry entries[] = {
        {"completeness-junta", criterion_junta_completeness},
        {"completeness-deg", criterion_deg_completeness},
        {"soundness-positivity", criterion_soundness},
        {"oracle-equivalence", criterion_oracle_equivalence},
        {"nonroot-count", criterion_nonroots},
        {"hard-function-distance", criterion_hard_distance},
        {"small-set-expansion", criterion_sse},
        {"char-expectations", criterion_char_expectations},
        {"hitting-set", criterion_hitting_set},
        {"graded-basis", criterion_graded_basis},
        {"lifting-distance", criterion_lifting},
        {"impossibility-demo", criterion_impossibility},
        {"tester-form-equivalence", criterion_form_equivalence},
    };

    std::vector<CriterionResult> results;
    int id = 0;
    for (const Entry& e : entries) {
        ++id;
        if (!only.empty() && std::string(e.name).find(only) == std::string::npos) continue;
        auto t0 = std::chrono::steady_clock::now();
        CriterionResult r;
        r.id = id;
        r.name = e.name;
        try {
            Check c = e.fn(threads);
            r.pass = c.pass;
            r.detail = c.detail.str();
        } catch (const std::exception& ex) {
            r.pass = false;
            r.detail = std::string("exception: ") + ex.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        char line[512];
        std::snprintf(line, sizeof line, "[%2d/13] %s %-24s (%.1fs) %s", r.id,
                      r.pass ? "PASS" : "FAIL", r.name.c_str(), r.seconds, r.detail.c_str());
        out << line << '\n';
        out.flush();
        results.push_back(std::move(r));
    }
    return results;
}

} // namespace gridtest
