#include "gridtest/testers.hpp"

#include <cmath>

#include "gridtest/parallel.hpp"

namespace gridtest {

int resolve_locality(int d, int s, int k_or_zero, bool paper_params, int psi) {
    int k;
    if (k_or_zero > 0) {
        k = k_or_zero;
    } else if (paper_params) {
        require(psi >= 1, Errc::invalid_argument, "locality: psi must be >= 1");
        k = psi * s * s * std::max(d, 1);
    } else {
        k = std::max(d + 2, 8);
    }
    require(k >= 1 && k >= d + 1, Errc::invalid_argument, "locality: need k >= max(1, d+1)");
    return k;
}

int resolve_block_length(const EvalSet& S, int t_or_zero, bool paper_params) {
    int s = S.size();
    int t;
    if (t_or_zero > 0) {
        t = t_or_zero;
        require(t % s == 0, Errc::invalid_argument, "block length: t must be a multiple of s");
    } else if (paper_params) {
        t = s * s * s;
    } else {
        t = default_block_length(S);
    }
    return t;
}

std::vector<int> sample_sigma(int r, int k, Rng& rng) {
    require(k >= 1 && r >= k, Errc::invalid_argument, "sigma: need r >= k >= 1");
    std::vector<int> sigma(r);
    for (int i = 0; i < k; ++i) sigma[i] = i;
    for (int i = k; i < r; ++i) sigma[i] = sigma[rng.below((std::uint64_t)i)];
    return sigma;
}

JuntaDegTester::JuntaDegTester(int d, int k, std::uint64_t budget) : d_(d), k_(k), budget_(budget) {
    require(d >= 0, Errc::invalid_argument, "junta tester: d must be >= 0");
    require(k >= 1 && k >= d + 1, Errc::invalid_argument, "junta tester: need k >= max(1, d+1)");
}

TestVerdict JuntaDegTester::finish(const GroupOracle& f, std::vector<VarAssign> assigns,
                                   int r_final) const {
    int s = f.domain().size(0);
    GridDomain cube = GridDomain::symmetric(s, r_final);
    std::uint64_t npts = cube.cardinality_checked(budget_);

    std::vector<GroupElem> table;
    table.reserve(npts);
    std::uint64_t queries = 0;
    GridPoint x(std::vector<Coord>(f.domain().arity(), 0));
    cube.for_each_point(
        [&](const GridPoint& y) {
            for (std::size_t v = 0; v < assigns.size(); ++v)
                x.x[v] = assigns[v].perm[y[assigns[v].bucket]];
            table.push_back(f(x));
            ++queries;
        },
        budget_);

    GroupOracle restricted(cube, f.codomain(), std::move(table));
    TestVerdict verdict;
    verdict.accept = junta_degree(restricted, budget_) <= d_;
    verdict.queries = queries;
    verdict.assigns = std::move(assigns);
    verdict.restricted_arity = r_final;
    return verdict;
}

TestVerdict JuntaDegTester::run_recursive(const GroupOracle& f, Rng& rng) const {
    require(f.domain().symmetric_shape(), Errc::invalid_argument,
            "junta tester: symmetric grid required (lift general grids first)");
    int n = f.domain().arity();
    int s = f.domain().size(0);

    std::vector<int> live(n);
    for (int v = 0; v < n; ++v) live[v] = v;
    struct Death {
        int j, i;
        std::vector<std::uint8_t> perm;
    };
    std::vector<Death> deaths;
    while ((int)live.size() > k_) {
        int r = (int)live.size();
        int ai = (int)rng.below((std::uint64_t)r);
        int bj = (int)rng.below((std::uint64_t)(r - 1));
        if (bj >= ai) ++bj;
        Death dth{live[bj], live[ai], rng.permutation(s)};
        deaths.push_back(std::move(dth));
        live.erase(live.begin() + bj);
    }

    int r_final = (int)live.size();
    std::vector<VarAssign> assigns(n);
    std::vector<std::uint8_t> identity(s);
    for (int v = 0; v < s; ++v) identity[v] = (std::uint8_t)v;
    for (int b = 0; b < r_final; ++b) assigns[live[b]] = VarAssign{b, identity};
    // dead variables resolve in reverse order of death: the identification
    // target of each record is alive strictly later than the dying variable
    for (auto it = deaths.rbegin(); it != deaths.rend(); ++it) {
        const VarAssign& src = assigns[it->i];
        VarAssign va;
        va.bucket = src.bucket;
        va.perm.resize(s);
        for (int y = 0; y < s; ++y) va.perm[y] = it->perm[src.perm[y]];
        assigns[it->j] = std::move(va);
    }
    return finish(f, std::move(assigns), r_final);
}

TestVerdict JuntaDegTester::run_rephrased(const GroupOracle& f, Rng& rng) const {
    require(f.domain().symmetric_shape(), Errc::invalid_argument,
            "junta tester: symmetric grid required (lift general grids first)");
    int n = f.domain().arity();
    int s = f.domain().size(0);
    if (n <= k_) {
        // brute-force branch, identical to the recursive form
        std::vector<VarAssign> assigns(n);
        std::vector<std::uint8_t> identity(s);
        for (int v = 0; v < s; ++v) identity[v] = (std::uint8_t)v;
        for (int v = 0; v < n; ++v) assigns[v] = VarAssign{v, identity};
        return finish(f, std::move(assigns), n);
    }

    require(n <= 255, Errc::invalid_argument, "junta tester: arity too large");
    std::vector<std::vector<std::uint8_t>> pis(n);
    for (int v = 0; v < n; ++v) pis[v] = rng.permutation(s);
    std::vector<std::uint8_t> mu_raw = rng.permutation(n);
    std::vector<int> mu_inv(n); // mu_inv[v] = position i with mu(i) = v
    for (int i = 0; i < n; ++i) mu_inv[mu_raw[i]] = i;
    std::vector<int> sigma = sample_sigma(n, k_, rng);

    std::vector<VarAssign> assigns(n);
    for (int v = 0; v < n; ++v) assigns[v] = VarAssign{sigma[mu_inv[v]], pis[v]};
    return finish(f, std::move(assigns), k_);
}

WeakDegTester::WeakDegTester(EvalSet S, int n, int d, int t, std::uint64_t budget)
    : S_(std::move(S)), n_(n), d_(d), t_(t), span_(S_.field()) {
    require(n >= 1 && d >= 0, Errc::invalid_argument, "weak-deg: bad parameters");
    int s = S_.size();
    require(t >= 1 && t % s == 0, Errc::invalid_argument, "weak-deg: t must be a positive multiple of s");

    int blocks = d + 1;
    // symbol-tuple enumeration of B(S,t)^(d+1); budget errors report the count
    BigUint per_block = balanced_size(s, t);
    BigUint total(1);
    for (int b = 0; b < blocks; ++b) total *= per_block;
    if (!total.fits_u64() || total.to_u64() > budget)
        fail(Errc::budget_exceeded, "weak-deg: restriction needs " + total.str() +
                                        " queries, budget is " + std::to_string(budget));

    std::vector<std::vector<std::uint8_t>> block_points;
    {
        BalancedSet B(S_, t);
        std::vector<Fp> to_sym(S_.field().p(), 0);
        for (int i = 0; i < s; ++i) to_sym[S_.elem(i)] = (Fp)i;
        B.for_each([&](const std::vector<Fp>& pt) {
            std::vector<std::uint8_t> sym(t);
            for (int i = 0; i < t; ++i) sym[i] = (std::uint8_t)to_sym[pt[i]];
            block_points.push_back(std::move(sym));
        });
    }
    std::uint64_t count = total.to_u64();
    points_sym_.reserve(count);
    std::vector<std::size_t> odo(blocks, 0);
    for (;;) {
        std::vector<std::uint8_t> flat;
        flat.reserve((std::size_t)t * blocks);
        for (int b = 0; b < blocks; ++b)
            flat.insert(flat.end(), block_points[odo[b]].begin(), block_points[odo[b]].end());
        points_sym_.push_back(std::move(flat));
        int i = blocks - 1;
        while (i >= 0 && ++odo[i] == block_points.size()) {
            odo[i] = 0;
            --i;
        }
        if (i < 0) break;
    }

    // span of degree-<=d monomials (individual degree <= s-1) on the power
    PointList T_val(points_sym_.size());
    for (std::size_t i = 0; i < points_sym_.size(); ++i) {
        T_val[i].resize(points_sym_[i].size());
        for (std::size_t j = 0; j < points_sym_[i].size(); ++j)
            T_val[i][j] = S_.elem(points_sym_[i][j]);
    }
    const PrimeField& field = S_.field();
    for (const auto& e : monomials_up_to(K(), s, d)) {
        std::vector<Fp> v(T_val.size());
        for (std::size_t i = 0; i < T_val.size(); ++i) {
            Fp m = field.one();
            for (int j = 0; j < K(); ++j)
                if (e[j]) m = field.mul(m, field.pow(T_val[i][j], e[j]));
            v[i] = m;
        }
        span_.add(std::move(v));
    }
}

TestVerdict WeakDegTester::run(const FieldOracle& f, Rng& rng) const {
    require(f.domain().symmetric_shape() && f.domain().arity() == n_ &&
                f.domain().size(0) == S_.size(),
            Errc::domain_mismatch, "weak-deg: oracle domain must be S^n");
    require(f.codomain().same(S_.field()), Errc::domain_mismatch, "weak-deg: field mismatch");

    std::vector<int> mu(n_);
    for (int i = 0; i < n_; ++i) mu[i] = (int)rng.below((std::uint64_t)K());

    std::vector<Fp> fprime(points_sym_.size());
    std::uint64_t queries = 0;
    GridPoint x(std::vector<Coord>(n_, 0));
    for (std::size_t idx = 0; idx < points_sym_.size(); ++idx) {
        const auto& y = points_sym_[idx];
        for (int i = 0; i < n_; ++i) x.x[i] = y[mu[i]];
        fprime[idx] = f(x);
        ++queries;
    }

    TestVerdict verdict;
    verdict.accept = span_.contains(fprime);
    verdict.queries = queries;
    verdict.mu = std::move(mu);
    return verdict;
}

DegTester::DegTester(EvalSet S, int n, int d, int k, int t, std::uint64_t budget)
    : S_(std::move(S)), junta_(d, k, budget), weak_(S_, n, d, t, budget) {}

TestVerdict DegTester::run(const FieldOracle& f, Rng& rng) const {
    GroupOracle view = additive_group_view(f);
    TestVerdict junta_verdict = junta_.run_rephrased(view, rng);
    TestVerdict weak_verdict = weak_.run(f, rng);

    TestVerdict verdict;
    verdict.accept = junta_verdict.accept && weak_verdict.accept;
    verdict.queries = junta_verdict.queries + weak_verdict.queries;
    verdict.junta_arm = junta_verdict.accept ? 1 : 0;
    verdict.weak_arm = weak_verdict.accept ? 1 : 0;
    verdict.assigns = std::move(junta_verdict.assigns);
    verdict.restricted_arity = junta_verdict.restricted_arity;
    verdict.mu = std::move(weak_verdict.mu);
    return verdict;
}

GroupOracle lift_general_grid(const GroupOracle& f) {
    const GridDomain& dom = f.domain();
    int n = dom.arity();
    std::uint64_t L = 1;
    Coord smax = 1;
    for (int i = 0; i < n; ++i) {
        L = std::lcm(L, (std::uint64_t)dom.size(i));
        smax = std::max(smax, dom.size(i));
    }
    BigUint cap = BigUint::factorial((std::uint32_t)smax);
    require(BigUint(L) <= cap && L <= 1'000'000, Errc::domain_too_large,
            "lift: lcm " + std::to_string(L) + " exceeds the alphabet cap");

    GridDomain lifted = GridDomain::symmetric((int)L, n);
    std::vector<Coord> sizes = dom.sizes();
    return GroupOracle(lifted, f.codomain(), [f, sizes](const GridPoint& z) {
        GridPoint x;
        x.x.resize(z.arity());
        for (int i = 0; i < z.arity(); ++i) x.x[i] = z[i] % sizes[i];
        return f(x);
    });
}

void wilson_ci(std::uint64_t successes, std::uint64_t trials, double& lo, double& hi) {
    if (trials == 0) {
        lo = 0;
        hi = 1;
        return;
    }
    const double z = 1.959963984540054;
    double n = (double)trials, p = (double)successes / n;
    double z2 = z * z;
    double denom = 1.0 + z2 / n;
    double center = p + z2 / (2.0 * n);
    double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
    lo = std::max(0.0, (center - half) / denom);
    hi = std::min(1.0, (center + half) / denom);
}

RejectionEstimate estimate_rejection(const std::function<TestVerdict(Rng&)>& trial,
                                     std::uint64_t trials, std::uint64_t master_seed, int threads) {
    require(trials >= 1, Errc::invalid_argument, "estimate: need at least one trial");
    int nthreads = thread_count(threads);

    struct Acc {
        std::uint64_t rejections = 0, queries = 0, junta_rej = 0, weak_rej = 0;
    };
    std::vector<Acc> acc((std::size_t)std::min<std::uint64_t>(nthreads, trials));
    parallel_chunks(trials, nthreads, [&](std::uint64_t chunk, std::uint64_t begin, std::uint64_t end) {
        Acc local;
        for (std::uint64_t i = begin; i < end; ++i) {
            Rng rng = Rng::for_trial(master_seed, i);
            TestVerdict v = trial(rng);
            local.rejections += !v.accept;
            local.queries += v.queries;
            local.junta_rej += v.junta_arm == 0;
            local.weak_rej += v.weak_arm == 0;
        }
        acc[chunk] = local;
    });

    RejectionEstimate est;
    est.trials = trials;
    std::uint64_t total_queries = 0;
    for (const auto& a : acc) {
        est.rejections += a.rejections;
        total_queries += a.queries;
        est.junta_arm_rejections += a.junta_rej;
        est.weak_arm_rejections += a.weak_rej;
    }
    est.rate = (double)est.rejections / (double)trials;
    est.mean_queries = (double)total_queries / (double)trials;
    wilson_ci(est.rejections, trials, est.ci_lo, est.ci_hi);
    return est;
}

} // namespace gridtest
