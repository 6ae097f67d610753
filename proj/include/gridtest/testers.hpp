#ifndef GRIDTEST_TESTERS_HPP
#define GRIDTEST_TESTERS_HPP

#include <functional>
#include <vector>

#include "gridtest/field_poly.hpp"
#include "gridtest/junta_poly.hpp"
#include "gridtest/oracle.hpp"
#include "gridtest/rng.hpp"

namespace gridtest {

/// Locality for the junta tester: explicit k when given; with paper_params
/// set, k = psi*s^2*max(d,1); else max(d+2, 8).
int resolve_locality(int d, int s, int k_or_zero, bool paper_params, int psi);

/// Block length for the weak degree tester: explicit t when given; with
/// paper_params set, t = s^3; else the smallest verified multiple of s.
int resolve_block_length(const EvalSet& S, int t_or_zero, bool paper_params);

/// x_v = perm[y_bucket]: how one original variable reads off the final
/// k-variable query cube.
struct VarAssign {
    int bucket = 0;
    std::vector<std::uint8_t> perm;
};

struct TestVerdict {
    bool accept = true;
    std::uint64_t queries = 0;
    // per-arm outcome for the combined degree test: -1 n/a, 0 reject, 1 accept
    int junta_arm = -1;
    int weak_arm = -1;
    // replayable transcript: variable assignments (junta forms) / mu (weak form)
    std::vector<VarAssign> assigns;
    int restricted_arity = 0;
    std::vector<int> mu;
};

/// sigma(i) = i on the base segment [0,k); beyond it, preferential attachment
/// by current fiber size. Requires r >= k >= 1.
std::vector<int> sample_sigma(int r, int k, Rng& rng);

/// One-sided local tester for junta-degree-d over Z_s^n, in both the
/// variable-identification (recursive) form and the unrolled pi/sigma/mu
/// form. Both query a lazily assembled s^min(n,k)-point restriction and
/// accept iff its canonical form has degree <= d.
class JuntaDegTester {
public:
    JuntaDegTester(int d, int k, std::uint64_t budget = kDefaultPointBudget);

    int d() const { return d_; }
    int k() const { return k_; }

    TestVerdict run_recursive(const GroupOracle& f, Rng& rng) const;
    TestVerdict run_rephrased(const GroupOracle& f, Rng& rng) const;

private:
    TestVerdict finish(const GroupOracle& f, std::vector<VarAssign> assigns, int r_final) const;
    int d_, k_;
    std::uint64_t budget_;
};

/// One-sided weak degree tester on S^n: pick mu: [n] -> [K] uniformly,
/// restrict to the balanced power B(S,t)^(K/t), accept iff the restriction
/// is degree-d there. K = t(d+1).
class WeakDegTester {
public:
    WeakDegTester(EvalSet S, int n, int d, int t, std::uint64_t budget = kDefaultPointBudget);

    int d() const { return d_; }
    int t() const { return t_; }
    int K() const { return t_ * (d_ + 1); }
    std::uint64_t query_cost() const { return points_sym_.size(); }

    TestVerdict run(const FieldOracle& f, Rng& rng) const;

private:
    EvalSet S_;
    int n_, d_, t_;
    std::vector<std::vector<std::uint8_t>> points_sym_; // domain points as symbol tuples
    SpanReducer span_; // degree-<=d monomial span on the balanced power
};

/// Conjunction tester for degree-d on S^n: junta arm (over the additive
/// group of F_p) and weak arm; accepts iff both accept. Both arms always run
/// so transcripts attribute rejections.
class DegTester {
public:
    DegTester(EvalSet S, int n, int d, int k, int t, std::uint64_t budget = kDefaultPointBudget);

    const JuntaDegTester& junta_arm() const { return junta_; }
    const WeakDegTester& weak_arm() const { return weak_; }

    TestVerdict run(const FieldOracle& f, Rng& rng) const;

private:
    EvalSet S_;
    JuntaDegTester junta_;
    WeakDegTester weak_;
};

/// Embeds f over S_1 x ... x S_n into a symmetric (Z_L)^n grid,
/// L = lcm(s_1,...,s_n), preserving junta-degree and distance. The returned
/// callback oracle owns a copy of f.
GroupOracle lift_general_grid(const GroupOracle& f);

struct RejectionEstimate {
    std::uint64_t trials = 0;
    std::uint64_t rejections = 0;
    double rate = 0, ci_lo = 0, ci_hi = 0;
    double mean_queries = 0;
    std::uint64_t junta_arm_rejections = 0;
    std::uint64_t weak_arm_rejections = 0;
};

/// Wilson 95% score interval.
void wilson_ci(std::uint64_t successes, std::uint64_t trials, double& lo, double& hi);

/// Runs i.i.d. seeded trials (trial i uses Rng::for_trial(seed, i)); the
/// verdict multiset depends only on (seed, trials), not on scheduling.
RejectionEstimate estimate_rejection(const std::function<TestVerdict(Rng&)>& trial,
                                     std::uint64_t trials, std::uint64_t master_seed,
                                     int threads = 0);

} // namespace gridtest

#endif
