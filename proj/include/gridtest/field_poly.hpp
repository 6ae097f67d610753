#ifndef GRIDTEST_FIELD_POLY_HPP
#define GRIDTEST_FIELD_POLY_HPP

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "gridtest/bigint.hpp"
#include "gridtest/field.hpp"
#include "gridtest/oracle.hpp"
#include "gridtest/rng.hpp"

namespace gridtest {

/// Exponent vector, one entry per variable.
using Expo = std::vector<std::uint8_t>;

inline int total_degree(const Expo& e) {
    int d = 0;
    for (auto x : e) d += x;
    return d;
}

/// Sparse multivariate polynomial over a prime field. "Reduced" w.r.t. an
/// evaluation set of size s means every individual degree is <= s-1, making
/// it the canonical representative of its function on S^n.
class ReducedPolynomial {
public:
    ReducedPolynomial(PrimeField field, int n) : field_(field), n_(n) {
        require(n >= 1, Errc::invalid_argument, "poly: arity must be >= 1");
    }

    const PrimeField& field() const { return field_; }
    int arity() const { return n_; }
    const std::map<Expo, Fp>& terms() const { return terms_; }
    bool zero() const { return terms_.empty(); }

    void accumulate(const Expo& e, Fp c) {
        require((int)e.size() == n_, Errc::invalid_argument, "poly: exponent arity mismatch");
        if (c == 0) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
            return;
        }
        it->second = field_.add(it->second, c);
        if (it->second == 0) terms_.erase(it);
    }

    Fp coeff(const Expo& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? 0 : it->second;
    }

    int degree() const {
        int d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
        return d;
    }

    int individual_degree() const {
        int d = 0;
        for (const auto& [e, c] : terms_)
            for (auto x : e) d = std::max<int>(d, x);
        return d;
    }

    bool is_reduced(int s) const { return individual_degree() <= s - 1; }

    /// Evaluation at a tuple of field values.
    Fp evaluate(const std::vector<Fp>& x) const;

    ReducedPolynomial& operator+=(const ReducedPolynomial& o);
    ReducedPolynomial& operator-=(const ReducedPolynomial& o);

    /// Uniformly random polynomial with total degree <= d and individual
    /// degree <= s-1; bijects with degree-<=d functions on S^n.
    static ReducedPolynomial random(const PrimeField& f, int n, int s, int d, Rng& rng);

    /// `c * x1^e1 ... xn^en` terms joined by ` + `; "0" when empty.
    std::string str() const;
    static ReducedPolynomial parse(const PrimeField& f, int n, const std::string& text);

    friend bool operator==(const ReducedPolynomial& a, const ReducedPolynomial& b) {
        return a.field_.same(b.field_) && a.n_ == b.n_ && a.terms_ == b.terms_;
    }

private:
    PrimeField field_;
    int n_;
    std::map<Expo, Fp> terms_;
};

/// Rewrites every power x^a with a > s-1 through the vanishing polynomial of
/// S, yielding the unique reduced polynomial agreeing with p on S^n.
ReducedPolynomial reduce(const ReducedPolynomial& p, const EvalSet& S);

/// Points of a subset T of S^K, each a K-tuple of field values.
using PointList = std::vector<std::vector<Fp>>;

/// Dense values over S^n in lexicographic symbol order -> unique reduced
/// interpolant (individual degree <= s-1).
ReducedPolynomial interpolate_on_grid(const EvalSet& S, int n, const std::vector<Fp>& values);

/// Total degree of the unique reduced interpolant of a dense table on S^n.
int function_degree(const EvalSet& S, int n, const std::vector<Fp>& values);
int function_degree(const FieldOracle& f, const EvalSet& S, std::uint64_t budget = kDefaultPointBudget);

/// All exponent vectors with total degree <= d and individual degree <= s-1,
/// ordered by (total degree, lexicographic).
std::vector<Expo> monomials_up_to(int n, int s, int d);

/// Incremental row space over F_p with membership queries.
class SpanReducer {
public:
    explicit SpanReducer(PrimeField f) : field_(f) {}

    /// Returns true when the vector was independent (and was added).
    bool add(std::vector<Fp> v);
    /// True iff v lies in the current span.
    bool contains(const std::vector<Fp>& v) const;
    std::size_t rank() const { return rows_.size(); }

private:
    std::vector<Fp> reduce_vec(std::vector<Fp> v) const;
    PrimeField field_;
    std::vector<std::vector<Fp>> rows_;   // rows with leading 1 at pivot
    std::vector<std::size_t> pivots_;
};

/// Graded basis of the function space on T: monomial restrictions added
/// greedily, degree layer by degree layer. A function is
/// degree-d on T iff its unique coordinates vanish on every element whose
/// tag exceeds d.
struct GradedBasis {
    PointList points;
    std::vector<std::vector<Fp>> elements; // restricted monomials, as functions on T
    std::vector<int> tags;                 // degree layer each element was added at
    std::vector<Expo> exponents;           // which monomial produced each element

    /// Unique coordinates of f (given as values on T) in this basis.
    std::vector<Fp> coordinates(const PrimeField& field, const std::vector<Fp>& f) const;
};

GradedBasis graded_basis(const PrimeField& field, const PointList& T, int s,
                         std::uint64_t budget = kDefaultPointBudget);

/// True iff some polynomial of total degree <= d (individual degree <= s-1)
/// agrees with f on every point of T. Exact rank computation over F_p.
bool is_degree_d_on(const PrimeField& field, const PointList& T, const std::vector<Fp>& f, int d,
                    int s, std::uint64_t budget = kDefaultPointBudget);

/// |B(S,t)| = t! / ((t/s)!)^s, exact.
BigUint balanced_size(int s, int t);

/// Lazily enumerable balanced point set B(S,t): the points of S^t containing
/// each element of S exactly t/s times.
class BalancedSet {
public:
    BalancedSet(EvalSet S, int t) : S_(std::move(S)), t_(t) {
        require(t >= 1 && t % S_.size() == 0, Errc::invalid_argument,
                "balanced set: t must be a positive multiple of s");
    }

    const EvalSet& eval_set() const { return S_; }
    int block_length() const { return t_; }
    BigUint size() const { return balanced_size(S_.size(), t_); }

    /// Visits points in lexicographic symbol order.
    template <typename Fn>
    void for_each(Fn&& fn) const {
        std::vector<int> counts(S_.size(), t_ / S_.size());
        std::vector<Fp> point(t_);
        enumerate(0, counts, point, fn);
    }

    PointList materialize(std::uint64_t budget = kDefaultPointBudget) const;

private:
    template <typename Fn>
    void enumerate(int pos, std::vector<int>& counts, std::vector<Fp>& point, Fn&& fn) const {
        if (pos == t_) {
            fn(static_cast<const std::vector<Fp>&>(point));
            return;
        }
        for (int sym = 0; sym < S_.size(); ++sym) {
            if (counts[sym] == 0) continue;
            --counts[sym];
            point[pos] = S_.elem(sym);
            enumerate(pos + 1, counts, point, fn);
            ++counts[sym];
        }
    }

    EvalSet S_;
    int t_;
};

/// Cartesian power of a balanced set, flattened into S^(t*blocks).
PointList balanced_power(const EvalSet& S, int t, int blocks,
                         std::uint64_t budget = kDefaultPointBudget);

/// Functional C on B(S,t) with <C, z_t^a> = 1 and <C, g> = 0 for every
/// degree-(a-1) g, found by solving the linear system. Throws
/// construction_failed when z_t^a is degree-(a-1) on B(S,t).
std::vector<Fp> construct_dual_functional(int a, const EvalSet& S, int t,
                                          std::uint64_t budget = kDefaultPointBudget);

/// Startup verification for a weak-deg block length: the dimension
/// inequality |B(S,t)| > (s-1)^t and z_1^a having degree exactly a on B(S,t)
/// for every a <= s-1.
bool verify_block_length(const EvalSet& S, int t, std::uint64_t budget = kDefaultPointBudget);

/// Smallest multiple of s passing verify_block_length (s=2 -> 2, s=3 -> 6).
int default_block_length(const EvalSet& S);

} // namespace gridtest

#endif
