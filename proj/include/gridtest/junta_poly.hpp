#ifndef GRIDTEST_JUNTA_POLY_HPP
#define GRIDTEST_JUNTA_POLY_HPP

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "gridtest/oracle.hpp"
#include "gridtest/rng.hpp"

namespace gridtest {

/// Sparse pattern a in Z_s^n: sorted (index, symbol) pairs, symbol in [1, s-1].
/// Unlisted indices carry symbol 0.
using Pattern = std::vector<std::pair<std::uint16_t, std::uint16_t>>;

inline int pattern_weight(const Pattern& a) { return static_cast<int>(a.size()); }

/// True iff x agrees with a on its support (the indicator monomial is 1 at x).
inline bool pattern_matches(const Pattern& a, const GridPoint& x) {
    for (auto [i, sym] : a)
        if (x[i] != (Coord)sym) return false;
    return true;
}

std::string pattern_str(const Pattern& a, int n);

/// Canonical representation of a function Z_s^n -> G as a sum of group
/// coefficients times indicator monomials: sum_a g_a * prod_{a_i != 0} [x_i = a_i].
/// Stored coefficients are nonzero; the representation is unique, and the
/// degree (max pattern weight, 0 if empty) equals the junta-degree of the
/// computed function.
class JuntaPolynomial {
public:
    JuntaPolynomial(AbelianGroup group, int s, int n)
        : group_(std::move(group)), s_(s), n_(n) {
        require(s >= 1 && n >= 1, Errc::invalid_argument, "junta-poly: bad shape");
    }

    const AbelianGroup& group() const { return group_; }
    int alphabet() const { return s_; }
    int arity() const { return n_; }

    const std::map<Pattern, GroupElem>& coeffs() const { return coeffs_; }
    bool zero() const { return coeffs_.empty(); }

    int degree() const {
        int d = 0;
        for (const auto& [a, g] : coeffs_) d = std::max(d, pattern_weight(a));
        return d;
    }

    /// Adds g to the coefficient of pattern a, dropping it if the sum is zero.
    void accumulate(const Pattern& a, GroupElem g) {
        validate_pattern(a);
        if (g == group_.zero()) return;
        auto it = coeffs_.find(a);
        if (it == coeffs_.end()) {
            coeffs_.emplace(a, g);
            return;
        }
        it->second = group_.add(it->second, g);
        if (it->second == group_.zero()) coeffs_.erase(it);
    }

    GroupElem coeff(const Pattern& a) const {
        auto it = coeffs_.find(a);
        return it == coeffs_.end() ? group_.zero() : it->second;
    }

    GroupElem evaluate(const GridPoint& x) const {
        require(x.arity() == n_, Errc::domain_mismatch, "junta-poly: arity mismatch");
        GroupElem acc = group_.zero();
        for (const auto& [a, g] : coeffs_)
            if (pattern_matches(a, x)) acc = group_.add(acc, g);
        return acc;
    }

    JuntaPolynomial& operator+=(const JuntaPolynomial& o);
    JuntaPolynomial& operator-=(const JuntaPolynomial& o);

    GridDomain domain() const { return GridDomain::symmetric(s_, n_); }

    /// Dense evaluation table in lexicographic point order.
    std::vector<GroupElem> dense_table(std::uint64_t budget = kDefaultPointBudget) const;

    GroupOracle oracle() const {
        return GroupOracle(domain(), group_, [p = *this](const GridPoint& x) { return p.evaluate(x); });
    }

    /// Exact number of points where the polynomial is nonzero.
    BigUint count_nonroots(std::uint64_t budget = kDefaultPointBudget) const;

    /// Uniformly random junta-polynomial of degree <= d (coefficients uniform
    /// over G on every pattern of weight <= d; zero draws are dropped).
    static JuntaPolynomial random(const AbelianGroup& g, int s, int n, int d, Rng& rng);

    /// One line per stored pattern, `a -> value`, in canonical pattern order.
    std::string dump() const;

    friend bool operator==(const JuntaPolynomial& a, const JuntaPolynomial& b) {
        return a.group_.same(b.group_) && a.s_ == b.s_ && a.n_ == b.n_ && a.coeffs_ == b.coeffs_;
    }

private:
    void validate_pattern(const Pattern& a) const {
        int prev = -1;
        for (auto [i, sym] : a) {
            require((int)i > prev && (int)i < n_, Errc::invalid_argument, "junta-poly: bad pattern index");
            require(sym >= 1 && (int)sym <= s_ - 1, Errc::invalid_argument, "junta-poly: bad pattern symbol");
            prev = i;
        }
    }

    AbelianGroup group_;
    int s_, n_;
    std::map<Pattern, GroupElem> coeffs_;
};

/// Canonical form of a dense symmetric-grid oracle. Inverse of evaluation:
/// evaluate(interpolate(f), x) = f(x) everywhere.
JuntaPolynomial interpolate(const GroupOracle& f, std::uint64_t budget = kDefaultPointBudget);

/// Junta-degree of f = degree of its canonical form.
int junta_degree(const GroupOracle& f, std::uint64_t budget = kDefaultPointBudget);

/// Enumerates every pattern over Z_s^n of weight <= d, in canonical order.
std::vector<Pattern> patterns_up_to(int s, int n, int d);

enum class DiffMode { star, matching };

/// Coefficients of a junta-polynomial rewritten so that, for the first L
/// variables, the plain indicator of x_i is replaced by the difference with a
/// reference variable (x_n for star, x_{L+i} for matching). The rewrite is a
/// change of basis: expand() reproduces the original polynomial exactly.
class DifferenceBasisForm {
public:
    DifferenceBasisForm(AbelianGroup group, int s, int n, DiffMode mode, int L)
        : group_(std::move(group)), s_(s), n_(n), mode_(mode), L_(L) {}

    DiffMode mode() const { return mode_; }
    int block() const { return L_; }
    const std::map<Pattern, GroupElem>& coeffs() const { return coeffs_; }

    void accumulate(const Pattern& a, GroupElem g) {
        if (g == group_.zero()) return;
        auto it = coeffs_.find(a);
        if (it == coeffs_.end()) {
            coeffs_.emplace(a, g);
            return;
        }
        it->second = group_.add(it->second, g);
        if (it->second == group_.zero()) coeffs_.erase(it);
    }

    JuntaPolynomial expand() const;

private:
    friend DifferenceBasisForm to_difference_basis(const JuntaPolynomial&, DiffMode, int);

    AbelianGroup group_;
    int s_, n_;
    DiffMode mode_;
    int L_;
    std::map<Pattern, GroupElem> coeffs_;
};

DifferenceBasisForm to_difference_basis(const JuntaPolynomial& p, DiffMode mode, int L);

} // namespace gridtest

#endif
