#include "gridtest/junta_poly.hpp"

#include <algorithm>
#include <sstream>

namespace gridtest {

std::string pattern_str(const Pattern& a, int n) {
    std::string s = "(";
    std::size_t k = 0;
    for (int i = 0; i < n; ++i) {
        if (i) s += ',';
        if (k < a.size() && a[k].first == i) {
            s += std::to_string(a[k].second);
            ++k;
        } else {
            s += '0';
        }
    }
    return s + ")";
}

JuntaPolynomial& JuntaPolynomial::operator+=(const JuntaPolynomial& o) {
    require(group_.same(o.group_) && s_ == o.s_ && n_ == o.n_, Errc::domain_mismatch,
            "junta-poly: shape mismatch in addition");
    for (const auto& [a, g] : o.coeffs_) accumulate(a, g);
    return *this;
}

JuntaPolynomial& JuntaPolynomial::operator-=(const JuntaPolynomial& o) {
    require(group_.same(o.group_) && s_ == o.s_ && n_ == o.n_, Errc::domain_mismatch,
            "junta-poly: shape mismatch in subtraction");
    for (const auto& [a, g] : o.coeffs_) accumulate(a, group_.neg(g));
    return *this;
}

std::vector<GroupElem> JuntaPolynomial::dense_table(std::uint64_t budget) const {
    GridDomain dom = domain();
    std::vector<GroupElem> t;
    t.reserve(dom.cardinality_checked(budget));
    dom.for_each_point([&](const GridPoint& x) { t.push_back(evaluate(x)); }, budget);
    return t;
}

BigUint JuntaPolynomial::count_nonroots(std::uint64_t budget) const {
    std::uint64_t count = 0;
    domain().for_each_point([&](const GridPoint& x) { count += evaluate(x) != group_.zero(); }, budget);
    return BigUint(count);
}

std::vector<Pattern> patterns_up_to(int s, int n, int d) {
    std::vector<Pattern> out;
    std::vector<Pattern> frontier{Pattern{}};
    out.push_back(Pattern{});
    for (int w = 1; w <= std::min(d, n); ++w) {
        std::vector<Pattern> next;
        for (const auto& a : frontier) {
            int lo = a.empty() ? 0 : a.back().first + 1;
            for (int i = lo; i < n; ++i)
                for (int sym = 1; sym <= s - 1; ++sym) {
                    Pattern b = a;
                    b.emplace_back((std::uint16_t)i, (std::uint16_t)sym);
                    next.push_back(std::move(b));
                }
        }
        out.insert(out.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

JuntaPolynomial JuntaPolynomial::random(const AbelianGroup& g, int s, int n, int d, Rng& rng) {
    JuntaPolynomial p(g, s, n);
    for (const auto& a : patterns_up_to(s, n, d)) p.accumulate(a, g.random(rng));
    return p;
}

std::string JuntaPolynomial::dump() const {
    std::ostringstream out;
    for (const auto& [a, g] : coeffs_)
        out << pattern_str(a, n_) << " -> " << group_.to_string(g) << '\n';
    return out.str();
}

namespace {

// Peels the last variable: f(x', c) = P_0(x') + P_c(x') for c >= 1 and
// f(x', 0) = P_0(x'), recursing on the n-1 variable slices. `stride` is the
// table-index step of one unit of the last variable (always 1 here since
// tables are lexicographic with the last coordinate fastest); `vals` covers
// one contiguous block of s^n entries.
void interpolate_rec(const AbelianGroup& g, int s, int n, std::vector<GroupElem>& vals,
                     Pattern& suffix, JuntaPolynomial& out) {
    if (n == 0) {
        Pattern a(suffix.rbegin(), suffix.rend());
        out.accumulate(a, vals[0]);
        return;
    }
    std::size_t block = vals.size() / s;
    // slice c of the last *remaining* variable lives at indices where
    // (index / s^{0}) ... tables are lexicographic, last coordinate fastest,
    // so slices of the last variable are interleaved with stride s.
    for (int c = s - 1; c >= 0; --c) {
        std::vector<GroupElem> slice(block);
        for (std::size_t i = 0; i < block; ++i) slice[i] = vals[i * s + c];
        if (c > 0) {
            for (std::size_t i = 0; i < block; ++i) slice[i] = g.sub(slice[i], vals[i * s]);
            suffix.emplace_back((std::uint16_t)(n - 1), (std::uint16_t)c);
            interpolate_rec(g, s, n - 1, slice, suffix, out);
            suffix.pop_back();
        } else {
            interpolate_rec(g, s, n - 1, slice, suffix, out);
        }
    }
}

} // namespace

JuntaPolynomial interpolate(const GroupOracle& f, std::uint64_t budget) {
    require(f.domain().symmetric_shape(), Errc::invalid_argument,
            "interpolate: symmetric grid required");
    int s = f.domain().size(0);
    int n = f.domain().arity();
    f.domain().cardinality_checked(budget);

    std::vector<GroupElem> vals;
    if (f.dense()) {
        vals = f.table();
    } else {
        vals.reserve(f.domain().cardinality_checked(budget));
        f.domain().for_each_point([&](const GridPoint& p) { vals.push_back(f(p)); }, budget);
    }

    JuntaPolynomial out(f.codomain(), s, n);
    if (s == 1) {
        out.accumulate(Pattern{}, vals[0]);
        if (out.coeff(Pattern{}) == f.codomain().zero()) return JuntaPolynomial(f.codomain(), s, n);
        return out;
    }
    Pattern suffix;
    interpolate_rec(f.codomain(), s, n, vals, suffix, out);
    return out;
}

int junta_degree(const GroupOracle& f, std::uint64_t budget) {
    return interpolate(f, budget).degree();
}

namespace {

// Sparse monomial-map product with a single +/- delta factor.
// Multiplying a pattern that already pins index j to symbol b by delta_c(x_j)
// keeps it iff b == c (delta product rule), else kills it.
void multiply_by_delta(const AbelianGroup& g, std::map<Pattern, GroupElem>& terms, int j, int sym,
                       bool negate) {
    std::map<Pattern, GroupElem> next;
    for (const auto& [a, coef] : terms) {
        auto it = std::lower_bound(a.begin(), a.end(), std::make_pair((std::uint16_t)j, (std::uint16_t)0),
                                   [](const auto& p, const auto& q) { return p.first < q.first; });
        Pattern b;
        if (it != a.end() && it->first == j) {
            if (it->second != sym) continue;
            b = a;
        } else {
            b = a;
            b.insert(b.begin() + (it - a.begin()), {(std::uint16_t)j, (std::uint16_t)sym});
        }
        GroupElem c = negate ? g.neg(coef) : coef;
        auto [pos, inserted] = next.emplace(std::move(b), c);
        if (!inserted) {
            pos->second = g.add(pos->second, c);
            if (pos->second == g.zero()) next.erase(pos);
        }
    }
    terms = std::move(next);
}

} // namespace

DifferenceBasisForm to_difference_basis(const JuntaPolynomial& p, DiffMode mode, int L) {
    int n = p.arity();
    if (mode == DiffMode::star)
        require(L >= 0 && L <= n - 1, Errc::invalid_argument, "difference basis: need L <= n-1 for star");
    else
        require(L >= 0 && 2 * L <= n, Errc::invalid_argument, "difference basis: need 2L <= n for matching");

    DifferenceBasisForm out(p.group(), p.alphabet(), n, mode, L);

    // Each original monomial splits over subsets T of its low support:
    // indices in T take the reference-indicator branch, the rest take the
    // difference branch. Reference indicators collapse under the delta
    // product rule, leaving one rewritten pattern per surviving choice.
    for (const auto& [a, coef] : p.coeffs()) {
        std::vector<std::pair<int, int>> low;
        Pattern high;
        for (auto [i, sym] : a) {
            if ((int)i < L) low.emplace_back(i, sym);
            else high.emplace_back(i, sym);
        }
        std::size_t m = low.size();
        for (std::size_t mask = 0; mask < (std::size_t(1) << m); ++mask) {
            Pattern b = high; // sorted; low indices all smaller than high refs only in star mode
            bool dead = false;
            // difference-branch indices keep their own slot
            std::vector<std::pair<std::uint16_t, std::uint16_t>> extra;
            for (std::size_t t = 0; t < m; ++t) {
                auto [i, sym] = low[t];
                if (mask & (std::size_t(1) << t)) {
                    // reference branch: delta_sym(x_ref)
                    int ref = (mode == DiffMode::star) ? n - 1 : L + i;
                    auto it = std::find_if(b.begin(), b.end(), [&](const auto& q) { return q.first == ref; });
                    if (it != b.end()) {
                        if (it->second != sym) { dead = true; break; }
                    } else {
                        b.emplace_back((std::uint16_t)ref, (std::uint16_t)sym);
                        std::sort(b.begin(), b.end());
                    }
                } else {
                    extra.emplace_back((std::uint16_t)i, (std::uint16_t)sym);
                }
            }
            if (dead) continue;
            b.insert(b.end(), extra.begin(), extra.end());
            std::sort(b.begin(), b.end());
            out.accumulate(b, coef);
        }
    }
    return out;
}

JuntaPolynomial DifferenceBasisForm::expand() const {
    JuntaPolynomial out(group_, s_, n_);
    for (const auto& [a, coef] : coeffs_) {
        // seed with the part of the pattern outside [0, L)
        std::map<Pattern, GroupElem> terms;
        Pattern high;
        std::vector<std::pair<int, int>> low;
        for (auto [i, sym] : a) {
            if ((int)i < L_) low.emplace_back(i, sym);
            else high.emplace_back(i, sym);
        }
        terms.emplace(high, coef);
        for (auto [i, sym] : low) {
            int ref = (mode_ == DiffMode::star) ? n_ - 1 : L_ + i;
            std::map<Pattern, GroupElem> plus = terms, minus = terms;
            multiply_by_delta(group_, plus, i, sym, false);
            multiply_by_delta(group_, minus, ref, sym, true);
            terms = std::move(plus);
            for (const auto& [b, c] : minus) {
                auto [pos, inserted] = terms.emplace(b, c);
                if (!inserted) {
                    pos->second = group_.add(pos->second, c);
                    if (pos->second == group_.zero()) terms.erase(pos);
                }
            }
        }
        for (const auto& [b, c] : terms) out.accumulate(b, c);
    }
    return out;
}

} // namespace gridtest
