#include "gridtest/field_poly.hpp"

#include <algorithm>
#include <sstream>

namespace gridtest {

Fp ReducedPolynomial::evaluate(const std::vector<Fp>& x) const {
    require((int)x.size() == n_, Errc::domain_mismatch, "poly: evaluation arity mismatch");
    Fp acc = 0;
    for (const auto& [e, c] : terms_) {
        Fp m = c;
        for (int i = 0; i < n_; ++i)
            if (e[i]) m = field_.mul(m, field_.pow(x[i], e[i]));
        acc = field_.add(acc, m);
    }
    return acc;
}

ReducedPolynomial& ReducedPolynomial::operator+=(const ReducedPolynomial& o) {
    require(field_.same(o.field_) && n_ == o.n_, Errc::domain_mismatch, "poly: shape mismatch");
    for (const auto& [e, c] : o.terms_) accumulate(e, c);
    return *this;
}

ReducedPolynomial& ReducedPolynomial::operator-=(const ReducedPolynomial& o) {
    require(field_.same(o.field_) && n_ == o.n_, Errc::domain_mismatch, "poly: shape mismatch");
    for (const auto& [e, c] : o.terms_) accumulate(e, field_.neg(c));
    return *this;
}

namespace {

void monomials_rec(int i, int n, int s, int rem, Expo& e, std::vector<Expo>& out) {
    if (i == n) {
        out.push_back(e);
        return;
    }
    int cap = std::min(s - 1, rem);
    for (int v = 0; v <= cap; ++v) {
        e[i] = static_cast<std::uint8_t>(v);
        monomials_rec(i + 1, n, s, rem - v, e, out);
    }
    e[i] = 0;
}

} // namespace

std::vector<Expo> monomials_up_to(int n, int s, int d) {
    std::vector<Expo> out;
    if (d < 0) return out;
    Expo e(n, 0);
    monomials_rec(0, n, s, d, e, out);
    std::sort(out.begin(), out.end(), [](const Expo& a, const Expo& b) {
        int da = total_degree(a), db = total_degree(b);
        if (da != db) return da < db;
        return a < b;
    });
    return out;
}

ReducedPolynomial ReducedPolynomial::random(const PrimeField& f, int n, int s, int d, Rng& rng) {
    ReducedPolynomial p(f, n);
    for (const auto& e : monomials_up_to(n, s, d)) p.accumulate(e, f.random(rng));
    return p;
}

std::string ReducedPolynomial::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) out << " + ";
        first = false;
        out << c;
        for (int i = 0; i < n_; ++i)
            if (e[i]) out << " * x" << (i + 1) << "^" << (int)e[i];
    }
    return out.str();
}

ReducedPolynomial ReducedPolynomial::parse(const PrimeField& f, int n, const std::string& text) {
    ReducedPolynomial p(f, n);
    std::string t = text;
    for (auto& ch : t)
        if (ch == '+') ch = '\n';
    std::istringstream terms(t);
    std::string term;
    while (std::getline(terms, term)) {
        std::istringstream ts(term);
        std::string tok;
        if (!(ts >> tok)) continue;
        if (tok == "0") continue;
        Fp c;
        try {
            c = f.reduce(std::stoll(tok));
        } catch (...) {
            fail(Errc::parse_error, "poly: bad coefficient '" + tok + "'");
        }
        Expo e(n, 0);
        while (ts >> tok) {
            if (tok == "*") continue;
            require(tok.size() >= 4 && tok[0] == 'x', Errc::parse_error, "poly: bad factor '" + tok + "'");
            auto caret = tok.find('^');
            require(caret != std::string::npos, Errc::parse_error, "poly: bad factor '" + tok + "'");
            int var = std::stoi(tok.substr(1, caret - 1));
            int ex = std::stoi(tok.substr(caret + 1));
            require(var >= 1 && var <= n && ex >= 0 && ex <= 255, Errc::parse_error, "poly: bad factor");
            e[var - 1] = static_cast<std::uint8_t>(e[var - 1] + ex);
        }
        p.accumulate(e, c);
    }
    return p;
}

namespace {

// canonical representatives of x^e on S for e = 0..cap, as coefficient rows
// of length s (individual degree <= s-1)
std::vector<std::vector<Fp>> power_reduction_table(const EvalSet& S, int cap) {
    const PrimeField& f = S.field();
    int s = S.size();
    // vanishing polynomial Z_S(x) = prod (x - sigma), monic of degree s
    std::vector<Fp> van(s + 1, 0);
    van[0] = f.one();
    for (int i = 0; i < s; ++i) {
        std::vector<Fp> next(s + 1, 0);
        for (int j = 0; j <= i; ++j) {
            next[j + 1] = f.add(next[j + 1], van[j]);
            next[j] = f.add(next[j], f.mul(van[j], f.neg(S.elem(i))));
        }
        van = next;
    }
    std::vector<std::vector<Fp>> rep(cap + 1, std::vector<Fp>(s, 0));
    for (int e = 0; e <= std::min(cap, s - 1); ++e) rep[e][e] = f.one();
    for (int e = s; e <= cap; ++e) {
        // x * rep[e-1], then substitute x^s = x^s - Z_S(x)
        std::vector<Fp> shifted(s + 1, 0);
        for (int j = 0; j < s; ++j) shifted[j + 1] = rep[e - 1][j];
        Fp top = shifted[s];
        for (int j = 0; j < s; ++j)
            rep[e][j] = f.sub(shifted[j], f.mul(top, van[j]));
    }
    return rep;
}

} // namespace

ReducedPolynomial reduce(const ReducedPolynomial& p, const EvalSet& S) {
    const PrimeField& f = S.field();
    require(f.same(p.field()), Errc::domain_mismatch, "reduce: field mismatch");
    int s = S.size();
    int cap = p.individual_degree();
    if (cap <= s - 1) return p;
    auto rep = power_reduction_table(S, cap);

    ReducedPolynomial out(f, p.arity());
    for (const auto& [e, c] : p.terms()) {
        // expand the product of per-variable representatives
        std::map<Expo, Fp> terms;
        terms.emplace(Expo(p.arity(), 0), c);
        for (int i = 0; i < p.arity(); ++i) {
            if (e[i] <= s - 1) {
                if (e[i] == 0) continue;
                std::map<Expo, Fp> next;
                for (auto& [ee, cc] : terms) {
                    Expo e2 = ee;
                    e2[i] = static_cast<std::uint8_t>(e2[i] + e[i]);
                    next[e2] = cc;
                }
                terms = std::move(next);
                continue;
            }
            std::map<Expo, Fp> next;
            for (auto& [ee, cc] : terms)
                for (int j = 0; j < s; ++j) {
                    if (rep[e[i]][j] == 0) continue;
                    Expo e2 = ee;
                    e2[i] = static_cast<std::uint8_t>(j);
                    Fp add = f.mul(cc, rep[e[i]][j]);
                    auto [it, ins] = next.emplace(e2, add);
                    if (!ins) {
                        it->second = f.add(it->second, add);
                        if (it->second == 0) next.erase(it);
                    }
                }
            terms = std::move(next);
        }
        for (const auto& [ee, cc] : terms) out.accumulate(ee, cc);
    }
    return out;
}

ReducedPolynomial interpolate_on_grid(const EvalSet& S, int n, const std::vector<Fp>& values) {
    const PrimeField& f = S.field();
    int s = S.size();
    require(s <= 64, Errc::invalid_argument, "interpolate_on_grid: alphabet too large");
    std::uint64_t expect = 1;
    for (int i = 0; i < n; ++i) expect *= s;
    require(values.size() == expect, Errc::invalid_argument, "interpolate_on_grid: table size mismatch");

    // inverse Vandermonde of S: coeffs = V^{-1} * values along each axis
    std::vector<std::vector<Fp>> vinv(s, std::vector<Fp>(s, 0));
    {
        std::vector<std::vector<Fp>> m(s, std::vector<Fp>(2 * s, 0));
        for (int r = 0; r < s; ++r) {
            Fp x = S.elem(r), v = f.one();
            for (int c = 0; c < s; ++c) {
                m[r][c] = v;
                v = f.mul(v, x);
            }
            m[r][s + r] = f.one();
        }
        for (int col = 0; col < s; ++col) {
            int piv = col;
            while (m[piv][col] == 0) ++piv;
            std::swap(m[piv], m[col]);
            Fp inv = f.inv(m[col][col]);
            for (int c = 0; c < 2 * s; ++c) m[col][c] = f.mul(m[col][c], inv);
            for (int r = 0; r < s; ++r) {
                if (r == col || m[r][col] == 0) continue;
                Fp factor = m[r][col];
                for (int c = 0; c < 2 * s; ++c) m[r][c] = f.sub(m[r][c], f.mul(factor, m[col][c]));
            }
        }
        for (int r = 0; r < s; ++r)
            for (int c = 0; c < s; ++c) vinv[r][c] = m[r][s + c];
    }

    std::vector<Fp> work = values;
    // transform along each axis; axis i has stride s^(n-1-i)
    std::uint64_t stride = expect / s;
    for (int axis = 0; axis < n; ++axis) {
        for (std::uint64_t base = 0; base < expect; ++base) {
            // process each line once: base must have digit 0 at `axis`
            if ((base / stride) % s != 0) continue;
            Fp in[64];
            for (int j = 0; j < s; ++j) in[j] = work[base + j * stride];
            for (int j = 0; j < s; ++j) {
                Fp acc = 0;
                for (int k = 0; k < s; ++k) acc = f.add(acc, f.mul(vinv[j][k], in[k]));
                work[base + j * stride] = acc;
            }
        }
        stride /= s;
    }

    ReducedPolynomial out(f, n);
    Expo e(n, 0);
    std::uint64_t idx = 0;
    for (;;) {
        if (work[idx] != 0) out.accumulate(e, work[idx]);
        int i = n - 1;
        while (i >= 0 && e[i] == s - 1) {
            e[i] = 0;
            --i;
        }
        if (i < 0) break;
        ++e[i];
        idx = 0;
        for (int j = 0; j < n; ++j) idx = idx * s + e[j];
    }
    return out;
}

int function_degree(const EvalSet& S, int n, const std::vector<Fp>& values) {
    return interpolate_on_grid(S, n, values).degree();
}

int function_degree(const FieldOracle& f, const EvalSet& S, std::uint64_t budget) {
    require(f.domain().symmetric_shape() && f.domain().size(0) == S.size(), Errc::domain_mismatch,
            "function_degree: oracle domain must be S^n");
    std::vector<Fp> vals;
    vals.reserve(f.domain().cardinality_checked(budget));
    f.domain().for_each_point([&](const GridPoint& p) { vals.push_back(f(p)); }, budget);
    return function_degree(S, f.domain().arity(), vals);
}

std::vector<Fp> SpanReducer::reduce_vec(std::vector<Fp> v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        Fp c = v[pivots_[r]];
        if (c == 0) continue;
        const auto& row = rows_[r];
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = field_.sub(v[i], field_.mul(c, row[i]));
    }
    return v;
}

bool SpanReducer::add(std::vector<Fp> v) {
    v = reduce_vec(std::move(v));
    std::size_t piv = v.size();
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) {
            piv = i;
            break;
        }
    if (piv == v.size()) return false;
    Fp inv = field_.inv(v[piv]);
    for (auto& x : v) x = field_.mul(x, inv);
    rows_.push_back(std::move(v));
    pivots_.push_back(piv);
    return true;
}

bool SpanReducer::contains(const std::vector<Fp>& v) const {
    auto r = reduce_vec(v);
    for (Fp x : r)
        if (x != 0) return false;
    return true;
}

namespace {

std::vector<Fp> restrict_monomial(const PrimeField& f, const PointList& T, const Expo& e) {
    std::vector<Fp> v(T.size());
    for (std::size_t i = 0; i < T.size(); ++i) {
        Fp m = f.one();
        for (std::size_t j = 0; j < e.size(); ++j)
            if (e[j]) m = f.mul(m, f.pow(T[i][j], e[j]));
        v[i] = m;
    }
    return v;
}

} // namespace

GradedBasis graded_basis(const PrimeField& field, const PointList& T, int s, std::uint64_t budget) {
    require(!T.empty(), Errc::invalid_argument, "graded basis: empty point set");
    require(T.size() <= budget, Errc::budget_exceeded, "graded basis: point set exceeds budget");
    int K = static_cast<int>(T[0].size());

    GradedBasis b;
    b.points = T;
    SpanReducer span(field);
    int maxdeg = K * (s - 1);
    for (int layer = 0; layer <= maxdeg && span.rank() < T.size(); ++layer) {
        for (const auto& e : monomials_up_to(K, s, layer)) {
            if (total_degree(e) != layer) continue;
            auto v = restrict_monomial(field, T, e);
            if (span.add(v)) {
                b.elements.push_back(std::move(v));
                b.tags.push_back(layer);
                b.exponents.push_back(e);
                if (span.rank() == T.size()) break;
            }
        }
    }
    require(span.rank() == T.size(), Errc::invalid_argument,
            "graded basis: monomials failed to span (duplicate points?)");
    return b;
}

std::vector<Fp> GradedBasis::coordinates(const PrimeField& field, const std::vector<Fp>& f) const {
    require(f.size() == points.size(), Errc::invalid_argument, "coordinates: size mismatch");
    std::size_t ell = elements.size();
    // solve [elements^T] c = f by elimination on an augmented copy
    std::vector<std::vector<Fp>> aug(points.size(), std::vector<Fp>(ell + 1));
    for (std::size_t r = 0; r < points.size(); ++r) {
        for (std::size_t c = 0; c < ell; ++c) aug[r][c] = elements[c][r];
        aug[r][ell] = f[r];
    }
    std::vector<std::size_t> where(ell, SIZE_MAX);
    std::size_t row = 0;
    for (std::size_t col = 0; col < ell && row < aug.size(); ++col) {
        std::size_t piv = row;
        while (piv < aug.size() && aug[piv][col] == 0) ++piv;
        if (piv == aug.size()) continue;
        std::swap(aug[piv], aug[row]);
        Fp inv = field.inv(aug[row][col]);
        for (auto& x : aug[row]) x = field.mul(x, inv);
        for (std::size_t r = 0; r < aug.size(); ++r) {
            if (r == row || aug[r][col] == 0) continue;
            Fp factor = aug[r][col];
            for (std::size_t c2 = col; c2 <= ell; ++c2)
                aug[r][c2] = field.sub(aug[r][c2], field.mul(factor, aug[row][c2]));
        }
        where[col] = row;
        ++row;
    }
    std::vector<Fp> coords(ell, 0);
    for (std::size_t c = 0; c < ell; ++c)
        if (where[c] != SIZE_MAX) coords[c] = aug[where[c]][ell];
    return coords;
}

bool is_degree_d_on(const PrimeField& field, const PointList& T, const std::vector<Fp>& f, int d,
                    int s, std::uint64_t budget) {
    require(!T.empty() && f.size() == T.size(), Errc::invalid_argument, "is_degree_d_on: size mismatch");
    require(T.size() <= budget, Errc::budget_exceeded, "is_degree_d_on: point set exceeds budget");
    int K = static_cast<int>(T[0].size());
    SpanReducer span(field);
    for (const auto& e : monomials_up_to(K, s, d)) span.add(restrict_monomial(field, T, e));
    return span.contains(f);
}

BigUint balanced_size(int s, int t) {
    require(s >= 1 && t >= 1 && t % s == 0, Errc::invalid_argument,
            "balanced_size: t must be a positive multiple of s");
    int q = t / s;
    BigUint r(1);
    for (int i = 1; i <= s; ++i) r *= BigUint::binomial(i * q, q);
    return r;
}

PointList BalancedSet::materialize(std::uint64_t budget) const {
    BigUint sz = size();
    require(sz.fits_u64() && sz.to_u64() <= budget, Errc::budget_exceeded,
            "balanced set: " + sz.str() + " points exceeds budget of " + std::to_string(budget));
    PointList out;
    out.reserve(sz.to_u64());
    for_each([&](const std::vector<Fp>& p) { out.push_back(p); });
    return out;
}

PointList balanced_power(const EvalSet& S, int t, int blocks, std::uint64_t budget) {
    BalancedSet B(S, t);
    BigUint block_count = B.size();
    BigUint total(1);
    for (int i = 0; i < blocks; ++i) total *= block_count;
    if (!total.fits_u64() || total.to_u64() > budget)
        fail(Errc::budget_exceeded, "balanced power: " + total.str() + " points exceeds budget of " +
                                        std::to_string(budget));
    PointList base = B.materialize(budget);
    PointList out;
    out.reserve(total.to_u64());
    std::vector<std::size_t> odo(blocks, 0);
    for (;;) {
        std::vector<Fp> flat;
        flat.reserve((std::size_t)t * blocks);
        for (int b = 0; b < blocks; ++b)
            flat.insert(flat.end(), base[odo[b]].begin(), base[odo[b]].end());
        out.push_back(std::move(flat));
        int i = blocks - 1;
        while (i >= 0 && ++odo[i] == base.size()) {
            odo[i] = 0;
            --i;
        }
        if (i < 0) break;
    }
    return out;
}

std::vector<Fp> construct_dual_functional(int a, const EvalSet& S, int t, std::uint64_t budget) {
    const PrimeField& f = S.field();
    int s = S.size();
    require(a >= 1 && a <= s - 1, Errc::invalid_argument, "dual functional: need 1 <= a <= s-1");
    PointList B = BalancedSet(EvalSet(S), t).materialize(budget);
    std::size_t m = B.size();

    // rows: monomials of degree <= a-1 (each must dot to 0), then z_t^a (dots to 1)
    std::vector<std::vector<Fp>> rows;
    for (const auto& e : monomials_up_to(t, s, a - 1)) rows.push_back(restrict_monomial(f, B, e));
    {
        std::vector<Fp> za(m);
        for (std::size_t i = 0; i < m; ++i) za[i] = f.pow(B[i][t - 1], (std::uint64_t)a);
        rows.push_back(std::move(za));
    }
    std::size_t nrows = rows.size();
    std::vector<Fp> rhs(nrows, 0);
    rhs[nrows - 1] = f.one();

    // solve rows * C = rhs
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t col = 0; col < m && r < nrows; ++col) {
        std::size_t piv = r;
        while (piv < nrows && rows[piv][col] == 0) ++piv;
        if (piv == nrows) continue;
        std::swap(rows[piv], rows[r]);
        std::swap(rhs[piv], rhs[r]);
        Fp inv = f.inv(rows[r][col]);
        for (auto& x : rows[r]) x = f.mul(x, inv);
        rhs[r] = f.mul(rhs[r], inv);
        for (std::size_t rr = 0; rr < nrows; ++rr) {
            if (rr == r || rows[rr][col] == 0) continue;
            Fp factor = rows[rr][col];
            for (std::size_t c2 = col; c2 < m; ++c2)
                rows[rr][c2] = f.sub(rows[rr][c2], f.mul(factor, rows[r][c2]));
            rhs[rr] = f.sub(rhs[rr], f.mul(factor, rhs[r]));
        }
        pivot_col.push_back(col);
        ++r;
    }
    for (std::size_t rr = r; rr < nrows; ++rr)
        if (rhs[rr] != 0)
            fail(Errc::construction_failed,
                 "dual functional: z^" + std::to_string(a) + " is degree-" + std::to_string(a - 1) +
                     " on B(S," + std::to_string(t) + ")");
    std::vector<Fp> C(m, 0);
    for (std::size_t i = 0; i < r; ++i) C[pivot_col[i]] = rhs[i];
    return C;
}

bool verify_block_length(const EvalSet& S, int t, std::uint64_t budget) {
    int s = S.size();
    if (t < 1 || t % s != 0) return false;
    BigUint sz = balanced_size(s, t);
    if (!(sz > BigUint::pow((std::uint64_t)(s - 1), (std::uint64_t)t))) return false;
    // the dimension inequality is the operative requirement; the direct
    // degree check of z_1^a runs only when the balanced set is small enough
    // to materialize
    if (!sz.fits_u64() || sz.to_u64() > std::min<std::uint64_t>(budget, 100'000)) return true;
    PointList B = BalancedSet(EvalSet(S), t).materialize(budget);
    const PrimeField& f = S.field();
    for (int a = 1; a <= s - 1; ++a) {
        std::vector<Fp> za(B.size());
        for (std::size_t i = 0; i < B.size(); ++i) za[i] = f.pow(B[i][0], (std::uint64_t)a);
        if (is_degree_d_on(f, B, za, a - 1, s, budget)) return false;
        if (!is_degree_d_on(f, B, za, a, s, budget)) return false;
    }
    return true;
}

int default_block_length(const EvalSet& S) {
    int s = S.size();
    for (int t = s; t <= 64 * s; t += s)
        if (verify_block_length(S, t)) return t;
    fail(Errc::construction_failed, "no verified block length found for s=" + std::to_string(s));
}

} // namespace gridtest
