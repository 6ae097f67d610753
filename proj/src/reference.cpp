#include "gridtest/reference.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "gridtest/junta_poly.hpp"

namespace gridtest::reference {

namespace {

// all (D, a) indicator generators with |D| = min(d, n), as truth tables over
// {0,1}: generator value at x is 1[x^D = a]
void for_each_generator(const GridDomain& dom, int d, const std::function<void(const std::vector<char>&)>& fn) {
    int n = dom.arity();
    int size = std::min(d, n);
    std::uint64_t npts = dom.cardinality_checked();
    std::vector<int> D;
    std::vector<GridPoint> pts = dom.enumerate_points();

    std::function<void(int)> choose = [&](int from) {
        if ((int)D.size() == size) {
            // enumerate assignments a over the chosen coordinates
            std::vector<Coord> a(D.size(), 0);
            for (;;) {
                std::vector<char> tab(npts);
                for (std::uint64_t i = 0; i < npts; ++i) {
                    bool match = true;
                    for (std::size_t t = 0; t < D.size(); ++t)
                        if (pts[i][D[t]] != a[t]) {
                            match = false;
                            break;
                        }
                    tab[i] = match;
                }
                fn(tab);
                int j = (int)a.size() - 1;
                while (j >= 0 && ++a[j] == dom.size(D[j])) {
                    a[j] = 0;
                    --j;
                }
                if (j < 0) break;
            }
            return;
        }
        for (int i = from; i < n; ++i) {
            D.push_back(i);
            choose(i + 1);
            D.pop_back();
        }
    };
    if (size == 0) {
        fn(std::vector<char>(npts, 1));
    } else {
        choose(0);
    }
}

// membership of `target` in the F_p span of the generators
bool span_membership_prime(const GridDomain& dom, std::uint32_t p, const std::vector<Fp>& target,
                           int d) {
    PrimeField f(p);
    std::vector<std::vector<Fp>> rows;   // reduced rows
    std::vector<std::size_t> pivots;
    auto reduce_vec = [&](std::vector<Fp> v) {
        for (std::size_t r = 0; r < rows.size(); ++r) {
            Fp c = v[pivots[r]];
            if (c == 0) continue;
            for (std::size_t i = 0; i < v.size(); ++i) v[i] = f.sub(v[i], f.mul(c, rows[r][i]));
        }
        return v;
    };
    for_each_generator(dom, d, [&](const std::vector<char>& tab) {
        std::vector<Fp> v(tab.begin(), tab.end());
        v = reduce_vec(std::move(v));
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i] != 0) {
                Fp inv = f.inv(v[i]);
                for (auto& x : v) x = f.mul(x, inv);
                rows.push_back(std::move(v));
                pivots.push_back(i);
                break;
            }
    });
    auto r = reduce_vec(target);
    return std::all_of(r.begin(), r.end(), [](Fp x) { return x == 0; });
}

// closure of the subgroup of (Z_m)^N generated by the indicator tables,
// bounded by `cap` elements
bool closure_membership_cyclic(const GridDomain& dom, std::uint32_t m, const std::vector<std::uint32_t>& target,
                               int d, std::uint64_t cap = 1u << 22) {
    std::vector<std::vector<std::uint32_t>> gens;
    for_each_generator(dom, d, [&](const std::vector<char>& tab) {
        gens.emplace_back(tab.begin(), tab.end());
    });
    std::set<std::vector<std::uint32_t>> seen;
    std::vector<std::vector<std::uint32_t>> queue;
    std::vector<std::uint32_t> zero(target.size(), 0);
    seen.insert(zero);
    queue.push_back(zero);
    while (!queue.empty()) {
        require(seen.size() <= cap, Errc::budget_exceeded, "closure: subgroup too large");
        auto cur = std::move(queue.back());
        queue.pop_back();
        if (cur == target) return true;
        for (const auto& gen : gens) {
            auto next = cur;
            for (std::size_t i = 0; i < next.size(); ++i) next[i] = (next[i] + gen[i]) % m;
            if (seen.insert(next).second) queue.push_back(next);
        }
    }
    return seen.count(target) > 0;
}

} // namespace

bool is_sum_of_d_juntas(const GridDomain& dom, const AbelianGroup& g,
                        const std::vector<GroupElem>& values, int d) {
    require(BigUint(values.size()) == dom.cardinality(), Errc::invalid_argument,
            "brute force: table size mismatch");
    // componentwise over the cyclic factors
    for (int t = 0; t < g.factors(); ++t) {
        std::uint32_t m = g.order(t);
        if (m == 1) continue;
        if (PrimeField::is_prime(m)) {
            std::vector<Fp> target(values.size());
            for (std::size_t i = 0; i < values.size(); ++i) target[i] = g.residue(values[i], t);
            if (!span_membership_prime(dom, m, target, d)) return false;
        } else {
            std::vector<std::uint32_t> target(values.size());
            for (std::size_t i = 0; i < values.size(); ++i) target[i] = g.residue(values[i], t);
            if (!closure_membership_cyclic(dom, m, target, d)) return false;
        }
    }
    return true;
}

int brute_force_junta_degree(const GridDomain& dom, const AbelianGroup& g,
                             const std::vector<GroupElem>& values) {
    for (int d = 0; d <= dom.arity(); ++d)
        if (is_sum_of_d_juntas(dom, g, values, d)) return d;
    fail(Errc::construction_failed, "brute force: no junta degree found (unreachable)");
}

std::vector<std::pair<std::uint64_t, GroupElem>> interpolate_inclusion_exclusion(
    const GridDomain& dom, const AbelianGroup& g, const std::vector<GroupElem>& values) {
    require(BigUint(values.size()) == dom.cardinality(), Errc::invalid_argument,
            "inclusion-exclusion: table size mismatch");
    int n = dom.arity();
    require(n <= 20, Errc::budget_exceeded, "inclusion-exclusion: arity too large");

    std::vector<std::pair<std::uint64_t, GroupElem>> out;
    GridPoint a = dom.first_point();
    std::uint64_t ai = 0;
    do {
        std::vector<int> supp;
        for (int i = 0; i < n; ++i)
            if (a[i] != 0) supp.push_back(i);
        GroupElem coeff = g.zero();
        for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << supp.size()); ++mask) {
            GridPoint x(std::vector<Coord>(n, 0));
            int kept = 0;
            for (std::size_t t = 0; t < supp.size(); ++t)
                if ((mask >> t) & 1) {
                    x.x[supp[t]] = a[supp[t]];
                    ++kept;
                }
            int sign = ((int)supp.size() - kept) % 2 ? -1 : 1;
            coeff = g.add(coeff, g.int_mul(values[dom.index_of(x)], sign));
        }
        if (coeff != g.zero()) out.emplace_back(ai, coeff);
        ++ai;
    } while (dom.advance(a));
    return out;
}

std::vector<long long> cyclotomic_polynomial(int s) {
    require(s >= 1, Errc::invalid_argument, "cyclotomic: s must be >= 1");
    // Phi_s = (x^s - 1) / prod_{d | s, d < s} Phi_d, exact integer division
    std::vector<long long> num(s + 1, 0);
    num[0] = -1;
    num[s] = 1;
    for (int d = 1; d < s; ++d) {
        if (s % d != 0) continue;
        auto phi_d = cyclotomic_polynomial(d);
        // divide num by phi_d
        std::vector<long long> q(num.size() - phi_d.size() + 1, 0);
        std::vector<long long> rem = num;
        for (int i = (int)q.size() - 1; i >= 0; --i) {
            long long c = rem[i + phi_d.size() - 1] / phi_d.back();
            q[i] = c;
            if (c == 0) continue;
            for (std::size_t j = 0; j < phi_d.size(); ++j) rem[i + j] -= c * phi_d[j];
        }
        for (auto r : rem) require(r == 0, Errc::construction_failed, "cyclotomic: non-exact division");
        num = q;
    }
    return num;
}

std::vector<BigRat> sphere_character_sum_cyclotomic(const std::vector<Coord>& alpha, int s, int m) {
    int n = (int)alpha.size();
    require(s >= 2 && m >= 0 && m <= n, Errc::invalid_argument, "sphere sum: bad parameters");

    // counts of each power of omega across the whole sphere
    std::vector<std::uint64_t> power_count(s, 0);
    std::vector<Coord> y(n, 0);
    std::function<void(int, int, int)> rec = [&](int i, int left, int phase) {
        if (n - i < left) return;
        if (i == n) {
            if (left == 0) ++power_count[phase];
            return;
        }
        rec(i + 1, left, phase); // y_i = 0
        if (left > 0)
            for (int v = 1; v < s; ++v) rec(i + 1, left - 1, (phase + alpha[i] * v) % s);
    };
    rec(0, m, 0);

    // reduce sum c_t x^t modulo Phi_s over the rationals
    auto phi = cyclotomic_polynomial(s);
    int deg = (int)phi.size() - 1;
    std::vector<BigRat> poly(s, BigRat(0));
    for (int t = 0; t < s; ++t) poly[t] = BigRat((long long)power_count[t]);
    for (int i = s - 1; i >= deg; --i) {
        BigRat c = poly[i]; // phi monic
        if (c.is_zero()) continue;
        for (int j = 0; j <= deg; ++j)
            poly[i - deg + j] = poly[i - deg + j] - c * BigRat(phi[j]);
    }
    poly.resize(deg);
    return poly;
}

BigRat sphere_char_expectation_bruteforce(const std::vector<Coord>& alpha, int s, int m) {
    int n = (int)alpha.size();
    auto coords = sphere_character_sum_cyclotomic(alpha, s, m);
    for (std::size_t t = 1; t < coords.size(); ++t)
        require(coords[t].is_zero(), Errc::construction_failed,
                "sphere sum: non-rational character sum");
    BigUint sphere = BigUint::binomial((std::uint32_t)n, (std::uint32_t)m) *
                     BigUint::pow((std::uint64_t)(s - 1), (std::uint64_t)m);
    return coords[0] / BigRat(sphere, BigUint(1));
}

BigRat spherical_collision_bruteforce(int s, int n, const std::vector<char>& indicator, int m) {
    GridDomain dom = GridDomain::symmetric(s, n);
    std::uint64_t npts = dom.cardinality_checked();
    require(indicator.size() == npts, Errc::invalid_argument, "collision: indicator size mismatch");

    // enumerate sphere offsets once
    std::vector<GridPoint> sphere;
    {
        GridPoint mu(std::vector<Coord>(n, 0));
        std::function<void(int, int)> rec = [&](int i, int left) {
            if (n - i < left) return;
            if (i == n) {
                if (left == 0) sphere.push_back(mu);
                return;
            }
            mu.x[i] = 0;
            rec(i + 1, left);
            if (left > 0)
                for (int v = 1; v < s; ++v) {
                    mu.x[i] = v;
                    rec(i + 1, left - 1);
                }
            mu.x[i] = 0;
        };
        rec(0, m);
    }

    std::uint64_t count = 0;
    GridPoint x = dom.first_point();
    std::uint64_t xi = 0;
    do {
        if (indicator[xi]) {
            for (const auto& mu : sphere) {
                GridPoint y = x;
                for (int i = 0; i < n; ++i) y.x[i] = (y.x[i] + mu[i]) % s;
                if (indicator[dom.index_of(y)]) ++count;
            }
        }
        ++xi;
    } while (dom.advance(x));

    BigUint denom = BigUint(npts) * BigUint(sphere.size());
    return BigRat(BigUint(count), denom);
}

double bernoulli_collision_bruteforce(int s, int n, const std::vector<char>& indicator, double nu) {
    GridDomain dom = GridDomain::symmetric(s, n);
    std::uint64_t npts = dom.cardinality_checked();
    require(indicator.size() == npts, Errc::invalid_argument, "collision: indicator size mismatch");
    double stay = 1.0 - nu, move = nu / (s - 1);

    std::vector<GridPoint> pts = dom.enumerate_points();
    double acc = 0;
    for (std::uint64_t i = 0; i < npts; ++i) {
        if (!indicator[i]) continue;
        for (std::uint64_t j = 0; j < npts; ++j) {
            if (!indicator[j]) continue;
            double pr = 1.0;
            for (int c = 0; c < n; ++c) pr *= pts[i][c] == pts[j][c] ? stay : move;
            acc += pr;
        }
    }
    return acc / (double)npts;
}

double recursive_tester_exact_rejection(const GroupOracle& f, int d, int k) {
    require(f.domain().symmetric_shape(), Errc::invalid_argument, "exact rejection: symmetric grid");
    int n = f.domain().arity();
    int s = f.domain().size(0);
    require(n <= 8 && s <= 4, Errc::budget_exceeded, "exact rejection: instance too large");

    // all permutations of [s]
    std::vector<std::vector<std::uint8_t>> perms;
    {
        std::vector<std::uint8_t> p(s);
        for (int i = 0; i < s; ++i) p[i] = (std::uint8_t)i;
        do {
            perms.push_back(p);
        } while (std::next_permutation(p.begin(), p.end()));
    }

    struct Death {
        int j, i;
        const std::vector<std::uint8_t>* perm;
    };
    double reject_prob = 0;
    std::vector<Death> deaths;
    std::vector<int> live(n);
    for (int i = 0; i < n; ++i) live[i] = i;

    std::function<void(std::vector<int>&, double)> rec = [&](std::vector<int>& lv, double weight) {
        int r = (int)lv.size();
        if (r <= k) {
            // evaluate the restricted function on the final cube
            GridDomain cube = GridDomain::symmetric(s, r);
            std::vector<GroupElem> table;
            table.reserve(cube.cardinality_checked());
            std::vector<Coord> val(n);
            cube.for_each_point([&](const GridPoint& y) {
                for (int b = 0; b < r; ++b) val[lv[b]] = y[b];
                for (auto it = deaths.rbegin(); it != deaths.rend(); ++it)
                    val[it->j] = (*it->perm)[val[it->i]];
                GridPoint x(val);
                table.push_back(f(x));
            });
            GroupOracle restricted(cube, f.codomain(), std::move(table));
            if (junta_degree(restricted) > d) reject_prob += weight;
            return;
        }
        double step = weight / ((double)r * (r - 1) * perms.size());
        for (int ai = 0; ai < r; ++ai)
            for (int bj = 0; bj < r; ++bj) {
                if (ai == bj) continue;
                int jvar = lv[bj];
                for (const auto& perm : perms) {
                    deaths.push_back(Death{jvar, lv[ai], &perm});
                    std::vector<int> next = lv;
                    next.erase(next.begin() + bj);
                    rec(next, step);
                    deaths.pop_back();
                }
            }
    };
    rec(live, 1.0);
    return reject_prob;
}

} // namespace gridtest::reference
