#include "gridtest/distance.hpp"

#include <algorithm>

namespace gridtest {

namespace {

std::vector<GroupElem> dense_values(const GroupOracle& f) {
    if (f.dense()) return f.table();
    std::vector<GroupElem> t;
    t.reserve(f.domain().cardinality_checked());
    f.domain().for_each_point([&](const GridPoint& p) { t.push_back(f(p)); });
    return t;
}

// Generic enumeration over all coefficient assignments to the patterns of
// weight <= d. Patterns are iterated as an odometer over group elements in
// index order; the first minimizer wins.
GroupDistanceResult enumerate_junta(const GroupOracle& f, int d, std::uint64_t cap) {
    const AbelianGroup& g = f.codomain();
    const GridDomain& dom = f.domain();
    int n = dom.arity();
    std::uint64_t npts = dom.cardinality_checked();
    std::vector<GroupElem> fv = dense_values(f);

    // patterns over a possibly asymmetric grid: (index, symbol) with symbol
    // in [1, size_i - 1]
    std::vector<std::vector<std::pair<int, int>>> pats;
    {
        std::vector<std::vector<std::pair<int, int>>> frontier{{}};
        pats.push_back({});
        for (int w = 1; w <= std::min(d, n); ++w) {
            std::vector<std::vector<std::pair<int, int>>> next;
            for (const auto& a : frontier) {
                int lo = a.empty() ? 0 : a.back().first + 1;
                for (int i = lo; i < n; ++i)
                    for (int sym = 1; sym < dom.size(i); ++sym) {
                        auto b = a;
                        b.emplace_back(i, sym);
                        next.push_back(std::move(b));
                    }
            }
            pats.insert(pats.end(), next.begin(), next.end());
            frontier = std::move(next);
        }
    }

    BigUint count = BigUint::pow(g.size(), (std::uint64_t)pats.size());
    if (!count.fits_u64() || count.to_u64() > cap)
        fail(Errc::family_too_large,
             "exact distance: refusing to enumerate " + count.str() + " members (cap " +
                 std::to_string(cap) + ")");

    // member evaluation tables built incrementally: start from all-zero
    // assignment, and re-evaluate from scratch per assignment (desk scale)
    std::vector<std::uint64_t> coeff_idx(pats.size(), 0);
    std::vector<GroupElem> member(npts);
    std::vector<std::vector<std::uint64_t>> matching(pats.size());
    {
        GridPoint p = dom.first_point();
        std::uint64_t idx = 0;
        do {
            for (std::size_t a = 0; a < pats.size(); ++a) {
                bool match = true;
                for (auto [i, sym] : pats[a])
                    if (p[i] != sym) {
                        match = false;
                        break;
                    }
                if (match) matching[a].push_back(idx);
            }
            ++idx;
        } while (dom.advance(p));
    }

    std::uint64_t best = npts + 1;
    std::vector<GroupElem> best_table;
    for (;;) {
        std::uint64_t mismatches = 0;
        for (std::uint64_t i = 0; i < npts && mismatches < best; ++i)
            mismatches += member[i] != fv[i];
        if (mismatches < best) {
            best = mismatches;
            best_table = member;
            if (best == 0) break;
        }
        // advance odometer; adjust member table by the delta of one coefficient
        std::size_t a = 0;
        for (; a < pats.size(); ++a) {
            GroupElem old_c = g.from_index(coeff_idx[a]);
            coeff_idx[a] = (coeff_idx[a] + 1) % g.size();
            GroupElem new_c = g.from_index(coeff_idx[a]);
            GroupElem delta = g.sub(new_c, old_c);
            for (auto i : matching[a]) member[i] = g.add(member[i], delta);
            if (coeff_idx[a] != 0) break;
        }
        if (a == pats.size()) break;
    }

    GroupDistanceResult r{Frac(best, npts), std::move(best_table), count};
    return r;
}

// Z_2 codomain, d = 1: same fiber optimization, but assignments of the
// coordinate >= 1 cells are walked in gray-code order with bitmask updates,
// one XOR-flip per step.
GroupDistanceResult fiber_optimized_junta_d1_z2(const GroupOracle& f, std::uint64_t cap) {
    const AbelianGroup& g = f.codomain();
    const GridDomain& dom = f.domain();
    int n = dom.arity();
    std::uint64_t npts = dom.cardinality_checked();
    std::vector<GroupElem> fv = dense_values(f);

    std::uint64_t free_cells = 0;
    for (int i = 1; i < n; ++i) free_cells += dom.size(i) - 1;
    require(free_cells < 63, Errc::family_too_large, "exact distance: too many free cells");
    BigUint count = BigUint::pow(2, free_cells);
    if (!count.fits_u64() || count.to_u64() > cap)
        fail(Errc::family_too_large,
             "exact distance: refusing to enumerate " + count.str() + " assignments (cap " +
                 std::to_string(cap) + ")");

    int s0 = dom.size(0);
    std::uint64_t fiber_size = npts / s0;
    std::size_t words_per_fiber = (fiber_size + 63) / 64;
    std::size_t words = (std::size_t)s0 * words_per_fiber;

    struct Cell {
        int coord, sym;
    };
    std::vector<Cell> cells;
    for (int i = 1; i < n; ++i)
        for (int sym = 1; sym < dom.size(i); ++sym) cells.push_back({i, sym});

    // bit layout: fiber v = x_0, slot = rank of the point within its fiber
    std::vector<std::uint64_t> fmask(words, 0);
    std::vector<std::vector<std::uint64_t>> cell_mask(cells.size(),
                                                      std::vector<std::uint64_t>(words, 0));
    {
        GridPoint p = dom.first_point();
        std::vector<std::uint64_t> slot(s0, 0);
        do {
            int v = p[0];
            std::uint64_t bit = slot[v]++;
            std::size_t w = (std::size_t)v * words_per_fiber + bit / 64;
            std::uint64_t m = std::uint64_t(1) << (bit % 64);
            if (g.to_index(fv[dom.index_of(p)]) & 1) fmask[w] |= m;
            for (std::size_t c = 0; c < cells.size(); ++c)
                if (p[cells[c].coord] == cells[c].sym) cell_mask[c][w] |= m;
        } while (dom.advance(p));
    }

    std::vector<std::uint64_t> shift(words, 0);
    std::uint64_t best = npts + 1;
    std::uint64_t best_state = 0;
    std::uint64_t total = std::uint64_t(1) << free_cells;
    for (std::uint64_t step = 0;; ++step) {
        std::uint64_t mismatches = 0;
        for (int v = 0; v < s0; ++v) {
            std::uint64_t ones = 0;
            for (std::size_t w = 0; w < words_per_fiber; ++w) {
                std::size_t k = (std::size_t)v * words_per_fiber + w;
                ones += (std::uint64_t)__builtin_popcountll(fmask[k] ^ shift[k]);
            }
            mismatches += std::min(ones, fiber_size - ones);
        }
        if (mismatches < best) {
            best = mismatches;
            best_state = step ^ (step >> 1); // gray code of the step counter
            if (best == 0) break;
        }
        if (step + 1 == total) break;
        int flip = __builtin_ctzll(step + 1);
        for (std::size_t w = 0; w < words; ++w) shift[w] ^= cell_mask[flip][w];
    }

    // rebuild the witness from best_state
    std::vector<GroupElem> witness(npts, g.zero());
    {
        std::vector<std::uint64_t> shift2(words, 0);
        for (std::size_t c = 0; c < cells.size(); ++c)
            if ((best_state >> c) & 1)
                for (std::size_t w = 0; w < words; ++w) shift2[w] ^= cell_mask[c][w];
        // per-fiber constant: 0 unless flipping beats keeping
        std::vector<int> fiber_bit(s0, 0);
        for (int v = 0; v < s0; ++v) {
            std::uint64_t ones = 0;
            for (std::size_t w = 0; w < words_per_fiber; ++w) {
                std::size_t k = (std::size_t)v * words_per_fiber + w;
                ones += (std::uint64_t)__builtin_popcountll(fmask[k] ^ shift2[k]);
            }
            fiber_bit[v] = ones > fiber_size - ones;
        }
        GridPoint p = dom.first_point();
        std::vector<std::uint64_t> slot(s0, 0);
        GroupElem one = g.from_index(1);
        do {
            int v = p[0];
            std::uint64_t bit = slot[v]++;
            std::size_t w = (std::size_t)v * words_per_fiber + bit / 64;
            int sh = (shift2[w] >> (bit % 64)) & 1;
            int val = sh ^ fiber_bit[v];
            if (val) witness[dom.index_of(p)] = one;
        } while (dom.advance(p));
    }
    return GroupDistanceResult{Frac(best, npts), std::move(witness), count};
}

// d = 1 specialization: fix the tables of coordinates 2..n, then the
// coordinate-1 table plus the constant shift are optimized per fiber by
// histogram maximum. Exact: for d = 1 the coordinate-1 patterns touch no
// other coordinate.
GroupDistanceResult fiber_optimized_junta_d1(const GroupOracle& f, std::uint64_t cap) {
    const AbelianGroup& g = f.codomain();
    const GridDomain& dom = f.domain();
    int n = dom.arity();
    std::uint64_t npts = dom.cardinality_checked();
    std::vector<GroupElem> fv = dense_values(f);
    std::uint64_t gsize = g.size();

    std::uint64_t free_cells = 0;
    for (int i = 1; i < n; ++i) free_cells += dom.size(i) - 1;
    BigUint count = BigUint::pow(gsize, free_cells);
    if (!count.fits_u64() || count.to_u64() > cap)
        fail(Errc::family_too_large,
             "exact distance: refusing to enumerate " + count.str() + " assignments (cap " +
                 std::to_string(cap) + ")");

    // cells: (coordinate i >= 1, symbol >= 1) with a group value each;
    // g_i(0) = 0 pinned, constant folded into the fiber optimization
    struct Cell {
        int coord, sym;
    };
    std::vector<Cell> cells;
    for (int i = 1; i < n; ++i)
        for (int sym = 1; sym < dom.size(i); ++sym) cells.push_back({i, sym});

    std::vector<std::uint64_t> cell_idx(cells.size(), 0);
    // shift[x] = sum_i g_i(x_i) over coordinates >= 1
    std::vector<GroupElem> shift(npts, g.zero());
    std::vector<std::vector<std::uint64_t>> matching(cells.size());
    std::vector<std::uint32_t> fiber_of(npts);
    {
        GridPoint p = dom.first_point();
        std::uint64_t idx = 0;
        do {
            fiber_of[idx] = (std::uint32_t)p[0];
            for (std::size_t c = 0; c < cells.size(); ++c)
                if (p[cells[c].coord] == cells[c].sym) matching[c].push_back(idx);
            ++idx;
        } while (dom.advance(p));
    }

    int s0 = dom.size(0);
    std::uint64_t fiber_size = npts / s0;
    std::vector<std::uint64_t> hist((std::size_t)s0 * gsize);

    std::uint64_t best = npts + 1;
    std::vector<std::uint64_t> best_cells;
    std::vector<GroupElem> best_fiber_vals;
    for (;;) {
        // histogram of f(x) - shift(x) per fiber of coordinate 1
        std::fill(hist.begin(), hist.end(), 0);
        for (std::uint64_t i = 0; i < npts; ++i) {
            GroupElem h = g.sub(fv[i], shift[i]);
            ++hist[fiber_of[i] * gsize + g.to_index(h)];
        }
        std::uint64_t mismatches = 0;
        std::vector<GroupElem> fiber_vals(s0, g.zero());
        for (int v = 0; v < s0; ++v) {
            std::uint64_t mx = 0;
            std::uint64_t arg = 0;
            for (std::uint64_t gi = 0; gi < gsize; ++gi)
                if (hist[(std::size_t)v * gsize + gi] > mx) {
                    mx = hist[(std::size_t)v * gsize + gi];
                    arg = gi;
                }
            mismatches += fiber_size - mx;
            fiber_vals[v] = g.from_index(arg);
        }
        if (mismatches < best) {
            best = mismatches;
            best_cells = cell_idx;
            best_fiber_vals = fiber_vals;
            if (best == 0) break;
        }
        std::size_t c = 0;
        for (; c < cells.size(); ++c) {
            GroupElem old_c = g.from_index(cell_idx[c]);
            cell_idx[c] = (cell_idx[c] + 1) % gsize;
            GroupElem new_c = g.from_index(cell_idx[c]);
            GroupElem delta = g.sub(new_c, old_c);
            for (auto i : matching[c]) shift[i] = g.add(shift[i], delta);
            if (cell_idx[c] != 0) break;
        }
        if (c == cells.size()) break;
    }

    // rebuild the witness table from the best assignment
    std::vector<GroupElem> witness(npts, g.zero());
    {
        std::vector<GroupElem> shift2(npts, g.zero());
        for (std::size_t c = 0; c < cells.size(); ++c) {
            GroupElem val = g.from_index(best_cells[c]);
            if (val == g.zero()) continue;
            for (auto i : matching[c]) shift2[i] = g.add(shift2[i], val);
        }
        for (std::uint64_t i = 0; i < npts; ++i)
            witness[i] = g.add(shift2[i], best_fiber_vals[fiber_of[i]]);
    }
    return GroupDistanceResult{Frac(best, npts), std::move(witness), count};
}

} // namespace

GroupDistanceResult exact_distance_junta(const GroupOracle& f, int d, std::uint64_t family_cap) {
    require(d >= 0, Errc::invalid_argument, "exact distance: d must be >= 0");
    const GridDomain& dom = f.domain();
    if (d == 0 || dom.arity() == 1) {
        // constants (d=0) handled by the generic enumeration too, but a
        // histogram is immediate
        if (d == 0) {
            const AbelianGroup& g = f.codomain();
            std::uint64_t npts = dom.cardinality_checked();
            std::vector<GroupElem> fv = dense_values(f);
            std::vector<std::uint64_t> hist(g.size(), 0);
            for (auto v : fv) ++hist[g.to_index(v)];
            std::uint64_t mx = 0, arg = 0;
            for (std::uint64_t gi = 0; gi < g.size(); ++gi)
                if (hist[gi] > mx) {
                    mx = hist[gi];
                    arg = gi;
                }
            std::vector<GroupElem> witness(npts, g.from_index(arg));
            return GroupDistanceResult{Frac(npts - mx, npts), std::move(witness), BigUint(g.size())};
        }
    }
    if (d == 1 && dom.arity() >= 2) {
        if (f.codomain().size() == 2) return fiber_optimized_junta_d1_z2(f, family_cap);
        return fiber_optimized_junta_d1(f, family_cap);
    }
    return enumerate_junta(f, d, family_cap);
}

FieldDistanceResult exact_distance_degree(const FieldOracle& f, const EvalSet& S, int d,
                                          std::uint64_t family_cap) {
    require(d >= 0, Errc::invalid_argument, "exact distance: d must be >= 0");
    const PrimeField& field = f.codomain();
    require(field.same(S.field()), Errc::domain_mismatch, "exact distance: field mismatch");
    const GridDomain& dom = f.domain();
    require(dom.symmetric_shape() && dom.size(0) == S.size(), Errc::domain_mismatch,
            "exact distance: oracle domain must be S^n");
    int n = dom.arity();
    std::uint64_t npts = dom.cardinality_checked();

    std::vector<Fp> fv;
    if (f.dense()) {
        fv = f.table();
    } else {
        fv.reserve(npts);
        dom.for_each_point([&](const GridPoint& p) { fv.push_back(f(p)); });
    }

    auto monos = monomials_up_to(n, S.size(), d);
    BigUint count = BigUint::pow(field.p(), (std::uint64_t)monos.size());
    if (!count.fits_u64() || count.to_u64() > family_cap)
        fail(Errc::family_too_large,
             "exact distance: refusing to enumerate " + count.str() + " members (cap " +
                 std::to_string(family_cap) + ")");

    // monomial value per point
    std::vector<std::vector<Fp>> mval(monos.size(), std::vector<Fp>(npts));
    {
        GridPoint p = dom.first_point();
        std::uint64_t idx = 0;
        do {
            for (std::size_t a = 0; a < monos.size(); ++a) {
                Fp m = field.one();
                for (int i = 0; i < n; ++i)
                    if (monos[a][i]) m = field.mul(m, field.pow(S.elem(p[i]), monos[a][i]));
                mval[a][idx] = m;
            }
            ++idx;
        } while (dom.advance(p));
    }

    std::vector<Fp> coeff(monos.size(), 0);
    std::vector<Fp> member(npts, 0);
    std::uint64_t best = npts + 1;
    std::vector<Fp> best_table;
    for (;;) {
        std::uint64_t mismatches = 0;
        for (std::uint64_t i = 0; i < npts && mismatches < best; ++i)
            mismatches += member[i] != fv[i];
        if (mismatches < best) {
            best = mismatches;
            best_table = member;
            if (best == 0) break;
        }
        std::size_t a = 0;
        for (; a < monos.size(); ++a) {
            coeff[a] = coeff[a] == field.p() - 1 ? 0 : coeff[a] + 1;
            // member += mval[a] (one unit of this coefficient)
            for (std::uint64_t i = 0; i < npts; ++i)
                member[i] = field.add(member[i], mval[a][i]);
            if (coeff[a] != 0) break;
        }
        if (a == monos.size()) break;
    }
    return FieldDistanceResult{Frac(best, npts), std::move(best_table), count};
}

CorruptedFunction random_function_at_distance_junta(const AbelianGroup& g, int s, int n, int d,
                                                    Frac target, Rng& rng,
                                                    std::uint64_t family_cap, bool remeasure) {
    GridDomain dom = GridDomain::symmetric(s, n);
    std::uint64_t npts = dom.cardinality_checked();
    unsigned __int128 prod = (unsigned __int128)target.num * npts;
    require(prod % target.den == 0, Errc::invalid_argument,
            "random_function_at_distance: target * #points must be integral");
    std::uint64_t corrupt = (std::uint64_t)(prod / target.den);
    require(corrupt <= npts, Errc::invalid_argument, "random_function_at_distance: target > 1");

    JuntaPolynomial member = JuntaPolynomial::random(g, s, n, d, rng);
    std::vector<GroupElem> table = member.dense_table();

    // choose `corrupt` distinct points by partial shuffle
    std::vector<std::uint64_t> idx(npts);
    for (std::uint64_t i = 0; i < npts; ++i) idx[i] = i;
    for (std::uint64_t i = 0; i < corrupt; ++i) {
        std::uint64_t j = i + rng.below(npts - i);
        std::swap(idx[i], idx[j]);
        // fresh value, different from the member's
        std::uint64_t shift = 1 + rng.below(g.size() - 1);
        table[idx[i]] = g.add(table[idx[i]], g.from_index(shift));
    }

    GroupOracle oracle(dom, g, std::move(table));
    Frac measured(0, 1);
    if (remeasure) measured = exact_distance_junta(oracle, d, family_cap).distance;
    return CorruptedFunction{std::move(oracle), corrupt, measured};
}

} // namespace gridtest
