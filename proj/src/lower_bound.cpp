#include "gridtest/lower_bound.hpp"

#include <algorithm>
#include <map>

namespace gridtest {

AsymmetricGrid make_asymmetric_grid(int n) {
    require(n >= 1, Errc::invalid_argument, "asymmetric grid: n must be >= 1");
    AsymmetricGrid g;
    g.n = n;
    g.field = PrimeField(PrimeField::next_prime((std::uint32_t)n + 2));
    g.a.resize(n);
    for (int i = 0; i < n; ++i) g.a[i] = (Fp)(i + 2); // distinct, not 0 or 1
    return g;
}

FieldOracle hard_function(const AsymmetricGrid& grid, int i) {
    require(i >= 0 && i < grid.n, Errc::invalid_argument, "hard function: index out of range");
    GridDomain dom = GridDomain::symmetric(3, grid.n);
    PrimeField f = grid.field;
    Fp ai = grid.a[i];
    Fp nonzero = f.mul(ai, f.sub(ai, 1)); // a_i(a_i - 1) != 0
    return FieldOracle(dom, f, [i, nonzero](const GridPoint& x) -> Fp {
        return x[i] == 2 ? nonzero : 0;
    });
}

QueryMatrix QueryMatrix::random(const AsymmetricGrid& grid, int ell, Rng& rng) {
    QueryMatrix m;
    m.ell = ell;
    m.n = grid.n;
    m.sym.resize((std::size_t)ell * grid.n);
    for (auto& v : m.sym) v = (std::uint8_t)rng.below(3);
    return m;
}

std::vector<std::uint8_t> zeta_column(const QueryMatrix& m, int col) {
    std::vector<std::uint8_t> z(m.ell);
    for (int r = 0; r < m.ell; ++r) z[r] = m.at(r, col);
    return z;
}

std::optional<int> zeta_collision(const QueryMatrix& m, int i) {
    require(i >= 0 && i < m.n, Errc::invalid_argument, "zeta collision: index out of range");
    auto zi = zeta_column(m, i);
    for (int j = 0; j < m.n; ++j) {
        if (j == i) continue;
        if (zeta_column(m, j) == zi) return j;
    }
    return std::nullopt;
}

Frac bad_fraction(const QueryMatrix& m) {
    std::map<std::vector<std::uint8_t>, int> counts;
    for (int j = 0; j < m.n; ++j) ++counts[zeta_column(m, j)];
    std::uint64_t bad = 0;
    for (int j = 0; j < m.n; ++j)
        if (counts[zeta_column(m, j)] == 1) ++bad;
    return Frac(bad, (std::uint64_t)m.n);
}

std::vector<Fp> hard_values_on_rows(const QueryMatrix& m, int i, const AsymmetricGrid& grid) {
    const PrimeField& f = grid.field;
    Fp ai = grid.a[i];
    Fp nonzero = f.mul(ai, f.sub(ai, 1));
    std::vector<Fp> v(m.ell);
    for (int r = 0; r < m.ell; ++r) v[r] = m.at(r, i) == 2 ? nonzero : 0;
    return v;
}

std::vector<std::pair<int, Fp>> fooling_certificate(const QueryMatrix& m, int i, int j,
                                                    const AsymmetricGrid& grid) {
    require(i != j && i >= 0 && j >= 0 && i < m.n && j < m.n, Errc::invalid_argument,
            "fooling certificate: bad columns");
    if (zeta_column(m, i) != zeta_column(m, j))
        fail(Errc::no_collision, "fooling certificate: columns " + std::to_string(i) + " and " +
                                     std::to_string(j) + " do not zeta-collide");

    const PrimeField& f = grid.field;
    Fp ai = grid.a[i], aj = grid.a[j];
    Fp c = f.div(f.mul(ai, f.sub(ai, 1)), f.sub(ai, aj));
    std::vector<std::pair<int, Fp>> cert{{i, c}, {j, f.neg(c)}};

    // exact verification: M * cert must equal the hard-function query values
    std::vector<Fp> want = hard_values_on_rows(m, i, grid);
    for (int r = 0; r < m.ell; ++r) {
        Fp got = f.sub(f.mul(c, grid.value(i, m.at(r, i))), f.mul(c, grid.value(j, m.at(r, j))));
        require(got == want[r], Errc::construction_failed,
                "fooling certificate: verification failed at row " + std::to_string(r));
    }
    return cert;
}

namespace {

std::vector<std::vector<Fp>> value_columns(const QueryMatrix& m, const AsymmetricGrid& grid) {
    std::vector<std::vector<Fp>> cols(m.n, std::vector<Fp>(m.ell));
    for (int c = 0; c < m.n; ++c)
        for (int r = 0; r < m.ell; ++r) cols[c][r] = grid.value(c, m.at(r, c));
    return cols;
}

int rank_of(std::vector<std::vector<Fp>> rows, const PrimeField& f) {
    if (rows.empty()) return 0;
    std::size_t cols = rows[0].size();
    int rank = 0;
    std::size_t rr = 0;
    for (std::size_t c = 0; c < cols && rr < rows.size(); ++c) {
        std::size_t piv = rr;
        while (piv < rows.size() && rows[piv][c] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rr]);
        Fp inv = f.inv(rows[rr][c]);
        for (auto& x : rows[rr]) x = f.mul(x, inv);
        for (std::size_t r2 = 0; r2 < rows.size(); ++r2) {
            if (r2 == rr || rows[r2][c] == 0) continue;
            Fp factor = rows[r2][c];
            for (std::size_t c2 = c; c2 < cols; ++c2)
                rows[r2][c2] = f.sub(rows[r2][c2], f.mul(factor, rows[rr][c2]));
        }
        ++rank;
        ++rr;
    }
    return rank;
}

} // namespace

int matrix_rank(const QueryMatrix& m, const AsymmetricGrid& grid) {
    return rank_of(value_columns(m, grid), grid.field);
}

bool in_column_space(const QueryMatrix& m, const AsymmetricGrid& grid, const std::vector<Fp>& v) {
    require((int)v.size() == m.ell, Errc::invalid_argument, "column space: length mismatch");
    auto cols = value_columns(m, grid);
    int r0 = rank_of(cols, grid.field);
    cols.push_back(v);
    return rank_of(cols, grid.field) == r0;
}

} // namespace gridtest
