#ifndef GRIDTEST_LOWER_BOUND_HPP
#define GRIDTEST_LOWER_BOUND_HPP

#include <optional>
#include <vector>

#include "gridtest/field.hpp"
#include "gridtest/oracle.hpp"
#include "gridtest/rng.hpp"

namespace gridtest {

/// The asymmetric grid of the degree-testing lower bound: S_i = {0, 1, a_i}
/// over F_p with p the smallest prime >= n+2 and a_i = i+1 (all distinct,
/// none Boolean). Coordinates are stored as symbols 0,1,2 with 2 <-> a_i.
struct AsymmetricGrid {
    int n = 0;
    PrimeField field;
    std::vector<Fp> a; // a[i] for column i, 0-based

    Fp value(int col, int sym) const { return sym == 2 ? a[col] : (Fp)sym; }
};

AsymmetricGrid make_asymmetric_grid(int n);

/// g(x) = x_i (x_i - 1): zero iff the i-th coordinate is Boolean,
/// junta-degree 1 but not degree 1.
FieldOracle hard_function(const AsymmetricGrid& grid, int i);

/// ell x n matrix of query points, entries stored as symbols {0,1,2}.
struct QueryMatrix {
    int ell = 0, n = 0;
    std::vector<std::uint8_t> sym; // row-major

    std::uint8_t at(int row, int col) const { return sym[(std::size_t)row * n + col]; }
    std::uint8_t& at(int row, int col) { return sym[(std::size_t)row * n + col]; }

    static QueryMatrix random(const AsymmetricGrid& grid, int ell, Rng& rng);
};

/// zeta projection of a column: Boolean entries kept, non-Boolean -> 2 (star).
/// Identical already at the symbol level, so a column's zeta-vector is its
/// symbol vector.
std::vector<std::uint8_t> zeta_column(const QueryMatrix& m, int col);

/// Some j != i whose zeta-column equals column i's, if any ("i is not bad").
std::optional<int> zeta_collision(const QueryMatrix& m, int i);

/// Fraction of indices with no zeta-collision; always <= min(1, 3^ell / n).
Frac bad_fraction(const QueryMatrix& m);

/// Coefficient vector c supported on columns i and j with M c equal to the
/// query values of hard_function(i):
/// c_i = a_i(a_i-1)/(a_i-a_j), c_j = -c_i. Verified by exact arithmetic;
/// throws no_collision unless the columns zeta-collide.
std::vector<std::pair<int, Fp>> fooling_certificate(const QueryMatrix& m, int i, int j,
                                                    const AsymmetricGrid& grid);

/// Query values of hard_function(i) at the rows of m.
std::vector<Fp> hard_values_on_rows(const QueryMatrix& m, int i, const AsymmetricGrid& grid);

/// Rank of the ell x n matrix of field values over F_p.
int matrix_rank(const QueryMatrix& m, const AsymmetricGrid& grid);

/// True iff v lies in the column space of m over F_p.
bool in_column_space(const QueryMatrix& m, const AsymmetricGrid& grid, const std::vector<Fp>& v);

} // namespace gridtest

#endif
