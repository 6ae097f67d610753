#ifndef GRIDTEST_REFERENCE_HPP
#define GRIDTEST_REFERENCE_HPP

#include <vector>

#include "gridtest/bigint.hpp"
#include "gridtest/field.hpp"
#include "gridtest/grid.hpp"
#include "gridtest/group.hpp"
#include "gridtest/oracle.hpp"

// Independent reference implementations used only to cross-check the primary
// paths. Nothing here may call interpolate(), the testers, or the Fourier
// transform; each oracle goes back to the defining property it checks.

namespace gridtest::reference {

/// Definition-based junta-degree: the least d such that f is a sum of
/// d-juntas. For prime cyclic codomains this is membership of f in the
/// F_p-span of the d-junta indicator generators 1[x^D = a], computed by
/// Gaussian elimination on truth tables; small composite codomains fall back
/// to exhaustive enumeration of sums of generators.
int brute_force_junta_degree(const GridDomain& dom, const AbelianGroup& g,
                             const std::vector<GroupElem>& values);

/// Dense subset-lattice route to the canonical coefficients: for every
/// pattern a, g_a = sum over T subseteq supp(a) of (-1)^(|supp(a)|-|T|) *
/// f(a restricted to T, zero elsewhere). O(s^n 2^n), independent of the
/// peeling interpolation. Returned as (point index of a) -> g_a for the
/// nonzero coefficients.
std::vector<std::pair<std::uint64_t, GroupElem>> interpolate_inclusion_exclusion(
    const GridDomain& dom, const AbelianGroup& g, const std::vector<GroupElem>& values);

/// Membership of f in the set of sums of d-juntas, same routes as above.
bool is_sum_of_d_juntas(const GridDomain& dom, const AbelianGroup& g,
                        const std::vector<GroupElem>& values, int d);

/// Sum of chi_alpha(y) over the radius-m sphere {y : #y = m} in Z_s^n,
/// accumulated as exact counts of each power of omega and reduced in the
/// cyclotomic field Q(omega). Returned as exact rational coordinates in the
/// power basis 1, omega, ..., omega^(phi(s)-1).
std::vector<BigRat> sphere_character_sum_cyclotomic(const std::vector<Coord>& alpha, int s, int m);

/// Exact spherical character expectation derived from the cyclotomic sum;
/// fails if the sum has any nonzero coordinate beyond the constant one.
BigRat sphere_char_expectation_bruteforce(const std::vector<Coord>& alpha, int s, int m);

/// Exact collision probability under spherical noise by direct double
/// counting: |{(x, mu) : x in A, #mu = m, x+mu in A}| / (s^n * |sphere|).
BigRat spherical_collision_bruteforce(int s, int n, const std::vector<char>& indicator, int m);

/// Bernoulli collision probability by the direct double sum over pairs.
double bernoulli_collision_bruteforce(int s, int n, const std::vector<char>& indicator, double nu);

/// Exact rejection probability of the recursive junta tester by exhaustive
/// enumeration of every identification history (all (i, j, pi) choices at
/// every level). Feasible only for tiny (n, k, s).
double recursive_tester_exact_rejection(const GroupOracle& f, int d, int k);

/// Coefficients of the cyclotomic polynomial Phi_s, ascending degree.
std::vector<long long> cyclotomic_polynomial(int s);

} // namespace gridtest::reference

#endif
