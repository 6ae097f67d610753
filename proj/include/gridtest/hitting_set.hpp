#ifndef GRIDTEST_HITTING_SET_HPP
#define GRIDTEST_HITTING_SET_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "gridtest/group.hpp"
#include "gridtest/rng.hpp"

namespace gridtest {

/// A linear binary code U = {Mz : z in F_2^w} inside {0,1}^k with all
/// pairwise distances in [k/4, 3k/4], together with a sign function
/// chi(Mz) = (-1)^<z,eta> under which every indicator sum over a pattern of
/// weight <= d vanishes. Consequently no junta-degree-d function (into any
/// abelian group) can be nonzero at exactly one point of U.
struct HittingSet {
    int k = 0;
    int d = 0;
    int w = 0;
    std::vector<std::uint32_t> rows; // k rows of M, each a w-bit mask
    std::uint32_t eta = 0;           // w-bit mask, outside the span of any d rows
    std::vector<std::uint64_t> points; // the 2^w codewords, k-bit masks, index = z
    std::vector<std::int8_t> chi;      // chi[z] in {+1,-1}

    std::uint64_t size() const { return points.size(); }

    /// M, eta and U listed row-wise.
    std::string serialize() const;
};

/// Smallest w with C(k,d)*2^d < 2^w.
int hitting_set_width(int k, int d);

/// Rejection-samples M until all invariants verify exhaustively; throws
/// construction_failed after max_retries, invalid_argument when no width
/// can work (2^w would exceed 2^k).
HittingSet build_hitting_set(int k, int d, int s, Rng& rng, int max_retries = 1000);

/// Exhaustive re-verification of all three invariants (code distances,
/// pattern sign sums, eta outside row spans).
bool verify_hitting_set(const HittingSet& h, int s);

/// True iff no junta-degree-d junta-polynomial over `group` is nonzero at
/// exactly one point of U. Checks the sign-sum identity on every indicator
/// pattern (which implies it for all coefficient choices), then cross-checks
/// on `samples` random junta-polynomials.
bool verify_one_point_separation(const std::vector<std::uint64_t>& points,
                                 const std::vector<std::int8_t>& chi, int k, int d, int s,
                                 const AbelianGroup& group, Rng& rng, int samples = 100,
                                 std::uint64_t budget = kDefaultPointBudget);

inline bool verify_one_point_separation(const HittingSet& h, int s, const AbelianGroup& group,
                                        Rng& rng, int samples = 100) {
    return verify_one_point_separation(h.points, h.chi, h.k, h.d, s, group, rng, samples);
}

} // namespace gridtest

#endif
