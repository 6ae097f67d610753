#ifndef GRIDTEST_DISTANCE_HPP
#define GRIDTEST_DISTANCE_HPP

#include <vector>

#include "gridtest/field_poly.hpp"
#include "gridtest/junta_poly.hpp"
#include "gridtest/oracle.hpp"

namespace gridtest {

enum class FamilyKind { junta_degree, degree };

struct GroupDistanceResult {
    Frac distance;
    std::vector<GroupElem> witness; // dense table of a nearest member
    BigUint enumerated;             // size of the searched coefficient space
};

struct FieldDistanceResult {
    Frac distance;
    std::vector<Fp> witness;
    BigUint enumerated;
};

/// Exact min distance of f to the junta-degree-d family over its codomain
/// group, by exhaustive enumeration of canonical coefficient assignments
/// (with the coordinate-1 fiber optimization for d = 1). The witness is the
/// first minimizer in enumeration order.
GroupDistanceResult exact_distance_junta(const GroupOracle& f, int d,
                                         std::uint64_t family_cap = kDefaultFamilyCap);

/// Exact min distance of f: S^n -> F_p to the degree-d family, enumerating
/// reduced-polynomial coefficient vectors with incumbent pruning.
FieldDistanceResult exact_distance_degree(const FieldOracle& f, const EvalSet& S, int d,
                                          std::uint64_t family_cap = kDefaultFamilyCap);

/// Random junta-degree-d member corrupted on exactly `points` uniformly
/// chosen points with fresh (different) values. `measured` is the re-measured
/// exact distance; the corruption fraction is only an upper bound on it.
struct CorruptedFunction {
    GroupOracle oracle;
    std::uint64_t corrupted;
    Frac measured;
};

CorruptedFunction random_function_at_distance_junta(const AbelianGroup& g, int s, int n, int d,
                                                    Frac target, Rng& rng,
                                                    std::uint64_t family_cap = kDefaultFamilyCap,
                                                    bool remeasure = true);

} // namespace gridtest

#endif
