#ifndef GRIDTEST_ORACLE_HPP
#define GRIDTEST_ORACLE_HPP

#include <atomic>
#include <functional>
#include <memory>
#include <vector>

#include "gridtest/common.hpp"
#include "gridtest/field.hpp"
#include "gridtest/grid.hpp"
#include "gridtest/group.hpp"

namespace gridtest {

/// Query-counted function from a grid domain to a group or field.
/// Backed either by a dense read-only table or an evaluation callback.
/// The query counter is atomic; concurrent evaluation is allowed.
template <typename Codomain>
class Oracle {
public:
    using Elem = typename Codomain::Elem;

    Oracle(GridDomain domain, Codomain codomain, std::vector<Elem> table)
        : domain_(std::move(domain)), codomain_(std::move(codomain)), table_(std::move(table)) {
        require(BigUint(table_.size()) == domain_.cardinality(), Errc::invalid_argument,
                "oracle: dense table must have one entry per point");
    }

    Oracle(GridDomain domain, Codomain codomain, std::function<Elem(const GridPoint&)> fn)
        : domain_(std::move(domain)), codomain_(std::move(codomain)), fn_(std::move(fn)) {}

    Oracle(const Oracle& o)
        : domain_(o.domain_), codomain_(o.codomain_), table_(o.table_), fn_(o.fn_),
          queries_(o.queries_.load(std::memory_order_relaxed)) {}

    const GridDomain& domain() const { return domain_; }
    const Codomain& codomain() const { return codomain_; }
    bool dense() const { return fn_ == nullptr; }

    /// One evaluation = one query, always.
    Elem operator()(const GridPoint& p) const {
        queries_.fetch_add(1, std::memory_order_relaxed);
        if (dense()) return table_[domain_.index_of(p)];
        return fn_(p);
    }

    std::uint64_t query_count() const { return queries_.load(std::memory_order_relaxed); }
    void reset_query_count() const { queries_.store(0, std::memory_order_relaxed); }

    /// Dense values without query accounting; requires dense backing.
    const std::vector<Elem>& table() const {
        require(dense(), Errc::invalid_argument, "oracle: dense backing required");
        return table_;
    }

    /// Materializes a callback oracle into a dense one (counts queries).
    Oracle densified(std::uint64_t budget = kDefaultPointBudget) const {
        std::vector<Elem> t;
        t.reserve(domain_.cardinality_checked(budget));
        domain_.for_each_point([&](const GridPoint& p) { t.push_back((*this)(p)); }, budget);
        return Oracle(domain_, codomain_, std::move(t));
    }

private:
    GridDomain domain_;
    Codomain codomain_;
    std::vector<Elem> table_;
    std::function<Elem(const GridPoint&)> fn_;
    mutable std::atomic<std::uint64_t> queries_{0};
};

using GroupOracle = Oracle<AbelianGroup>;
using FieldOracle = Oracle<PrimeField>;

/// Exact fraction of points where f and g disagree. Dense backing and
/// identical domains/codomains required.
template <typename Codomain>
Frac fraction_disagree(const Oracle<Codomain>& f, const Oracle<Codomain>& g) {
    require(f.domain().same(g.domain()), Errc::domain_mismatch, "fraction_disagree: domain mismatch");
    require(f.codomain().same(g.codomain()), Errc::domain_mismatch, "fraction_disagree: codomain mismatch");
    const auto& ft = f.table();
    const auto& gt = g.table();
    std::uint64_t diff = 0;
    for (std::size_t i = 0; i < ft.size(); ++i) diff += (ft[i] != gt[i]);
    return Frac(diff, ft.size());
}

/// View of a field oracle as an oracle into the additive group Z_p.
/// Queries forward to (and are counted by) the underlying oracle.
inline GroupOracle additive_group_view(const FieldOracle& f) {
    AbelianGroup g = AbelianGroup::cyclic(f.codomain().p());
    return GroupOracle(f.domain(), g, [&f, g](const GridPoint& p) {
        return g.make({f(p)});
    });
}

} // namespace gridtest

#endif
