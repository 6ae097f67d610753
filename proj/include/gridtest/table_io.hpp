#ifndef GRIDTEST_TABLE_IO_HPP
#define GRIDTEST_TABLE_IO_HPP

#include <iosfwd>
#include <string>
#include <variant>

#include "gridtest/oracle.hpp"

namespace gridtest {

/// A loaded function table: group-valued (codomain Z<m>) or field-valued (F<p>).
using LoadedOracle = std::variant<GroupOracle, FieldOracle>;

// Text format, one point per line in lexicographic order:
//   sizes: s1 s2 ... sn
//   codomain: Z<m> | F<p>
//   x1 x2 ... xn | value
LoadedOracle read_table(std::istream& in, std::uint64_t budget = kDefaultPointBudget);
LoadedOracle load_table(const std::string& path, std::uint64_t budget = kDefaultPointBudget);

void write_table(std::ostream& out, const GroupOracle& f);
void write_table(std::ostream& out, const FieldOracle& f);
void save_table(const std::string& path, const LoadedOracle& f);

inline const GridDomain& loaded_domain(const LoadedOracle& f) {
    return std::visit([](const auto& o) -> const GridDomain& { return o.domain(); }, f);
}

inline std::string loaded_codomain_descriptor(const LoadedOracle& f) {
    return std::visit([](const auto& o) { return o.codomain().descriptor(); }, f);
}

} // namespace gridtest

#endif
