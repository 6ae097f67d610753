#ifndef GRIDTEST_ACCEPTANCE_HPP
#define GRIDTEST_ACCEPTANCE_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace gridtest {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    double seconds = 0;
    std::string detail;
};

/// Runs the full acceptance suite, printing one PASS/FAIL line per criterion
/// to `out`. `only` restricts to criteria whose name contains the substring
/// (empty = all). Returns all results; failures = entries with pass == false.
std::vector<CriterionResult> run_acceptance(std::ostream& out, int threads = 0,
                                            const std::string& only = "");

} // namespace gridtest

#endif
