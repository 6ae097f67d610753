#ifndef GRIDTEST_COMMON_HPP
#define GRIDTEST_COMMON_HPP

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace gridtest {

enum class Errc {
    invalid_argument,
    domain_mismatch,
    domain_too_large,
    budget_exceeded,
    family_too_large,
    parse_error,
    construction_failed,
    no_collision,
    io_error,
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, Errc code, const std::string& what) {
    if (!cond) fail(code, what);
}

// Dense tables and point enumerations are refused beyond this many points
// unless the caller passes an explicit budget.
constexpr std::uint64_t kDefaultPointBudget = 10'000'000;

// Family enumeration cap for exact-distance computations.
constexpr std::uint64_t kDefaultFamilyCap = 100'000'000;

/// Exact non-negative rational on 64-bit words, always stored reduced.
struct Frac {
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    Frac() = default;
    Frac(std::uint64_t n, std::uint64_t d) : num(n), den(d) {
        require(d != 0, Errc::invalid_argument, "Frac: zero denominator");
        std::uint64_t g = std::gcd(num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    friend bool operator==(const Frac& a, const Frac& b) { return a.num == b.num && a.den == b.den; }
    friend bool operator!=(const Frac& a, const Frac& b) { return !(a == b); }
    friend bool operator<(const Frac& a, const Frac& b) {
        return (unsigned __int128)a.num * b.den < (unsigned __int128)b.num * a.den;
    }
    friend bool operator<=(const Frac& a, const Frac& b) { return !(b < a); }
    friend bool operator>(const Frac& a, const Frac& b) { return b < a; }
    friend bool operator>=(const Frac& a, const Frac& b) { return !(a < b); }

    std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

} // namespace gridtest

#endif
