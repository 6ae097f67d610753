#include "gridtest/table_io.hpp"

#include <fstream>
#include <sstream>

namespace gridtest {

namespace {

[[noreturn]] void parse_fail(int line, const std::string& what) {
    fail(Errc::parse_error, "table: line " + std::to_string(line) + ": " + what);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream iss(s);
    std::string tok;
    while (iss >> tok) out.push_back(tok);
    return out;
}

long long parse_int(const std::string& tok, int line) {
    try {
        std::size_t pos = 0;
        long long v = std::stoll(tok, &pos);
        if (pos != tok.size()) parse_fail(line, "bad integer '" + tok + "'");
        return v;
    } catch (const Error&) {
        throw;
    } catch (...) {
        parse_fail(line, "bad integer '" + tok + "'");
    }
}

} // namespace

LoadedOracle read_table(std::istream& in, std::uint64_t budget) {
    std::string line;
    int lineno = 0;

    require(static_cast<bool>(std::getline(in, line)), Errc::parse_error, "table: empty input");
    ++lineno;
    auto head = split_ws(line);
    if (head.empty() || head[0] != "sizes:") parse_fail(lineno, "expected 'sizes: s1 ... sn'");
    std::vector<Coord> sizes;
    for (std::size_t i = 1; i < head.size(); ++i) {
        long long v = parse_int(head[i], lineno);
        if (v < 1 || v > 1'000'000) parse_fail(lineno, "size out of range");
        sizes.push_back(static_cast<Coord>(v));
    }
    if (sizes.empty()) parse_fail(lineno, "no sizes given");
    GridDomain dom(sizes);
    std::uint64_t npts = dom.cardinality_checked(budget);

    require(static_cast<bool>(std::getline(in, line)), Errc::parse_error, "table: line 2: missing codomain");
    ++lineno;
    auto codo = split_ws(line);
    if (codo.size() != 2 || codo[0] != "codomain:") parse_fail(lineno, "expected 'codomain: Z<m> | F<p>'");
    bool is_field;
    std::uint32_t modulus;
    if (codo[1].size() >= 2 && codo[1][0] == 'Z' && codo[1].find('x') == std::string::npos) {
        is_field = false;
        long long m = parse_int(codo[1].substr(1), lineno);
        if (m < 1 || m > 0xffff) parse_fail(lineno, "codomain order out of range");
        modulus = static_cast<std::uint32_t>(m);
    } else if (codo[1].size() >= 2 && codo[1][0] == 'F') {
        is_field = true;
        long long p = parse_int(codo[1].substr(1), lineno);
        if (p < 2 || p > 0x7fffffff || !PrimeField::is_prime((std::uint32_t)p))
            parse_fail(lineno, "codomain '" + codo[1] + "' is not a prime field");
        modulus = static_cast<std::uint32_t>(p);
    } else {
        parse_fail(lineno, "codomain must be Z<m> or F<p>, got '" + codo[1] + "'");
    }

    std::vector<std::uint32_t> values;
    values.reserve(npts);
    GridPoint expect = dom.first_point();
    bool more = true;
    while (std::getline(in, line)) {
        ++lineno;
        if (split_ws(line).empty()) continue;
        if (!more) parse_fail(lineno, "extra row past the last point");
        auto bar = line.find('|');
        if (bar == std::string::npos) parse_fail(lineno, "expected 'x1 ... xn | value'");
        auto coords = split_ws(line.substr(0, bar));
        auto vals = split_ws(line.substr(bar + 1));
        if ((int)coords.size() != dom.arity()) parse_fail(lineno, "wrong number of coordinates");
        if (vals.size() != 1) parse_fail(lineno, "expected exactly one value");
        for (int i = 0; i < dom.arity(); ++i) {
            long long c = parse_int(coords[i], lineno);
            if (c != expect[i]) parse_fail(lineno, "points must appear in lexicographic order");
        }
        long long v = parse_int(vals[0], lineno);
        if (v < 0 || v >= (long long)modulus) parse_fail(lineno, "value out of range for " + codo[1]);
        values.push_back(static_cast<std::uint32_t>(v));
        more = dom.advance(expect);
    }
    if (more || values.size() != npts)
        fail(Errc::parse_error, "table: expected " + std::to_string(npts) + " rows, got " +
                                    std::to_string(values.size()));

    if (is_field) {
        PrimeField f(modulus);
        std::vector<Fp> tab(values.begin(), values.end());
        return FieldOracle(dom, f, std::move(tab));
    }
    AbelianGroup g = AbelianGroup::cyclic(modulus);
    std::vector<GroupElem> tab;
    tab.reserve(values.size());
    for (auto v : values) tab.push_back(g.make({v}));
    return GroupOracle(dom, g, std::move(tab));
}

LoadedOracle load_table(const std::string& path, std::uint64_t budget) {
    std::ifstream in(path);
    require(static_cast<bool>(in), Errc::io_error, "table: cannot open '" + path + "'");
    return read_table(in, budget);
}

namespace {

template <typename Codomain, typename Fmt>
void write_table_impl(std::ostream& out, const Oracle<Codomain>& f, const std::string& codomain, Fmt fmt) {
    out << "sizes:";
    for (Coord s : f.domain().sizes()) out << ' ' << s;
    out << "\ncodomain: " << codomain << '\n';
    const auto& tab = f.table();
    GridPoint p = f.domain().first_point();
    std::size_t idx = 0;
    do {
        for (int i = 0; i < p.arity(); ++i) {
            if (i) out << ' ';
            out << p[i];
        }
        out << " | " << fmt(tab[idx++]) << '\n';
    } while (f.domain().advance(p));
}

} // namespace

void write_table(std::ostream& out, const GroupOracle& f) {
    require(f.codomain().factors() == 1, Errc::invalid_argument,
            "table: only cyclic group codomains are writable");
    write_table_impl(out, f, f.codomain().descriptor(),
                     [&](GroupElem e) { return f.codomain().residue(e, 0); });
}

void write_table(std::ostream& out, const FieldOracle& f) {
    write_table_impl(out, f, f.codomain().descriptor(), [](Fp v) { return v; });
}

void save_table(const std::string& path, const LoadedOracle& f) {
    std::ofstream out(path);
    require(static_cast<bool>(out), Errc::io_error, "table: cannot write '" + path + "'");
    std::visit([&](const auto& o) { write_table(out, o.dense() ? o : o.densified()); }, f);
}

} // namespace gridtest
