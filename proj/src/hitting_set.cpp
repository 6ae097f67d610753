#include "gridtest/hitting_set.hpp"

#include <bit>
#include <sstream>

#include "gridtest/bigint.hpp"
#include "gridtest/junta_poly.hpp"

namespace gridtest {

namespace {

int popcount64(std::uint64_t x) { return std::popcount(x); }

// y = Mz over F_2: bit i of y is <row_i, z>
std::uint64_t encode(const std::vector<std::uint32_t>& rows, std::uint32_t z) {
    std::uint64_t y = 0;
    for (std::size_t i = 0; i < rows.size(); ++i)
        y |= (std::uint64_t)(popcount64(rows[i] & z) & 1) << i;
    return y;
}

// marks every vector expressible as a combination of at most d rows
void mark_row_spans(const std::vector<std::uint32_t>& rows, int d, int w,
                    std::vector<char>& marked, std::uint32_t acc, std::size_t from, int left) {
    marked[acc] = 1;
    if (left == 0) return;
    for (std::size_t i = from; i < rows.size(); ++i)
        mark_row_spans(rows, d, w, marked, acc ^ rows[i], i + 1, left - 1);
}

} // namespace

int hitting_set_width(int k, int d) {
    BigUint bound = BigUint::binomial((std::uint32_t)k, (std::uint32_t)d);
    bound *= BigUint::pow(2, (std::uint64_t)d);
    int w = 1;
    while (!(bound < BigUint::pow(2, (std::uint64_t)w))) ++w;
    return w;
}

HittingSet build_hitting_set(int k, int d, int s, Rng& rng, int max_retries) {
    require(k >= 8 && d >= 0 && s >= 2, Errc::invalid_argument, "hitting set: need k >= 8, d >= 0, s >= 2");
    require(k <= 62, Errc::invalid_argument, "hitting set: k too large");
    int w = hitting_set_width(k, d);
    require(w <= k, Errc::invalid_argument,
            "hitting set: no admissible width (2^w <= 2^k fails for k=" + std::to_string(k) +
                ", d=" + std::to_string(d) + ")");

    std::uint64_t count = std::uint64_t(1) << w;
    auto weight_ok = [&](std::uint64_t y) {
        int wt = popcount64(y);
        return wt > 0 && 4 * wt >= k && 4 * wt <= 3 * k;
    };

    for (int attempt = 0; attempt < max_retries; ++attempt) {
        HittingSet h;
        h.k = k;
        h.d = d;
        h.w = w;
        h.rows.resize(k);
        for (auto& r : h.rows) r = static_cast<std::uint32_t>(rng.below(std::uint64_t(1) << w));

        // codewords, indexed by z; U is linear, so the pairwise distance
        // window holds iff every nonzero codeword has weight in [k/4, 3k/4]
        h.points.resize(count);
        for (std::uint64_t z = 0; z < count; ++z) h.points[z] = encode(h.rows, (std::uint32_t)z);

        auto violations = [&]() {
            int v = 0;
            for (std::uint64_t z = 1; z < count; ++z) v += !weight_ok(h.points[z]);
            return v;
        };

        // stochastic repair: redraw one column hitting a violating codeword,
        // keep moves that do not increase the violation count; correctness
        // rests on the exhaustive verification below, not on this walk
        int bad = violations();
        for (int step = 0; step < 60 * k && bad > 0; ++step) {
            std::uint64_t zstar = 0;
            std::uint64_t seen = 0;
            for (std::uint64_t z = 1; z < count; ++z)
                if (!weight_ok(h.points[z]) && rng.below(++seen) == 0) zstar = z;
            int nbits = popcount64(zstar);
            int pick = (int)rng.below((std::uint64_t)nbits);
            int j = 0;
            for (std::uint64_t rest = zstar;; rest &= rest - 1, --pick) {
                j = __builtin_ctzll(rest);
                if (pick == 0) break;
            }
            // column j of M = bit j of every row; redraw it
            std::uint64_t delta = 0;
            for (int i = 0; i < k; ++i) delta |= (rng.next_u64() & 1) << i;
            std::uint64_t flip = 0;
            for (int i = 0; i < k; ++i)
                if ((delta >> i) ^ ((h.rows[i] >> j) & 1)) flip |= std::uint64_t(1) << i;
            if (flip == 0) continue;
            for (std::uint64_t z = 0; z < count; ++z)
                if ((z >> j) & 1) h.points[z] ^= flip;
            int nbad = violations();
            if (nbad > bad) {
                for (std::uint64_t z = 0; z < count; ++z)
                    if ((z >> j) & 1) h.points[z] ^= flip;
                continue;
            }
            for (int i = 0; i < k; ++i)
                if ((flip >> i) & 1) h.rows[i] ^= std::uint32_t(1) << j;
            bad = nbad;
        }
        if (bad > 0) continue;
        bool ok = true;
        for (std::uint64_t z = 1; z < count && ok; ++z) ok = h.points[z] != 0;
        if (!ok) continue;

        std::vector<char> marked(count, 0);
        mark_row_spans(h.rows, d, w, marked, 0, 0, d);
        std::uint32_t eta = 0;
        bool found = false;
        for (std::uint64_t v = 1; v < count; ++v)
            if (!marked[v]) {
                eta = (std::uint32_t)v;
                found = true;
                break;
            }
        if (!found) continue;
        h.eta = eta;

        h.chi.resize(count);
        for (std::uint64_t z = 0; z < count; ++z)
            h.chi[z] = (popcount64((std::uint32_t)z & eta) & 1) ? -1 : 1;

        if (verify_hitting_set(h, s)) return h;
    }
    fail(Errc::construction_failed,
         "hitting set: no valid (M, eta) within " + std::to_string(max_retries) +
             " retries (k=" + std::to_string(k) + " too small for d=" + std::to_string(d) + "?)");
}

bool verify_hitting_set(const HittingSet& h, int s) {
    std::uint64_t count = h.points.size();
    if (count != (std::uint64_t(1) << h.w) || h.chi.size() != count) return false;

    // distinctness and pairwise distances
    for (std::uint64_t i = 0; i < count; ++i)
        for (std::uint64_t j = i + 1; j < count; ++j) {
            int dist = popcount64(h.points[i] ^ h.points[j]);
            if (dist == 0 || 4 * dist < h.k || 4 * dist > 3 * h.k) return false;
        }

    // sign sums over every subset I of [k] with |I| <= d
    std::vector<int> subset;
    struct Rec {
        const HittingSet& h;
        bool ok = true;
        void run(std::vector<int>& subset, int from) {
            if (!ok) return;
            long long sum = 0;
            std::uint64_t mask = 0;
            for (int i : subset) mask |= std::uint64_t(1) << i;
            for (std::uint64_t z = 0; z < h.points.size(); ++z)
                if ((h.points[z] & mask) == mask) sum += h.chi[z];
            if (sum != 0) {
                ok = false;
                return;
            }
            if ((int)subset.size() == h.d) return;
            for (int i = from; i < h.k; ++i) {
                subset.push_back(i);
                run(subset, i + 1);
                subset.pop_back();
            }
        }
    } rec{h};
    rec.run(subset, 0);
    if (!rec.ok) return false;

    // eta nonzero and outside the span of every <= d rows
    std::vector<char> marked(count, 0);
    mark_row_spans(h.rows, h.d, h.w, marked, 0, 0, h.d);
    if (h.eta == 0 || marked[h.eta]) return false;

    // chi consistency with eta
    for (std::uint64_t z = 0; z < count; ++z) {
        int sign = (popcount64((std::uint32_t)z & h.eta) & 1) ? -1 : 1;
        if (h.chi[z] != sign) return false;
    }
    (void)s;
    return true;
}

bool verify_one_point_separation(const std::vector<std::uint64_t>& points,
                                 const std::vector<std::int8_t>& chi, int k, int d, int s,
                                 const AbelianGroup& group, Rng& rng, int samples,
                                 std::uint64_t budget) {
    require(points.size() == chi.size() && !points.empty(), Errc::invalid_argument,
            "one-point separation: size mismatch");
    for (auto c : chi)
        require(c == 1 || c == -1, Errc::invalid_argument, "one-point separation: chi must be +-1");

    // enumeration budget: C(k,d) * (s-1)^d patterns
    BigUint cnt = BigUint::binomial((std::uint32_t)k, (std::uint32_t)std::min(k, d));
    cnt *= BigUint::pow((std::uint64_t)(s - 1), (std::uint64_t)d);
    require(cnt.fits_u64() && cnt.to_u64() <= budget, Errc::budget_exceeded,
            "one-point separation: pattern space too large");

    // For each pattern a of weight <= d, the signed count of points of U
    // consistent with a must vanish; symbols outside {0,1} give empty sums.
    for (const auto& a : patterns_up_to(s, k, std::min(d, k))) {
        long long sum = 0;
        for (std::size_t u = 0; u < points.size(); ++u) {
            bool match = true;
            for (auto [i, sym] : a) {
                int bit = (points[u] >> i) & 1;
                if (bit != (int)sym) {
                    match = false;
                    break;
                }
            }
            if (match) sum += chi[u];
        }
        if (sum != 0) return false;
    }

    // secondary randomized check: the full sign-sum identity on sampled
    // junta-polynomials, in group arithmetic
    for (int trial = 0; trial < samples; ++trial) {
        JuntaPolynomial p = JuntaPolynomial::random(group, s, k, d, rng);
        GroupElem acc = group.zero();
        for (std::size_t u = 0; u < points.size(); ++u) {
            GridPoint x;
            x.x.resize(k);
            for (int i = 0; i < k; ++i) x.x[i] = (points[u] >> i) & 1;
            acc = group.add(acc, group.int_mul(p.evaluate(x), chi[u]));
        }
        if (acc != group.zero()) return false;
    }
    return true;
}

std::string HittingSet::serialize() const {
    std::ostringstream out;
    out << "k " << k << " d " << d << " w " << w << "\n";
    out << "M";
    for (auto r : rows) {
        out << ' ';
        for (int b = 0; b < w; ++b) out << ((r >> b) & 1);
    }
    out << "\neta ";
    for (int b = 0; b < w; ++b) out << ((eta >> b) & 1);
    out << "\nU\n";
    for (std::size_t z = 0; z < points.size(); ++z) {
        for (int b = 0; b < k; ++b) out << ((points[z] >> b) & 1);
        out << ' ' << (chi[z] > 0 ? "+1" : "-1") << '\n';
    }
    return out.str();
}

} // namespace gridtest
