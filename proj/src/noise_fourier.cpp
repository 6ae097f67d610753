#include "gridtest/noise_fourier.hpp"

#include <cmath>
#include <numbers>

namespace gridtest {

namespace {

// one-dimensional transform applied along every axis; dir=+1 analysis
// (with conjugated characters and 1/s averaging), dir=-1 synthesis
std::vector<Cplx> axis_transform(int s, int n, std::vector<Cplx> work, int dir,
                                 std::uint64_t budget) {
    GridDomain dom = GridDomain::symmetric(s, n);
    std::uint64_t total = dom.cardinality_checked(budget);
    require(work.size() == total, Errc::invalid_argument, "fourier: table size mismatch");

    std::vector<std::vector<Cplx>> mat(s, std::vector<Cplx>(s));
    for (int a = 0; a < s; ++a)
        for (int b = 0; b < s; ++b) {
            double angle = 2.0 * std::numbers::pi * ((double)a * b / s);
            Cplx w = std::polar(1.0, dir > 0 ? -angle : angle);
            mat[a][b] = dir > 0 ? w / (double)s : w;
        }

    std::uint64_t stride = total / s;
    std::vector<Cplx> line(s);
    for (int axis = 0; axis < n; ++axis) {
        for (std::uint64_t base = 0; base < total; ++base) {
            if ((base / stride) % s != 0) continue;
            for (int j = 0; j < s; ++j) line[j] = work[base + j * stride];
            for (int j = 0; j < s; ++j) {
                Cplx acc = 0;
                for (int k = 0; k < s; ++k) acc += mat[j][k] * line[k];
                work[base + j * stride] = acc;
            }
        }
        stride /= s;
    }
    return work;
}

} // namespace

FourierTable fourier_transform(int s, int n, const std::vector<Cplx>& values, std::uint64_t budget) {
    return FourierTable(s, n, axis_transform(s, n, values, +1, budget));
}

std::vector<Cplx> inverse_transform(const FourierTable& t, std::uint64_t budget) {
    return axis_transform(t.alphabet(), t.arity(), t.coeffs(), -1, budget);
}

std::vector<double> FourierTable::weight_spectrum() const {
    GridDomain dom = GridDomain::symmetric(s_, n_);
    std::vector<double> w(n_ + 1, 0.0);
    std::uint64_t idx = 0;
    GridPoint alpha = dom.first_point();
    do {
        w[hamming_weight(alpha)] += std::norm(coeffs_[idx++]);
    } while (dom.advance(alpha));
    return w;
}

NoiseSpec NoiseSpec::spherical_snapped(int n, double nu, bool* snapped) {
    require(nu >= 0.0 && nu <= 1.0, Errc::invalid_argument, "noise: rate must be in [0,1]");
    int m = (int)std::llround(nu * n);
    if (m < 0) m = 0;
    if (m > n) m = n;
    if (snapped) *snapped = std::abs(nu * n - m) > 1e-9;
    return spherical(n, m);
}

double noise_rho(double nu, int s) { return 1.0 - nu * s / (s - 1.0); }

BigRat spherical_char_expectation_exact(int h, int m, int n, int s) {
    require(h >= 0 && h <= n && m >= 0 && m <= n && s >= 2, Errc::invalid_argument,
            "char expectation: bad parameters");
    // E over a uniform m-subset I of [n] of (-1/(s-1))^{|J cap I|}, |J| = h:
    // hypergeometric overlap counts C(h,j) C(n-h, m-j) / C(n,m)
    BigRat acc(0);
    BigRat base = BigRat(BigUint(1), BigUint((std::uint64_t)(s - 1)), true);
    BigUint denom = BigUint::binomial((std::uint32_t)n, (std::uint32_t)m);
    for (int j = std::max(0, m - (n - h)); j <= std::min(h, m); ++j) {
        BigUint ways = BigUint::binomial((std::uint32_t)h, (std::uint32_t)j) *
                       BigUint::binomial((std::uint32_t)(n - h), (std::uint32_t)(m - j));
        acc = acc + BigRat(ways, denom) * BigRat::pow(base, (std::uint32_t)j);
    }
    return acc;
}

double char_expectation(int h, const NoiseSpec& noise, int n, int s) {
    require(h >= 0 && h <= n, Errc::invalid_argument, "char expectation: bad weight");
    if (noise.kind == NoiseKind::bernoulli) {
        double rho = noise_rho(noise.rate.to_double(), s);
        return std::pow(rho, h);
    }
    require(noise.sphere_m >= 0 && noise.sphere_m <= n, Errc::invalid_argument,
            "char expectation: spherical spec needs matching n");
    return spherical_char_expectation_exact(h, noise.sphere_m, n, s).to_double();
}

double collision_probability(int s, int n, const std::vector<char>& indicator, const NoiseSpec& noise,
                             std::uint64_t budget) {
    GridDomain dom = GridDomain::symmetric(s, n);
    std::uint64_t total = dom.cardinality_checked(budget);
    require(indicator.size() == total, Errc::invalid_argument, "collision: indicator size mismatch");

    std::vector<Cplx> vals(total);
    for (std::uint64_t i = 0; i < total; ++i) vals[i] = indicator[i] ? 1.0 : 0.0;
    FourierTable t = fourier_transform(s, n, vals, budget);
    std::vector<double> spectrum = t.weight_spectrum();
    double acc = 0;
    for (int h = 0; h <= n; ++h)
        if (spectrum[h] != 0.0) acc += spectrum[h] * char_expectation(h, noise, n, s);
    return acc;
}

SseResult sse_check(int s, int n, const std::vector<char>& indicator, int sphere_m,
                    std::uint64_t budget) {
    require(s >= 2, Errc::invalid_argument, "sse: need s >= 2");
    NoiseSpec noise = NoiseSpec::spherical(n, sphere_m);
    if (s >= 3)
        require(Frac(1, 32) <= noise.rate, Errc::invalid_argument, "sse: need nu >= 1/32");

    std::uint64_t total = GridDomain::symmetric(s, n).cardinality_checked(budget);
    std::uint64_t cnt = 0;
    for (char c : indicator) cnt += (c != 0);

    SseResult r;
    r.delta = (double)cnt / (double)total;
    r.lhs = collision_probability(s, n, indicator, noise, budget);
    r.lambda = 1.0 / (16384.0 * std::log2((double)s));
    r.bound = 2.0 * std::pow(r.delta, 1.0 + r.lambda);
    r.ok = r.lhs <= r.bound + 1e-12;
    r.asserted = s >= 3;
    return r;
}

GridPoint sample_noise(const GridPoint& x, int s, const NoiseSpec& noise, Rng& rng) {
    int n = x.arity();
    GridPoint y = x;
    auto resample = [&](int i) {
        // uniform over the s-1 values different from x_i
        Coord v = (Coord)rng.below((std::uint64_t)s - 1);
        if (v >= x[i]) ++v;
        y.x[i] = v;
    };
    if (noise.kind == NoiseKind::bernoulli) {
        double nu = noise.rate.to_double();
        for (int i = 0; i < n; ++i)
            if (rng.uniform01() < nu) resample(i);
        return y;
    }
    require(noise.sphere_m >= 0 && noise.sphere_m <= n, Errc::invalid_argument,
            "sample_noise: spherical spec needs matching n");
    // uniform m-subset via partial Fisher-Yates
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    for (int i = 0; i < noise.sphere_m; ++i) {
        std::size_t j = i + (std::size_t)rng.below((std::uint64_t)(n - i));
        std::swap(idx[i], idx[j]);
        resample(idx[i]);
    }
    return y;
}

} // namespace gridtest
