#include "mcrp/distribution.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mcrp {

namespace {

void check_step(std::size_t t, const Profile& profile)
{
    if (t < 1 || t > profile.length()) {
        throw std::out_of_range("step " + std::to_string(t) + " outside 1.." + std::to_string(profile.length()));
    }
}

std::int64_t as_signed(std::uint64_t v) { return static_cast<std::int64_t>(v); }

BigInt pow_int(const BigInt& base, std::uint64_t exponent)
{
    BigInt out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
    return out;
}

}  // namespace

BigInt insertion_count(std::size_t t, const Profile& profile, std::uint64_t k)
{
    check_step(t, profile);
    const auto n = profile.count(t);
    if (k > n) {
        return 0;
    }
    const auto m = n - k;
    return binomial(as_signed(profile.prefix(t - 1)) - 1 + as_signed(m), as_signed(m));
}

std::vector<BigInt> step_weights(std::size_t t, const Profile& profile, const Theta& theta)
{
    check_step(t, profile);
    const auto n = profile.count(t);
    std::vector<BigInt> out(n + 1);
    BigInt p_pow = 1;
    for (std::uint64_t k = 0; k <= n; ++k) {
        out[k] = insertion_count(t, profile, k) * p_pow * pow_int(theta.den(), n - k);
        p_pow *= theta.num();
    }
    return out;
}

BigRational step_normalizer(std::size_t t, const Profile& profile, const Theta& theta)
{
    auto weights = step_weights(t, profile, theta);
    BigInt total = 0;
    for (const auto& w : weights) {
        total += w;
    }
    BigRational out(total, pow_int(theta.den(), profile.count(t)));
    out.canonicalize();
    return out;
}

BigRational normalizer(const Profile& profile, const Theta& theta)
{
    BigRational out = 1;
    for (std::size_t t = 1; t <= profile.length(); ++t) {
        out *= step_normalizer(t, profile, theta);
    }
    return out;
}

StepLaw step_law(std::size_t t, const Profile& profile, const Theta& theta)
{
    auto weights = step_weights(t, profile, theta);
    BigInt total = 0;
    for (const auto& w : weights) {
        total += w;
    }
    StepLaw law;
    law.probabilities.reserve(weights.size());
    for (const auto& w : weights) {
        BigRational p(w, total);
        p.canonicalize();
        law.probabilities.push_back(std::move(p));
    }
    return law;
}

Moments StepLaw::moments() const { return pmf_moments(probabilities, 0); }

BigRational uniform_step_pmf(std::size_t t, const Profile& profile, std::uint64_t k)
{
    check_step(t, profile);
    const auto n = profile.count(t);
    const auto total = profile.prefix(t);
    if (profile.prefix(t - 1) == 0) {
        return k == n ? 1 : 0;
    }
    if (k > n) {
        return 0;
    }
    BigRational out(binomial(as_signed(n), as_signed(k)), binomial(as_signed(total), as_signed(k)));
    out *= BigRational(BigInt(static_cast<unsigned long>(total - n)), BigInt(static_cast<unsigned long>(total - k)));
    out.canonicalize();
    return out;
}

namespace {

void check_nhg(const NhgParams& p)
{
    if (p.successes > p.total || p.rank < 1 || p.rank > p.successes + 1) {
        throw std::invalid_argument("negative hypergeometric parameters need 0 <= M <= N and 1 <= r <= M + 1");
    }
}

BigRational q(std::uint64_t v) { return BigRational(BigInt(static_cast<unsigned long>(v))); }

}  // namespace

BigRational neg_hypergeom_pmf(const NhgParams& params, std::int64_t kappa)
{
    check_nhg(params);
    const auto N = as_signed(params.total);
    const auto M = as_signed(params.successes);
    const auto r = as_signed(params.rank);
    if (r == M + 1) {
        // The r-th success never arrives among the N balls.
        return kappa == N + 1 ? 1 : 0;
    }
    if (kappa < r || kappa > N - M + r) {
        return 0;
    }
    BigRational out(binomial(M, r - 1) * binomial(N - M, kappa - r), binomial(N, kappa - 1));
    out *= BigRational(M - r + 1, N - kappa + 1);
    out.canonicalize();
    return out;
}

Moments neg_hypergeom_moments(const NhgParams& params)
{
    check_nhg(params);
    const BigRational N = q(params.total);
    const BigRational M = q(params.successes);
    const BigRational r = q(params.rank);
    Moments m;
    m.mean = r * (N + 1) / (M + 1);
    m.variance = r * (N - M) * (N + 1) * (M + 1 - r) / ((M + 1) * (M + 1) * (M + 2));
    m.third_central = m.variance * (2 * N - M + 1) * (M + 1 - 2 * r) / ((M + 1) * (M + 3));
    return m;
}

Moments x_moments(std::size_t t, const Profile& profile)
{
    check_step(t, profile);
    const BigRational n = q(profile.count(t));
    const BigRational total = q(profile.prefix(t));
    const BigRational before = q(profile.prefix(t - 1));
    Moments m;
    m.mean = n / (before + 1);
    m.variance = n * (total + 1) * before / ((before + 1) * (before + 1) * (before + 2));
    m.third_central = m.variance * (n + total + 1) * (before - 1) / ((before + 1) * (before + 3));
    return m;
}

Moments k_moments(const Profile& profile)
{
    Moments out{0, 0, 0};
    for (std::size_t t = 1; t <= profile.length(); ++t) {
        auto m = x_moments(t, profile);
        out.mean += m.mean;
        out.variance += m.variance;
        out.third_central += m.third_central;
    }
    return out;
}

Moments k_moments(const Profile& profile, const Theta& theta)
{
    Moments out{0, 0, 0};
    for (std::size_t t = 1; t <= profile.length(); ++t) {
        auto m = step_law(t, profile, theta).moments();
        out.mean += m.mean;
        out.variance += m.variance;
        out.third_central += m.third_central;
    }
    return out;
}

Moments pmf_moments(std::span<const BigRational> probabilities, std::int64_t offset)
{
    Moments m{0, 0, 0};
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
        m.mean += probabilities[i] * BigRational(offset + static_cast<std::int64_t>(i));
    }
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
        BigRational d = BigRational(offset + static_cast<std::int64_t>(i)) - m.mean;
        BigRational d2 = d * d;
        m.variance += probabilities[i] * d2;
        m.third_central += probabilities[i] * d2 * d;
    }
    return m;
}

BigRational CyclePmf::probability(std::int64_t k) const
{
    if (k < support_min || k > support_max()) {
        return 0;
    }
    return probabilities[static_cast<std::size_t>(k - support_min)];
}

namespace {

using Poly = std::vector<BigInt>;

BigInt coefficient_sum(const Poly& p)
{
    BigInt total = 0;
    for (const auto& c : p) {
        total += c;
    }
    return total;
}

BigInt pack(const Poly& p, std::size_t begin, std::size_t end, mp_bitcnt_t width)
{
    if (end - begin == 1) {
        return p[begin];
    }
    const std::size_t mid = begin + (end - begin) / 2;
    BigInt high = pack(p, mid, end, width);
    mpz_mul_2exp(high.get_mpz_t(), high.get_mpz_t(), width * (mid - begin));
    return high + pack(p, begin, mid, width);
}

void unpack(const BigInt& packed, Poly& out, std::size_t begin, std::size_t end, mp_bitcnt_t width)
{
    if (end - begin == 1) {
        out[begin] = packed;
        return;
    }
    const std::size_t mid = begin + (end - begin) / 2;
    BigInt low;
    BigInt high;
    mpz_fdiv_r_2exp(low.get_mpz_t(), packed.get_mpz_t(), width * (mid - begin));
    mpz_fdiv_q_2exp(high.get_mpz_t(), packed.get_mpz_t(), width * (mid - begin));
    unpack(low, out, begin, mid, width);
    unpack(high, out, mid, end, width);
}

/// Product of polynomials with nonnegative coefficients by Kronecker substitution.
Poly multiply(const Poly& a, const Poly& b)
{
    const BigInt bound = coefficient_sum(a) * coefficient_sum(b);
    const mp_bitcnt_t width = mpz_sizeinbase(bound.get_mpz_t(), 2) + 1;
    BigInt packed = pack(a, 0, a.size(), width) * pack(b, 0, b.size(), width);
    Poly out(a.size() + b.size() - 1);
    unpack(packed, out, 0, out.size(), width);
    return out;
}

Poly product(std::vector<Poly>& factors, std::size_t begin, std::size_t end)
{
    if (end - begin == 1) {
        return std::move(factors[begin]);
    }
    const std::size_t mid = begin + (end - begin) / 2;
    return multiply(product(factors, begin, mid), product(factors, mid, end));
}

}  // namespace

CyclePmf k_pmf(const Profile& profile, const Theta& theta)
{
    std::vector<Poly> factors;
    factors.reserve(profile.length());
    for (std::size_t t = 1; t <= profile.length(); ++t) {
        factors.push_back(step_weights(t, profile, theta));
    }
    Poly poly = factors.empty() ? Poly{1} : product(factors, 0, factors.size());
    std::size_t lo = 0;
    while (lo + 1 < poly.size() && poly[lo] == 0) {
        ++lo;
    }
    std::size_t hi = poly.size();
    while (hi > lo + 1 && poly[hi - 1] == 0) {
        --hi;
    }
    BigInt total = 0;
    for (std::size_t i = lo; i < hi; ++i) {
        total += poly[i];
    }
    CyclePmf out;
    out.support_min = static_cast<std::int64_t>(lo);
    out.probabilities.reserve(hi - lo);
    for (std::size_t i = lo; i < hi; ++i) {
        BigRational p(poly[i], total);
        p.canonicalize();
        out.probabilities.push_back(std::move(p));
    }
    return out;
}

double lyapunov_ratio(const Profile& profile, std::size_t up_to)
{
    if (up_to > profile.length()) {
        throw std::out_of_range("lyapunov_ratio: t exceeds profile length");
    }
    long double variance = 0;
    long double third = 0;
    for (std::size_t s = 1; s <= up_to; ++s) {
        auto m = x_moments(s, profile);
        variance += to_double(m.variance);
        third += to_double(m.third_central);
    }
    if (variance <= 0) {
        return 0.0;
    }
    return static_cast<double>(third / std::pow(variance, 1.5L));
}

double tv_poisson(const CyclePmf& pmf)
{
    long double mean = 0;
    for (std::size_t i = 0; i < pmf.probabilities.size(); ++i) {
        mean += static_cast<long double>(pmf.support_min + static_cast<std::int64_t>(i)) * to_double(pmf.probabilities[i]);
    }
    const double lambda = static_cast<double>(mean);
    auto poisson = [lambda](std::int64_t k) {
        if (lambda == 0.0) {
            return k == 0 ? 1.0 : 0.0;
        }
        return std::exp(-lambda + static_cast<double>(k) * std::log(lambda) - std::lgamma(static_cast<double>(k) + 1.0));
    };
    double distance = 0.0;
    double poisson_mass = 0.0;
    for (std::int64_t k = 0;; ++k) {
        const double po = poisson(k);
        const double p = to_double(pmf.probability(k));
        distance += std::abs(p - po);
        poisson_mass += po;
        const bool past_support = k >= pmf.support_max();
        const bool past_mode = static_cast<double>(k) > lambda;
        if (past_support && past_mode && (1.0 - poisson_mass < 1e-12 || po < 1e-18)) {
            break;
        }
        if (past_support && lambda == 0.0) {
            break;
        }
    }
    distance += std::max(0.0, 1.0 - poisson_mass);
    return 0.5 * distance;
}

double tv_poisson(const Profile& profile, const Theta& theta) { return tv_poisson(k_pmf(profile, theta)); }

}  // namespace mcrp
