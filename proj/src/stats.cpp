#include "mcrp/stats.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

namespace mcrp::stats {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double chi_square_sf(double statistic, double dof)
{
    if (dof <= 0) {
        return 1.0;
    }
    if (statistic <= 0) {
        return 1.0;
    }
    return boost::math::gamma_q(dof / 2.0, statistic / 2.0);
}

double kolmogorov_sf(double statistic, std::size_t n)
{
    double x = statistic;
    if (n > 0) {
        const double root = std::sqrt(static_cast<double>(n));
        x = (root + 0.12 + 0.11 / root) * statistic;
    }
    if (x < 1e-3) {
        return 1.0;
    }
    // Q(x) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 x^2); for small x use the theta-function dual.
    if (x < 1.18) {
        const double y = std::exp(-M_PI * M_PI / (8.0 * x * x));
        double cdf = 0.0;
        for (int k = 1; k < 50; k += 2) {
            cdf += std::pow(y, k * k);
        }
        cdf *= std::sqrt(2.0 * M_PI) / x;
        return std::clamp(1.0 - cdf, 0.0, 1.0);
    }
    double sum = 0.0;
    for (int k = 1; k < 100; ++k) {
        const double term = std::exp(-2.0 * k * k * x * x);
        sum += (k % 2 ? 1.0 : -1.0) * term;
        if (term < 1e-18) {
            break;
        }
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

ChiSquareResult chi_square_test(std::span<const std::uint64_t> observed, std::span<const double> probabilities)
{
    if (observed.size() != probabilities.size()) {
        throw std::invalid_argument("chi_square_test: size mismatch");
    }
    std::uint64_t n = 0;
    for (auto o : observed) {
        n += o;
    }
    ChiSquareResult result;
    std::size_t categories = 0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        const double expected = probabilities[i] * static_cast<double>(n);
        if (expected <= 0.0) {
            if (observed[i] > 0) {
                result.statistic = INFINITY;
                result.p_value = 0.0;
                return result;
            }
            continue;
        }
        ++categories;
        const double d = static_cast<double>(observed[i]) - expected;
        result.statistic += d * d / expected;
    }
    result.dof = categories > 0 ? categories - 1 : 0;
    result.p_value = chi_square_sf(result.statistic, static_cast<double>(result.dof));
    return result;
}

KsResult ks_normal(std::span<const double> sample)
{
    KsResult result;
    if (sample.empty()) {
        return result;
    }
    std::vector<double> sorted(sample.begin(), sample.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double cdf = normal_cdf(sorted[i]);
        result.statistic = std::max({result.statistic, static_cast<double>(i + 1) / n - cdf, cdf - static_cast<double>(i) / n});
    }
    result.p_value = kolmogorov_sf(result.statistic, sorted.size());
    return result;
}

KsResult ks_normal_lattice(std::span<const std::int64_t> sample, double mean, double sd)
{
    KsResult result;
    if (sample.empty() || !(sd > 0.0)) {
        return result;
    }
    std::map<std::int64_t, std::uint64_t> counts;
    for (auto k : sample) {
        ++counts[k];
    }
    const double n = static_cast<double>(sample.size());
    const auto lo = counts.begin()->first;
    const auto hi = counts.rbegin()->first;
    std::uint64_t below = 0;
    for (std::int64_t k = lo - 1; k <= hi; ++k) {
        if (auto it = counts.find(k); it != counts.end()) {
            below += it->second;
        }
        const double model = normal_cdf((static_cast<double>(k) + 0.5 - mean) / sd);
        result.statistic = std::max(result.statistic, std::abs(static_cast<double>(below) / n - model));
    }
    result.p_value = kolmogorov_sf(result.statistic, sample.size());
    return result;
}

SampleMoments sample_moments(std::span<const double> sample)
{
    SampleMoments m;
    if (sample.empty()) {
        return m;
    }
    const double n = static_cast<double>(sample.size());
    long double sum = 0;
    for (double x : sample) {
        sum += x;
    }
    m.mean = static_cast<double>(sum / n);
    long double m2 = 0;
    long double m3 = 0;
    for (double x : sample) {
        const long double d = x - m.mean;
        m2 += d * d;
        m3 += d * d * d;
    }
    if (sample.size() > 1) {
        m.variance = static_cast<double>(m2 / (n - 1));
    }
    const long double pop_var = m2 / n;
    if (pop_var > 0) {
        m.skewness = static_cast<double>((m3 / n) / std::pow(pop_var, 1.5L));
    }
    return m;
}

}  // namespace mcrp::stats
