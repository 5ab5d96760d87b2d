#ifndef MCRP_STATS_HPP
#define MCRP_STATS_HPP

#include <cstdint>
#include <span>

namespace mcrp::stats {

/// Standard normal CDF.
double normal_cdf(double x);

/// Upper tail P(X >= statistic) of a chi-square law with `dof` degrees of freedom.
double chi_square_sf(double statistic, double dof);

/// Asymptotic Kolmogorov tail P(sqrt(n) D_n > x), with Stephens' small-sample adjustment when n > 0.
double kolmogorov_sf(double statistic, std::size_t n = 0);

struct ChiSquareResult {
    double statistic = 0.0;
    std::size_t dof = 0;
    double p_value = 1.0;
};

/// Pearson goodness of fit of `observed` counts against category probabilities.
/// Categories with zero expected mass must have zero observations.
ChiSquareResult chi_square_test(std::span<const std::uint64_t> observed, std::span<const double> probabilities);

struct KsResult {
    double statistic = 0.0;
    double p_value = 1.0;
};

/// One-sample KS distance of the sample against N(0, 1).
KsResult ks_normal(std::span<const double> sample);

/// KS distance between the empirical CDF of integer data and the
/// continuity-corrected normal approximation Phi((k + 1/2 - mean) / sd),
/// compared at every lattice point.
KsResult ks_normal_lattice(std::span<const std::int64_t> sample, double mean, double sd);

struct SampleMoments {
    double mean = 0.0;
    /// Unbiased (n - 1) variance.
    double variance = 0.0;
    double skewness = 0.0;
};

SampleMoments sample_moments(std::span<const double> sample);

}  // namespace mcrp::stats

#endif  // MCRP_STATS_HPP
