#ifndef MCRP_DISTRIBUTION_HPP
#define MCRP_DISTRIBUTION_HPP

#include "mcrp/core.hpp"
#include "mcrp/rational.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace mcrp {

// Exact law of the cycle count.
//
// At step t the n_t copies of letter t are split into k new singleton cycles
// and n_t - k insertions to the left of the N_{t-1} existing elements. There
// are C(N_{t-1} - 1 + n_t - k, n_t - k) ways to place the insertions, and the
// step is weighted by theta^k. Summing over k gives the step normalizer F_t,
// and the steps are independent, so K_t = X_1 + ... + X_t with
// P(X_t = k) = theta^k C(N_{t-1} - 1 + n_t - k, n_t - k) / F_t(theta).

/// Number of placements of n_t - k insertions: C(N_{t-1} - 1 + n_t - k, n_t - k).
BigInt insertion_count(std::size_t t, const Profile& profile, std::uint64_t k);

/// F_t(theta). Requires 1 <= t <= profile.length().
BigRational step_normalizer(std::size_t t, const Profile& profile, const Theta& theta);

/// Integer masses proportional to the step law: C(...) p^k q^{n_t - k} for theta = p/q.
std::vector<BigInt> step_weights(std::size_t t, const Profile& profile, const Theta& theta);

/// prod_s F_s(theta), the total theta^{cycles} weight of all permutations.
BigRational normalizer(const Profile& profile, const Theta& theta);

struct Moments {
    BigRational mean;
    BigRational variance;
    BigRational third_central;
};

/// Exact pmf of the new-cycle count X_t, indexed by k = 0..n_t.
struct StepLaw {
    std::vector<BigRational> probabilities;

    const BigRational& operator[](std::size_t k) const { return probabilities[k]; }
    std::size_t size() const { return probabilities.size(); }
    Moments moments() const;
};

StepLaw step_law(std::size_t t, const Profile& profile, const Theta& theta);

/// Closed form of P(X_t = k) at theta = 1: C(n_t, k) / C(N_t, k) * (N_t - n_t) / (N_t - k).
/// When N_{t-1} = 0 every copy must start a cycle and the law is a point mass at n_t.
BigRational uniform_step_pmf(std::size_t t, const Profile& profile, std::uint64_t k);

/// Negative hypergeometric law: the draw index of the r-th success when
/// drawing without replacement from `total` balls of which `successes` succeed.
struct NhgParams {
    std::uint64_t total = 0;      // N
    std::uint64_t successes = 0;  // M
    std::uint64_t rank = 1;       // r
};

/// P(Y = kappa). Zero outside r <= kappa <= N - M + r. With M = 0 and r = 1
/// (no success ball) Y is taken to be N + 1 with certainty.
BigRational neg_hypergeom_pmf(const NhgParams& params, std::int64_t kappa);

/// Closed-form mean, variance and third central moment.
Moments neg_hypergeom_moments(const NhgParams& params);

/// Closed-form moments of X_t at theta = 1.
Moments x_moments(std::size_t t, const Profile& profile);

/// Moments of K_t at theta = 1 as sums of the closed-form step moments.
Moments k_moments(const Profile& profile);

/// Moments of K_t for any theta, by summing exact step-law moments.
Moments k_moments(const Profile& profile, const Theta& theta);

/// Mean, variance and third central moment of a pmf supported on offset, offset+1, ...
Moments pmf_moments(std::span<const BigRational> probabilities, std::int64_t offset = 0);

/// Exact law of K_t.
struct CyclePmf {
    std::int64_t support_min = 0;
    std::vector<BigRational> probabilities;

    std::int64_t support_max() const { return support_min + static_cast<std::int64_t>(probabilities.size()) - 1; }
    BigRational probability(std::int64_t k) const;
    Moments moments() const { return pmf_moments(probabilities, support_min); }
};

/// Coefficients of prod_s F_s(theta z) / F_s(theta).
CyclePmf k_pmf(const Profile& profile, const Theta& theta);

/// sum_{s<=t} E[(X_s - E X_s)^3] / Var(K_t)^{3/2} at theta = 1; 0 when Var(K_t) = 0.
double lyapunov_ratio(const Profile& profile, std::size_t up_to);

/// Total variation distance between the law of K and Poisson(E K).
double tv_poisson(const CyclePmf& pmf);
double tv_poisson(const Profile& profile, const Theta& theta);

}  // namespace mcrp

#endif  // MCRP_DISTRIBUTION_HPP
