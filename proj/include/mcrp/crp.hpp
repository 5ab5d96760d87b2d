#ifndef MCRP_CRP_HPP
#define MCRP_CRP_HPP

#include "mcrp/core.hpp"
#include "mcrp/distribution.hpp"
#include "mcrp/factorization.hpp"
#include "mcrp/random.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace mcrp {

/// State of the multiset Chinese restaurant process after `step` letters.
struct CrpState {
    Profile profile;
    std::size_t step = 0;
    CycleDecomposition decomposition;
    /// k_1, ..., k_step: new singleton cycles opened at each step.
    std::vector<std::uint64_t> step_counts;

    explicit CrpState(Profile p) : profile(std::move(p)) {}

    bool finished() const { return step >= profile.length(); }
    Permutation permutation() const { return compose(decomposition); }
    std::size_t cycle_count() const { return decomposition.size(); }
};

/// `copies` copies of the new letter go immediately left of element `slot`.
/// Slots number the elements of the decomposition cycle by cycle, left to right.
struct Insertion {
    std::uint64_t slot = 0;
    std::uint64_t copies = 0;

    friend bool operator==(const Insertion&, const Insertion&) = default;
};

/// Law of X_t, the number of new cycles at step t.
StepLaw step_distribution(std::size_t t, const Profile& profile, const Theta& theta);

/// Exact sampler for X_t: integer masses with a cumulative table, drawn by a
/// uniform big integer below the mass total.
class StepSampler {
public:
    StepSampler(std::size_t t, const Profile& profile, const Theta& theta);

    std::uint64_t draw(RandomSource& rng) const;
    const BigInt& total() const { return cumulative_.back(); }

private:
    std::vector<BigInt> cumulative_;
};

/// Uniform composition of `copies` into `slots` nonnegative parts via stars and
/// bars, returned as the nonzero parts in increasing slot order.
std::vector<Insertion> uniform_composition(RandomSource& rng, std::uint64_t copies, std::uint64_t slots);

/// Places letter `letter`: the given insertions, then `new_cycles` singleton cycles at the end.
CycleDecomposition extend(const CycleDecomposition& d, Letter letter, std::uint64_t new_cycles,
                          std::span<const Insertion> insertions);

/// Advances the process by one letter. Throws std::out_of_range when the profile is exhausted.
CrpState sample_step(CrpState state, const Theta& theta, RandomSource& rng);

/// Runs every step of the process.
CrpState sample_permutation(const Profile& profile, const Theta& theta, RandomSource& rng);

/// Repeated sampling of one (profile, theta) with the step tables built once.
class CrpSampler {
public:
    CrpSampler(Profile profile, Theta theta);

    CrpState step(CrpState state, RandomSource& rng) const;
    CrpState sample(RandomSource& rng) const;

    const Profile& profile() const { return profile_; }
    const Theta& theta() const { return theta_; }

private:
    Profile profile_;
    Theta theta_;
    std::vector<StepSampler> steps_;
};

/// Removes letters greater than s and drops emptied cycles.
CycleDecomposition project(const CycleDecomposition& d, Letter s);
CycleDecomposition project(const CrpState& state, std::size_t s);

/// theta^{number of cycles}.
BigRational weight(const CycleDecomposition& d, const Theta& theta);
BigRational weight(const Permutation& p, const Theta& theta);

/// Samples only the cycle count K_t = X_1 + ... + X_t.
///
/// X_t at theta = 1 is the number of failures before the first success when
/// drawing without replacement from n_t failures and N_{t-1} successes, which
/// is simulated directly. Other theta values reweight that proposal by
/// theta^k through exact Bernoulli rejection. Cost per step does not depend
/// on the size of the binomial coefficients involved.
class CycleCountSampler {
public:
    CycleCountSampler(Profile profile, Theta theta);

    std::uint64_t draw_step(std::size_t t, RandomSource& rng) const;
    std::uint64_t sample(RandomSource& rng) const;

    const Profile& profile() const { return profile_; }

private:
    std::uint64_t draw_uniform_step(std::size_t t, RandomSource& rng) const;
    bool accept(std::uint64_t n, std::uint64_t k, RandomSource& rng) const;

    Profile profile_;
    Theta theta_;
    std::optional<std::pair<std::uint64_t, std::uint64_t>> small_theta_;
};

}  // namespace mcrp

#endif  // MCRP_CRP_HPP
