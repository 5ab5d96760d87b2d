#include "mcrp/crp.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace mcrp {

StepLaw step_distribution(std::size_t t, const Profile& profile, const Theta& theta)
{
    return step_law(t, profile, theta);
}

StepSampler::StepSampler(std::size_t t, const Profile& profile, const Theta& theta)
{
    auto weights = step_weights(t, profile, theta);
    cumulative_.reserve(weights.size());
    BigInt running = 0;
    for (auto& w : weights) {
        running += w;
        cumulative_.push_back(running);
    }
}

std::uint64_t StepSampler::draw(RandomSource& rng) const
{
    const BigInt u = rng.uniform_below(total());
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    return static_cast<std::uint64_t>(it - cumulative_.begin());
}

std::vector<Insertion> uniform_composition(RandomSource& rng, std::uint64_t copies, std::uint64_t slots)
{
    std::vector<Insertion> out;
    if (copies == 0) {
        return out;
    }
    if (slots == 0) {
        throw std::logic_error("cannot insert into an empty permutation");
    }
    // Stars and bars: choose the star positions among copies + slots - 1 cells.
    const auto stars = rng.sorted_subset(copies + slots - 1, copies);
    for (std::uint64_t j = 0; j < stars.size(); ++j) {
        const std::uint64_t slot = stars[j] - j;
        if (!out.empty() && out.back().slot == slot) {
            ++out.back().copies;
        } else {
            out.push_back({slot, 1});
        }
    }
    return out;
}

namespace {

void extend_in_place(CycleDecomposition& d, Letter letter, std::uint64_t new_cycles,
                     std::span<const Insertion> insertions)
{
    if (!insertions.empty()) {
        std::size_t cycle = 0;
        std::uint64_t offset = 0;
        std::size_t next = 0;
        while (next < insertions.size()) {
            if (cycle >= d.cycles.size()) {
                throw std::out_of_range("insertion slot " + std::to_string(insertions[next].slot) + " past the end");
            }
            auto& elements = d.cycles[cycle].elements;
            const std::uint64_t end = offset + elements.size();
            std::size_t last = next;
            while (last < insertions.size() && insertions[last].slot < end) {
                ++last;
            }
            // Right to left.
            for (std::size_t i = last; i-- > next;) {
                auto pos = elements.begin() + static_cast<std::ptrdiff_t>(insertions[i].slot - offset);
                elements.insert(pos, insertions[i].copies, letter);
            }
            next = last;
            offset = end;
            ++cycle;
        }
    }
    for (std::uint64_t i = 0; i < new_cycles; ++i) {
        d.cycles.emplace_back(Word{letter});
    }
}

}  // namespace

CycleDecomposition extend(const CycleDecomposition& d, Letter letter, std::uint64_t new_cycles,
                          std::span<const Insertion> insertions)
{
    CycleDecomposition out = d;
    extend_in_place(out, letter, new_cycles, insertions);
    return out;
}

namespace {

CrpState advance(CrpState state, std::uint64_t new_cycles, RandomSource& rng)
{
    const std::size_t t = state.step + 1;
    const auto n = state.profile.count(t);
    const auto insertions = uniform_composition(rng, n - new_cycles, state.profile.prefix(t - 1));
    extend_in_place(state.decomposition, static_cast<Letter>(t), new_cycles, insertions);
    state.step_counts.push_back(new_cycles);
    state.step = t;
    return state;
}

void check_not_finished(const CrpState& state)
{
    if (state.finished()) {
        throw std::out_of_range("profile exhausted after " + std::to_string(state.step) + " steps");
    }
}

}  // namespace

CrpState sample_step(CrpState state, const Theta& theta, RandomSource& rng)
{
    check_not_finished(state);
    const auto k = StepSampler(state.step + 1, state.profile, theta).draw(rng);
    return advance(std::move(state), k, rng);
}

CrpState sample_permutation(const Profile& profile, const Theta& theta, RandomSource& rng)
{
    CrpState state(profile);
    while (!state.finished()) {
        state = sample_step(std::move(state), theta, rng);
    }
    return state;
}

CrpSampler::CrpSampler(Profile profile, Theta theta) : profile_(std::move(profile)), theta_(std::move(theta))
{
    steps_.reserve(profile_.length());
    for (std::size_t t = 1; t <= profile_.length(); ++t) {
        steps_.emplace_back(t, profile_, theta_);
    }
}

CrpState CrpSampler::step(CrpState state, RandomSource& rng) const
{
    check_not_finished(state);
    if (!(state.profile == profile_) || state.profile.length() != profile_.length()) {
        throw std::invalid_argument("state profile does not match the sampler");
    }
    const auto k = steps_[state.step].draw(rng);
    return advance(std::move(state), k, rng);
}

CrpState CrpSampler::sample(RandomSource& rng) const
{
    CrpState state(profile_);
    while (!state.finished()) {
        state = step(std::move(state), rng);
    }
    return state;
}

CycleDecomposition project(const CycleDecomposition& d, Letter s)
{
    CycleDecomposition out;
    for (const auto& c : d.cycles) {
        Word kept;
        std::copy_if(c.elements.begin(), c.elements.end(), std::back_inserter(kept), [s](Letter x) { return x <= s; });
        if (!kept.empty()) {
            out.cycles.emplace_back(std::move(kept));
        }
    }
    return out;
}

CycleDecomposition project(const CrpState& state, std::size_t s)
{
    if (s > state.step) {
        throw std::out_of_range("cannot project to step " + std::to_string(s) + " from step " +
                                std::to_string(state.step));
    }
    return project(state.decomposition, static_cast<Letter>(s));
}

BigRational weight(const CycleDecomposition& d, const Theta& theta) { return pow(theta.value(), d.size()); }

BigRational weight(const Permutation& p, const Theta& theta) { return pow(theta.value(), cycle_count(p)); }

CycleCountSampler::CycleCountSampler(Profile profile, Theta theta)
    : profile_(std::move(profile)), theta_(std::move(theta))
{
    if (mpz_fits_ulong_p(theta_.num().get_mpz_t()) && mpz_fits_ulong_p(theta_.den().get_mpz_t())) {
        small_theta_.emplace(theta_.num().get_ui(), theta_.den().get_ui());
    }
}

std::uint64_t CycleCountSampler::draw_uniform_step(std::size_t t, RandomSource& rng) const
{
    std::uint64_t failures = profile_.count(t);
    std::uint64_t remaining = failures + profile_.prefix(t - 1);
    std::uint64_t drawn = 0;
    while (failures > 0 && remaining > failures) {
        if (rng.uniform_below(remaining) >= failures) {
            return drawn;
        }
        ++drawn;
        --failures;
        --remaining;
    }
    // Only failures left: every remaining copy opens a cycle.
    return remaining == failures ? drawn + failures : drawn;
}

bool CycleCountSampler::accept(std::uint64_t n, std::uint64_t k, RandomSource& rng) const
{
    // Accept with probability theta^k / max_j theta^j, as a product of
    // independent Bernoulli(min(theta, 1/theta)) trials.
    const bool above_one = theta_.value() > 1;
    const std::uint64_t trials = above_one ? n - k : k;
    for (std::uint64_t i = 0; i < trials; ++i) {
        if (small_theta_) {
            auto [p, q] = *small_theta_;
            if (!(above_one ? rng.bernoulli(q, p) : rng.bernoulli(p, q))) {
                return false;
            }
        } else {
            const BigInt& lo = above_one ? theta_.den() : theta_.num();
            const BigInt& hi = above_one ? theta_.num() : theta_.den();
            if (rng.uniform_below(hi) >= lo) {
                return false;
            }
        }
    }
    return true;
}

std::uint64_t CycleCountSampler::draw_step(std::size_t t, RandomSource& rng) const
{
    if (t < 1 || t > profile_.length()) {
        throw std::out_of_range("step " + std::to_string(t) + " outside the profile");
    }
    if (profile_.prefix(t - 1) == 0) {
        return profile_.count(t);
    }
    if (theta_.is_one()) {
        return draw_uniform_step(t, rng);
    }
    while (true) {
        const auto k = draw_uniform_step(t, rng);
        if (accept(profile_.count(t), k, rng)) {
            return k;
        }
    }
}

std::uint64_t CycleCountSampler::sample(RandomSource& rng) const
{
    std::uint64_t total = 0;
    for (std::size_t t = 1; t <= profile_.length(); ++t) {
        total += draw_step(t, rng);
    }
    return total;
}

}  // namespace mcrp
