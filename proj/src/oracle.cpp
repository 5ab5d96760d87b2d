#include "mcrp/oracle.hpp"

#include "mcrp/crp.hpp"
#include "mcrp/distribution.hpp"

#include <algorithm>
#include <functional>
#include <string>

namespace mcrp::oracle {

namespace {

void check_cap(const Profile& profile, std::uint64_t cap)
{
    if (profile.total() > cap) {
        throw CapExceeded("profile size " + std::to_string(profile.total()) + " exceeds the enumeration cap " +
                          std::to_string(cap));
    }
}

}  // namespace

std::vector<Word> enumerate_permutations(const Profile& profile, std::uint64_t cap)
{
    check_cap(profile, cap);
    Word word;
    for (std::size_t a = 1; a <= profile.length(); ++a) {
        word.insert(word.end(), profile.count(a), static_cast<Letter>(a));
    }
    std::vector<Word> out;
    do {
        out.push_back(word);
    } while (std::next_permutation(word.begin(), word.end()));
    return out;
}

BigRational ExactLaw::total() const
{
    BigRational s = 0;
    for (const auto& [word, p] : probabilities) {
        s += p;
    }
    return s;
}

ExactLaw exact_law(const Profile& profile, const Theta& theta, std::uint64_t cap)
{
    ExactLaw law{profile, theta, {}, 0, normalizer(profile, theta)};
    std::vector<std::pair<Word, BigRational>> weights;
    for (auto& word : enumerate_permutations(profile, cap)) {
        auto w = weight(Permutation::from_word(word, profile), theta);
        law.enumerated_weight += w;
        weights.emplace_back(std::move(word), std::move(w));
    }
    for (auto& [word, w] : weights) {
        law.probabilities.emplace(std::move(word), w / law.product_normalizer);
    }
    return law;
}

namespace {

/// Calls `visit` with every composition of `copies` into `slots` parts, as nonzero parts.
void for_each_composition(std::uint64_t copies, std::uint64_t slots,
                          const std::function<void(const std::vector<Insertion>&)>& visit)
{
    std::vector<Insertion> parts;
    std::function<void(std::uint64_t, std::uint64_t)> rec = [&](std::uint64_t slot, std::uint64_t left) {
        if (left == 0) {
            visit(parts);
            return;
        }
        if (slot == slots) {
            return;
        }
        for (std::uint64_t c = left;; --c) {
            if (c > 0) {
                parts.push_back({slot, c});
            }
            rec(slot + 1, left - c);
            if (c > 0) {
                parts.pop_back();
            }
            if (c == 0) {
                break;
            }
        }
    };
    rec(0, copies);
}

}  // namespace

std::map<Word, BigRational> path_law(const Profile& profile, const Theta& theta, std::uint64_t cap)
{
    check_cap(profile, cap);
    std::map<Word, BigRational> law;
    std::function<void(const CycleDecomposition&, std::size_t, const BigRational&)> walk =
        [&](const CycleDecomposition& d, std::size_t t, const BigRational& prob) {
            if (t > profile.length()) {
                law[compose(d).one_line()] += prob;
                return;
            }
            const auto n = profile.count(t);
            const auto slots = profile.prefix(t - 1);
            const BigRational normalizer_t = step_normalizer(t, profile, theta);
            for (std::uint64_t k = 0; k <= n; ++k) {
                if (insertion_count(t, profile, k) == 0) {
                    continue;
                }
                const BigRational branch = prob * pow(theta.value(), k) / normalizer_t;
                for_each_composition(n - k, slots, [&](const std::vector<Insertion>& parts) {
                    walk(extend(d, static_cast<Letter>(t), k, parts), t + 1, branch);
                });
            }
        };
    walk(CycleDecomposition{}, 1, BigRational(1));
    return law;
}

std::vector<CycleDecomposition> enumerate_decompositions(const Profile& profile, std::uint64_t cap)
{
    check_cap(profile, cap);
    const auto t = profile.length();
    std::vector<std::uint64_t> left(profile.counts());
    std::uint64_t remaining = profile.total();
    std::vector<CycleDecomposition> out;
    CycleDecomposition current;
    Word open;

    std::function<void(Letter)> start_cycle;
    std::function<void(Letter)> grow_cycle;

    start_cycle = [&](Letter floor) {
        if (remaining == 0) {
            out.push_back(current);
            return;
        }
        for (Letter y = floor; y <= t; ++y) {
            if (left[y - 1] == 0) {
                continue;
            }
            // A letter below y that is still unplaced can no longer be placed.
            bool stranded = false;
            for (Letter z = 1; z < y; ++z) {
                stranded = stranded || left[z - 1] > 0;
            }
            if (stranded) {
                break;
            }
            --left[y - 1];
            --remaining;
            open.clear();
            grow_cycle(y);
            ++left[y - 1];
            ++remaining;
        }
    };

    grow_cycle = [&](Letter leader) {
        // Close the cycle here.
        Word elements = open;
        elements.push_back(leader);
        current.cycles.emplace_back(std::move(elements));
        Word saved = open;
        start_cycle(leader);
        open = saved;
        current.cycles.pop_back();
        // Or extend it with a larger letter.
        for (Letter x = leader + 1; x <= t; ++x) {
            if (left[x - 1] == 0) {
                continue;
            }
            --left[x - 1];
            --remaining;
            open.push_back(x);
            grow_cycle(leader);
            open.pop_back();
            ++left[x - 1];
            ++remaining;
        }
    };

    start_cycle(1);
    return out;
}

std::vector<CycleDecomposition> enumerate_factorizations(std::span<const Letter> word, const Profile& profile,
                                                         std::uint64_t cap)
{
    const auto target = Permutation::from_word(word, profile);
    std::vector<CycleDecomposition> out;
    for (auto& d : enumerate_decompositions(profile, cap)) {
        if (compose(d) == target) {
            out.push_back(std::move(d));
        }
    }
    return out;
}

std::vector<BigRational> classical_k_pgf(std::size_t n, const Theta& theta)
{
    std::vector<BigRational> poly{BigRational(1)};
    BigRational rising = 1;
    for (std::size_t i = 0; i < n; ++i) {
        const BigRational shift(static_cast<long>(i));
        std::vector<BigRational> next(poly.size() + 1, BigRational(0));
        for (std::size_t j = 0; j < poly.size(); ++j) {
            next[j] += poly[j] * shift;
            next[j + 1] += poly[j] * theta.value();
        }
        poly = std::move(next);
        rising *= theta.value() + shift;
    }
    for (auto& c : poly) {
        c /= rising;
    }
    return poly;
}

BigInt multinomial(const Profile& profile)
{
    BigInt out;
    mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(profile.total()));
    for (auto n : profile.counts()) {
        BigInt f;
        mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
        out /= f;
    }
    return out;
}

std::vector<Profile> compositions(std::uint64_t n)
{
    if (n == 0) {
        return {Profile{}};
    }
    std::vector<Profile> out;
    // Each of the n - 1 gaps between units is either a cut or not.
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n - 1)); ++mask) {
        std::vector<std::uint64_t> parts{1};
        for (std::uint64_t gap = 0; gap + 1 < n; ++gap) {
            if (mask >> gap & 1) {
                parts.push_back(1);
            } else {
                ++parts.back();
            }
        }
        out.emplace_back(std::move(parts));
    }
    return out;
}

}  // namespace mcrp::oracle
