#include "mcrp/factorization.hpp"

#include <algorithm>

namespace mcrp {

DecompositionCheck validate_decomposition(const CycleDecomposition& d)
{
    Letter previous = 0;
    for (std::size_t i = 0; i < d.cycles.size(); ++i) {
        const auto& c = d.cycles[i];
        if (c.elements.empty()) {
            return {false, i, 2, "cycle " + std::to_string(i) + " is empty"};
        }
        const Letter y = c.leader();
        if (y < previous) {
            return {false, i, 1,
                    "cycle " + std::to_string(i) + " has leader " + std::to_string(y) +
                        " below the previous leader " + std::to_string(previous)};
        }
        for (std::size_t j = 0; j + 1 < c.size(); ++j) {
            if (c.elements[j] <= y) {
                return {false, i, 2,
                        "cycle " + std::to_string(i) + " element " + std::to_string(c.elements[j]) +
                            " does not exceed its leader " + std::to_string(y)};
            }
        }
        previous = y;
    }
    return {};
}

CycleDecomposition factorize(const Permutation& p)
{
    const auto t = p.profile().length();
    std::vector<std::size_t> head(t, 0);
    CycleDecomposition out;
    std::size_t leader = 1;
    while (true) {
        while (leader <= t && head[leader - 1] == p.profile().count(leader)) {
            ++leader;
        }
        if (leader > t) {
            break;
        }
        Word elements;
        auto current = static_cast<Letter>(leader);
        while (true) {
            auto w = p.word(current);
            Letter next = w[head[current - 1]++];
            elements.push_back(next);
            if (next == leader) {
                break;
            }
            current = next;
        }
        out.cycles.emplace_back(std::move(elements));
    }
    return out;
}

Permutation compose(const CycleDecomposition& d)
{
    if (auto check = validate_decomposition(d); !check) {
        throw ValidationError(check.message);
    }
    Permutation result;
    for (const auto& c : d.cycles) {
        result = intercalate(result, cycle_to_permutation(c));
    }
    return result;
}

std::size_t cycle_count(const Permutation& p) { return factorize(p).size(); }

std::string format_decomposition(const CycleDecomposition& d) { return format_cycles(d.cycles); }

CycleDecomposition parse_decomposition(std::string_view text) { return {parse_cycles(text)}; }

Profile profile_of(const CycleDecomposition& d)
{
    std::vector<std::uint64_t> counts;
    for (const auto& c : d.cycles) {
        for (Letter x : c.elements) {
            if (x > counts.size()) {
                counts.resize(x, 0);
            }
            ++counts[x - 1];
        }
    }
    return Profile(std::move(counts));
}

}  // namespace mcrp
