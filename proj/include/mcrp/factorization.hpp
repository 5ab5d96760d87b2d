#ifndef MCRP_FACTORIZATION_HPP
#define MCRP_FACTORIZATION_HPP

#include "mcrp/core.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mcrp {

/// Ordered cycle factorization pi = c_1 ⊥ c_2 ⊥ ... with each cycle written
/// leader last. A decomposition is valid when
///   1. leaders are nondecreasing, and
///   2. every non-leader element of a cycle strictly exceeds its leader.
struct CycleDecomposition {
    std::vector<Cycle> cycles;

    std::size_t size() const { return cycles.size(); }
    bool empty() const { return cycles.empty(); }

    friend bool operator==(const CycleDecomposition&, const CycleDecomposition&) = default;
};

struct DecompositionCheck {
    bool valid = true;
    /// Index of the first offending cycle, if any.
    std::optional<std::size_t> cycle_index;
    /// 1 or 2, the violated condition.
    int condition = 0;
    std::string message;

    explicit operator bool() const { return valid; }
};

DecompositionCheck validate_decomposition(const CycleDecomposition& d);

/// The unique valid decomposition of p.
///
/// Each successor word is consumed as a queue. A cycle starts at the smallest
/// letter y with a nonempty queue and follows successors until y comes back.
CycleDecomposition factorize(const Permutation& p);

/// Intercalation of the cycles. Throws ValidationError if d is not valid.
Permutation compose(const CycleDecomposition& d);

std::size_t cycle_count(const Permutation& p);

std::string format_decomposition(const CycleDecomposition& d);
CycleDecomposition parse_decomposition(std::string_view text);

/// Element multiset of a decomposition as a profile.
Profile profile_of(const CycleDecomposition& d);

}  // namespace mcrp

#endif  // MCRP_FACTORIZATION_HPP
