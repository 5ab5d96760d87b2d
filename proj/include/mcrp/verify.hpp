#ifndef MCRP_VERIFY_HPP
#define MCRP_VERIFY_HPP

#include "mcrp/rational.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace mcrp::oracle {

struct CheckResult {
    std::string name;
    std::uint64_t cases = 0;
    std::uint64_t failures = 0;
    /// First few counterexamples, human readable.
    std::vector<std::string> counterexamples;

    bool passed() const { return failures == 0; }
};

struct VerifyReport {
    std::uint64_t max_size = 0;
    std::vector<Theta> thetas;
    std::vector<CheckResult> checks;

    bool passed() const;
};

/// Runs the brute-force suite over every profile with positive entries and
/// total size <= max_size:
///   - factorize/compose round trip and uniqueness by exhaustive search (sizes <= 7),
///   - path law of the process against theta^{cycles}/S and the normalizer identity,
///   - k_pmf against the enumerated cycle-count law,
///   - the three closed forms of the theta = 1 step law.
VerifyReport run_verification(std::uint64_t max_size, const std::vector<Theta>& thetas);

}  // namespace mcrp::oracle

#endif  // MCRP_VERIFY_HPP
