#ifndef MCRP_ORACLE_HPP
#define MCRP_ORACLE_HPP

// Brute-force ground truth for small profiles. Everything here enumerates;
// nothing is meant to scale past a dozen or so letters.

#include "mcrp/core.hpp"
#include "mcrp/factorization.hpp"
#include "mcrp/rational.hpp"

#include <map>
#include <vector>

namespace mcrp::oracle {

inline constexpr std::uint64_t default_enumeration_cap = 9;
inline constexpr std::uint64_t default_factorization_cap = 7;

class CapExceeded : public std::length_error {
public:
    using std::length_error::length_error;
};

/// All distinct words with the profile's letter counts, in lexicographic order.
std::vector<Word> enumerate_permutations(const Profile& profile, std::uint64_t cap = default_enumeration_cap);

/// Probability of each word under theta^{cycles} / S.
struct ExactLaw {
    Profile profile;
    Theta theta;
    std::map<Word, BigRational> probabilities;
    /// Sum of theta^{cycles} over the enumeration.
    BigRational enumerated_weight;
    /// prod_s F_s(theta).
    BigRational product_normalizer;

    bool normalizer_identity_holds() const { return enumerated_weight == product_normalizer; }
    BigRational total() const;
};

ExactLaw exact_law(const Profile& profile, const Theta& theta, std::uint64_t cap = default_enumeration_cap);

/// Law of the process output obtained by following every branch of every step.
/// Each placement at step t with k new cycles carries probability theta^k / F_t.
std::map<Word, BigRational> path_law(const Profile& profile, const Theta& theta,
                                     std::uint64_t cap = default_enumeration_cap);

/// Every decomposition of the profile's multiset satisfying both leader
/// conditions, found by exhaustive search.
std::vector<CycleDecomposition> enumerate_decompositions(const Profile& profile,
                                                         std::uint64_t cap = default_factorization_cap);

/// All valid decompositions that compose to the word. There should be exactly one.
std::vector<CycleDecomposition> enumerate_factorizations(std::span<const Letter> word, const Profile& profile,
                                                         std::uint64_t cap = default_factorization_cap);

/// Coefficients of (theta z)(theta z + 1)...(theta z + n - 1) / theta_(n), index = number of cycles.
std::vector<BigRational> classical_k_pgf(std::size_t n, const Theta& theta);

/// Multinomial coefficient N_t! / (n_1! ... n_t!).
BigInt multinomial(const Profile& profile);

/// All profiles with positive entries summing to n (the compositions of n).
std::vector<Profile> compositions(std::uint64_t n);

}  // namespace mcrp::oracle

#endif  // MCRP_ORACLE_HPP
