#ifndef MCRP_CORE_HPP
#define MCRP_CORE_HPP

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mcrp {

/// Letters are the positive integers 1..t in their usual order.
using Letter = std::uint32_t;
using Word = std::vector<Letter>;

class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Multiplicity vector (n_1, ..., n_t) of the multiset M(n_1, ..., n_t).
///
/// Zero multiplicities are allowed and behave as absent letters. Prefix sums
/// N_0 = 0, N_s = n_1 + ... + n_s are cached on construction.
class Profile {
public:
    Profile() : prefix_{0} {}
    explicit Profile(std::vector<std::uint64_t> counts);

    /// Parses "3,2,1,4". An empty string gives the empty profile.
    static Profile parse(std::string_view text);
    static Profile all_ones(std::size_t length);

    /// Number of letters t.
    std::size_t length() const { return counts_.size(); }
    bool empty() const { return counts_.empty(); }
    /// n_letter, 1-based. Letters beyond the profile have multiplicity 0.
    std::uint64_t count(std::size_t letter) const
    {
        return letter >= 1 && letter <= counts_.size() ? counts_[letter - 1] : 0;
    }
    /// N_s for 0 <= s <= length().
    std::uint64_t prefix(std::size_t s) const { return prefix_.at(s); }
    std::uint64_t total() const { return prefix_.back(); }
    const std::vector<std::uint64_t>& counts() const { return counts_; }

    /// The profile (n_1, ..., n_s).
    Profile truncated(std::size_t s) const;

    std::string to_string() const;

    /// Equality ignores trailing zero multiplicities.
    friend bool operator==(const Profile& a, const Profile& b);

private:
    std::vector<std::uint64_t> counts_;
    std::vector<std::uint64_t> prefix_;
};

/// A permutation of a multiset, stored as one successor word per letter.
///
/// word(a) is the bottom line of the two-line array under the block of top
/// line entries equal to a, read left to right. Concatenating the words in
/// letter order gives the one-line notation.
class Permutation {
public:
    Permutation() = default;

    /// Builds from per-letter words; validates lengths and letter counts.
    Permutation(Profile profile, std::vector<Word> words);

    static Permutation from_word(std::span<const Letter> word, const Profile& profile);

    const Profile& profile() const { return profile_; }
    /// Successor word of letter a (1-based). Letters outside the profile have an empty word.
    std::span<const Letter> word(std::size_t letter) const;
    const std::vector<Word>& words() const { return words_; }

    std::size_t size() const { return static_cast<std::size_t>(profile_.total()); }
    bool empty() const { return size() == 0; }

    Word one_line() const;
    /// Top and bottom lines of the two-line array.
    std::pair<Word, Word> two_line() const;

    friend bool operator==(const Permutation& a, const Permutation& b);

private:
    Profile profile_;
    std::vector<Word> words_;
};

/// A cycle (x_1 ... x_m) in Knuth's multiset sense; repeats are allowed.
struct Cycle {
    Word elements;

    Cycle() = default;
    explicit Cycle(Word e);

    std::size_t size() const { return elements.size(); }
    /// The last written element.
    Letter leader() const { return elements.back(); }

    friend bool operator==(const Cycle&, const Cycle&) = default;
};

Permutation permutation_from_word(std::span<const Letter> word, const Profile& profile);
Word word_from_permutation(const Permutation& p);

/// Intercalation product: per letter, the successor words are concatenated.
Permutation intercalate(const Permutation& lhs, const Permutation& rhs);

/// The permutation whose columns are x_i -> x_{i+1} (cyclically), stably sorted by top value.
Permutation cycle_to_permutation(const Cycle& c);

// Text formats. WORD := INT (" " INT)*, CYCLES := ("(" WORD ")")+.
std::string format_word(std::span<const Letter> word);
Word parse_word(std::string_view text);
std::string format_two_line(const Permutation& p);
std::string format_cycle(const Cycle& c);
std::string format_cycles(std::span<const Cycle> cycles);
std::vector<Cycle> parse_cycles(std::string_view text);

/// Letter counts of a word, as a profile whose length is the largest letter.
Profile profile_of(std::span<const Letter> word);

}  // namespace mcrp

#endif  // MCRP_CORE_HPP
