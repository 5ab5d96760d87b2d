#include "mcrp/core.hpp"
#include "mcrp/oracle.hpp"

#include <doctest.h>

#include <algorithm>

using namespace mcrp;

namespace {

const Word running_word{3, 1, 2, 4, 4, 1, 2, 4, 1, 4};
const Profile running_profile({3, 2, 1, 4});

// Juxtapose the two-line arrays and stable-sort the columns by top value.
Word juxtapose_oracle(const Permutation& a, const Permutation& b)
{
    std::vector<std::pair<Letter, Letter>> columns;
    for (const auto* p : {&a, &b}) {
        auto [top, bottom] = p->two_line();
        for (std::size_t i = 0; i < top.size(); ++i) {
            columns.emplace_back(top[i], bottom[i]);
        }
    }
    std::stable_sort(columns.begin(), columns.end(), [](auto x, auto y) { return x.first < y.first; });
    Word out;
    for (auto [top, bottom] : columns) {
        out.push_back(bottom);
    }
    return out;
}

}  // namespace

TEST_CASE("profile prefix sums and parsing")
{
    const Profile p = Profile::parse("3,2,1,4");
    CHECK(p == running_profile);
    CHECK(p.length() == 4);
    CHECK(p.prefix(0) == 0);
    CHECK(p.prefix(2) == 5);
    CHECK(p.total() == 10);
    CHECK(p.count(5) == 0);
    CHECK(p.to_string() == "3,2,1,4");
    CHECK(Profile::parse("").empty());
    CHECK(Profile({1, 2, 0}) == Profile({1, 2}));
    CHECK(p.truncated(2) == Profile({3, 2}));
    CHECK_THROWS(Profile::parse("1,x"));
}

TEST_CASE("permutation from a word")
{
    const auto p = permutation_from_word(running_word, running_profile);
    CHECK(Word(p.word(1).begin(), p.word(1).end()) == Word{3, 1, 2});
    CHECK(Word(p.word(2).begin(), p.word(2).end()) == Word{4, 4});
    CHECK(Word(p.word(3).begin(), p.word(3).end()) == Word{1});
    CHECK(Word(p.word(4).begin(), p.word(4).end()) == Word{2, 4, 1, 4});
    CHECK(word_from_permutation(p) == running_word);

    const auto small = permutation_from_word(Word{2, 1, 2}, Profile({1, 2}));
    CHECK(small.words() == std::vector<Word>{{2}, {1, 2}});
    CHECK(word_from_permutation(small) == Word{2, 1, 2});

    const auto empty = permutation_from_word(Word{}, Profile());
    CHECK(empty.empty());
    CHECK(word_from_permutation(empty).empty());
}

TEST_CASE("two-line form of the running example")
{
    const auto p = Permutation::from_word(running_word, running_profile);
    auto [top, bottom] = p.two_line();
    CHECK(top == Word{1, 1, 1, 2, 2, 3, 4, 4, 4, 4});
    CHECK(bottom == running_word);
}

TEST_CASE("validation names the offending letter")
{
    CHECK_THROWS_AS(permutation_from_word(Word{1, 2}, Profile({1, 2})), ValidationError);
    try {
        Permutation(Profile({1, 1}), {{2}, {2}});
        FAIL("expected a validation error");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("letter") != std::string::npos);
    }
    CHECK_THROWS_AS(permutation_from_word(Word{1, 3}, Profile({1, 1})), ValidationError);
}

TEST_CASE("intercalation is per-letter concatenation")
{
    const auto a = Permutation::from_word(Word{3, 1, 4, 1, 2}, profile_of(Word{3, 1, 4, 1, 2}));
    const auto b = Permutation::from_word(Word{2, 4, 4, 1, 4}, profile_of(Word{2, 4, 4, 1, 4}));
    const auto c = intercalate(a, b);
    CHECK(c.one_line() == running_word);
    CHECK(c.one_line() == juxtapose_oracle(a, b));

    CHECK(intercalate(c, Permutation()) == c);
    CHECK(intercalate(Permutation(), c) == c);

    const auto x = cycle_to_permutation(Cycle({2, 1}));
    const auto y = cycle_to_permutation(Cycle({2}));
    CHECK(intercalate(x, y).one_line() == Word{2, 1, 2});
    CHECK(intercalate(x, y).one_line() == juxtapose_oracle(x, y));
}

TEST_CASE("intercalation agrees with the column-sorting oracle on every small pair")
{
    for (std::uint64_t n = 1; n <= 4; ++n) {
        for (const auto& pa : oracle::compositions(n)) {
            for (const auto& pb : oracle::compositions(5 - n)) {
                for (const auto& wa : oracle::enumerate_permutations(pa)) {
                    for (const auto& wb : oracle::enumerate_permutations(pb)) {
                        const auto a = Permutation::from_word(wa, pa);
                        const auto b = Permutation::from_word(wb, pb);
                        REQUIRE(intercalate(a, b).one_line() == juxtapose_oracle(a, b));
                    }
                }
            }
        }
    }
}

TEST_CASE("cycles as permutations")
{
    CHECK(cycle_to_permutation(Cycle({4, 2, 4, 4, 1, 3, 1, 1, 2, 4})).one_line() == running_word);
    CHECK(cycle_to_permutation(Cycle({4})).one_line() == Word{4});
    CHECK(cycle_to_permutation(Cycle({2, 1})).one_line() == Word{2, 1});
    CHECK_THROWS_AS(Cycle(Word{}), ValidationError);
    CHECK(Cycle({3, 1}).leader() == 1);
}

TEST_CASE("word and cycle text round trips")
{
    CHECK(parse_word("3 1 2") == Word{3, 1, 2});
    CHECK(format_word(Word{3, 1, 2}) == "3 1 2");
    const auto cycles = parse_cycles("(3 1)(1) (2 4 2 4 4 1)(4)");
    REQUIRE(cycles.size() == 4);
    CHECK(cycles[2].elements == Word{2, 4, 2, 4, 4, 1});
    CHECK(format_cycles(cycles) == "(3 1)(1)(2 4 2 4 4 1)(4)");
    CHECK(parse_cycles("").empty());
    CHECK_THROWS(parse_cycles("(3 1"));
    CHECK_THROWS(parse_cycles("()"));
    CHECK_THROWS(parse_word("1 a"));
}
