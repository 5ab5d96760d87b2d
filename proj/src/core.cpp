#include "mcrp/core.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

namespace mcrp {

Profile::Profile(std::vector<std::uint64_t> counts) : counts_(std::move(counts))
{
    prefix_.reserve(counts_.size() + 1);
    prefix_.push_back(0);
    for (auto n : counts_) {
        prefix_.push_back(prefix_.back() + n);
    }
}

Profile Profile::parse(std::string_view text)
{
    std::vector<std::uint64_t> counts;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto comma = text.find(',', pos);
        auto field = text.substr(pos, comma == std::string_view::npos ? text.size() - pos : comma - pos);
        while (!field.empty() && std::isspace(static_cast<unsigned char>(field.front()))) {
            field.remove_prefix(1);
        }
        while (!field.empty() && std::isspace(static_cast<unsigned char>(field.back()))) {
            field.remove_suffix(1);
        }
        std::uint64_t value = 0;
        auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
        if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size()) {
            throw ValidationError("malformed profile entry '" + std::string(field) + "'");
        }
        counts.push_back(value);
        if (comma == std::string_view::npos) {
            break;
        }
        pos = comma + 1;
        if (pos == text.size()) {
            throw ValidationError("trailing comma in profile");
        }
    }
    return Profile(std::move(counts));
}

Profile Profile::all_ones(std::size_t length) { return Profile(std::vector<std::uint64_t>(length, 1)); }

Profile Profile::truncated(std::size_t s) const
{
    s = std::min(s, counts_.size());
    return Profile(std::vector<std::uint64_t>(counts_.begin(), counts_.begin() + static_cast<std::ptrdiff_t>(s)));
}

std::string Profile::to_string() const
{
    std::string out;
    for (std::size_t i = 0; i < counts_.size(); ++i) {
        if (i) {
            out += ',';
        }
        out += std::to_string(counts_[i]);
    }
    return out;
}

bool operator==(const Profile& a, const Profile& b)
{
    auto n = std::max(a.length(), b.length());
    for (std::size_t letter = 1; letter <= n; ++letter) {
        if (a.count(letter) != b.count(letter)) {
            return false;
        }
    }
    return true;
}

Permutation::Permutation(Profile profile, std::vector<Word> words) : profile_(std::move(profile)), words_(std::move(words))
{
    if (words_.size() > profile_.length()) {
        for (std::size_t a = profile_.length() + 1; a <= words_.size(); ++a) {
            if (!words_[a - 1].empty()) {
                throw ValidationError("letter " + std::to_string(a) + " is not in the profile");
            }
        }
    }
    words_.resize(profile_.length());
    std::vector<std::uint64_t> bottom(profile_.length(), 0);
    for (std::size_t a = 1; a <= words_.size(); ++a) {
        if (words_[a - 1].size() != profile_.count(a)) {
            throw ValidationError("word of letter " + std::to_string(a) + " has length " +
                                  std::to_string(words_[a - 1].size()) + ", expected " +
                                  std::to_string(profile_.count(a)));
        }
        for (Letter b : words_[a - 1]) {
            if (b == 0 || b > profile_.length()) {
                throw ValidationError("letter " + std::to_string(b) + " is not in the profile");
            }
            ++bottom[b - 1];
        }
    }
    for (std::size_t b = 1; b <= bottom.size(); ++b) {
        if (bottom[b - 1] != profile_.count(b)) {
            throw ValidationError("letter " + std::to_string(b) + " occurs " + std::to_string(bottom[b - 1]) +
                                  " times in the bottom line, expected " + std::to_string(profile_.count(b)));
        }
    }
}

Permutation Permutation::from_word(std::span<const Letter> word, const Profile& profile)
{
    if (word.size() != profile.total()) {
        throw ValidationError("word has length " + std::to_string(word.size()) + ", profile total is " +
                              std::to_string(profile.total()));
    }
    std::vector<Word> words(profile.length());
    std::size_t pos = 0;
    for (std::size_t a = 1; a <= profile.length(); ++a) {
        auto n = static_cast<std::size_t>(profile.count(a));
        words[a - 1].assign(word.begin() + static_cast<std::ptrdiff_t>(pos),
                            word.begin() + static_cast<std::ptrdiff_t>(pos + n));
        pos += n;
    }
    return Permutation(profile, std::move(words));
}

std::span<const Letter> Permutation::word(std::size_t letter) const
{
    if (letter == 0 || letter > words_.size()) {
        return {};
    }
    return words_[letter - 1];
}

Word Permutation::one_line() const
{
    Word out;
    out.reserve(size());
    for (const auto& w : words_) {
        out.insert(out.end(), w.begin(), w.end());
    }
    return out;
}

std::pair<Word, Word> Permutation::two_line() const
{
    Word top;
    top.reserve(size());
    for (std::size_t a = 1; a <= words_.size(); ++a) {
        top.insert(top.end(), words_[a - 1].size(), static_cast<Letter>(a));
    }
    return {std::move(top), one_line()};
}

bool operator==(const Permutation& a, const Permutation& b)
{
    auto n = std::max(a.words_.size(), b.words_.size());
    for (std::size_t letter = 1; letter <= n; ++letter) {
        auto wa = a.word(letter);
        auto wb = b.word(letter);
        if (!std::equal(wa.begin(), wa.end(), wb.begin(), wb.end())) {
            return false;
        }
    }
    return true;
}

Cycle::Cycle(Word e) : elements(std::move(e))
{
    if (elements.empty()) {
        throw ValidationError("a cycle must be nonempty");
    }
    if (std::find(elements.begin(), elements.end(), Letter{0}) != elements.end()) {
        throw ValidationError("letters are positive integers");
    }
}

Permutation permutation_from_word(std::span<const Letter> word, const Profile& profile)
{
    return Permutation::from_word(word, profile);
}

Word word_from_permutation(const Permutation& p) { return p.one_line(); }

Permutation intercalate(const Permutation& lhs, const Permutation& rhs)
{
    auto n = std::max(lhs.profile().length(), rhs.profile().length());
    std::vector<std::uint64_t> counts(n);
    std::vector<Word> words(n);
    for (std::size_t a = 1; a <= n; ++a) {
        counts[a - 1] = lhs.profile().count(a) + rhs.profile().count(a);
        auto l = lhs.word(a);
        auto r = rhs.word(a);
        auto& w = words[a - 1];
        w.reserve(l.size() + r.size());
        w.insert(w.end(), l.begin(), l.end());
        w.insert(w.end(), r.begin(), r.end());
    }
    return Permutation(Profile(std::move(counts)), std::move(words));
}

Permutation cycle_to_permutation(const Cycle& c)
{
    Profile profile = profile_of(c.elements);
    std::vector<Word> words(profile.length());
    const auto m = c.elements.size();
    for (std::size_t i = 0; i < m; ++i) {
        words[c.elements[i] - 1].push_back(c.elements[(i + 1) % m]);
    }
    return Permutation(std::move(profile), std::move(words));
}

Profile profile_of(std::span<const Letter> word)
{
    Letter top = word.empty() ? 0 : *std::max_element(word.begin(), word.end());
    std::vector<std::uint64_t> counts(top, 0);
    for (Letter x : word) {
        if (x == 0) {
            throw ValidationError("letters are positive integers");
        }
        ++counts[x - 1];
    }
    return Profile(std::move(counts));
}

std::string format_word(std::span<const Letter> word)
{
    std::string out;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (i) {
            out += ' ';
        }
        out += std::to_string(word[i]);
    }
    return out;
}

Word parse_word(std::string_view text)
{
    Word out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        if (std::isspace(static_cast<unsigned char>(text[pos]))) {
            ++pos;
            continue;
        }
        Letter value = 0;
        auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), value);
        if (ec != std::errc{} || value == 0) {
            throw ValidationError("malformed word near '" + std::string(text.substr(pos)) + "'");
        }
        out.push_back(value);
        pos = static_cast<std::size_t>(ptr - text.data());
        if (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos]))) {
            throw ValidationError("malformed word near '" + std::string(text.substr(pos)) + "'");
        }
    }
    return out;
}

std::string format_two_line(const Permutation& p)
{
    auto [top, bottom] = p.two_line();
    return format_word(top) + "\n" + format_word(bottom);
}

std::string format_cycle(const Cycle& c) { return "(" + format_word(c.elements) + ")"; }

std::string format_cycles(std::span<const Cycle> cycles)
{
    std::string out;
    for (const auto& c : cycles) {
        out += format_cycle(c);
    }
    return out;
}

std::vector<Cycle> parse_cycles(std::string_view text)
{
    std::vector<Cycle> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        if (std::isspace(static_cast<unsigned char>(text[pos]))) {
            ++pos;
            continue;
        }
        if (text[pos] != '(') {
            throw ValidationError("expected '(' at offset " + std::to_string(pos));
        }
        auto close = text.find(')', pos);
        if (close == std::string_view::npos) {
            throw ValidationError("unterminated cycle at offset " + std::to_string(pos));
        }
        auto body = text.substr(pos + 1, close - pos - 1);
        if (body.find('(') != std::string_view::npos) {
            throw ValidationError("nested '(' at offset " + std::to_string(pos));
        }
        out.emplace_back(parse_word(body));
        pos = close + 1;
    }
    return out;
}

}  // namespace mcrp
