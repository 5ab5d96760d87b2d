#include "mcrp/random.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <unordered_set>

namespace mcrp {

std::uint64_t mix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t replicate_seed(std::uint64_t master, std::uint64_t index) { return mix64(master ^ mix64(index + 1)); }

std::uint64_t RandomSource::uniform_below(std::uint64_t bound)
{
    if (bound == 0) {
        throw std::invalid_argument("uniform_below: bound must be positive");
    }
    if (bound == 1) {
        return 0;
    }
    const std::uint64_t mask = ~std::uint64_t{0} >> std::countl_zero(bound - 1);
    while (true) {
        std::uint64_t x = engine_() & mask;
        if (x < bound) {
            return x;
        }
    }
}

BigInt RandomSource::uniform_below(const BigInt& bound)
{
    if (bound <= 0) {
        throw std::invalid_argument("uniform_below: bound must be positive");
    }
    if (mpz_fits_ulong_p(bound.get_mpz_t()) && sizeof(unsigned long) == sizeof(std::uint64_t)) {
        return BigInt(static_cast<unsigned long>(uniform_below(static_cast<std::uint64_t>(bound.get_ui()))));
    }
    BigInt top = bound - 1;
    const std::size_t bits = mpz_sizeinbase(top.get_mpz_t(), 2);
    const std::size_t words = (bits + 63) / 64;
    const unsigned top_bits = static_cast<unsigned>(bits - 64 * (words - 1));
    const std::uint64_t top_mask = top_bits == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << top_bits) - 1);
    std::vector<std::uint64_t> limbs(words);
    BigInt x;
    while (true) {
        // Most significant word first.
        for (std::size_t i = words; i-- > 0;) {
            limbs[i] = engine_();
        }
        limbs[words - 1] &= top_mask;
        mpz_import(x.get_mpz_t(), words, -1, sizeof(std::uint64_t), 0, 0, limbs.data());
        if (x < bound) {
            return x;
        }
    }
}

std::vector<std::uint64_t> RandomSource::sorted_subset(std::uint64_t n, std::uint64_t m)
{
    if (m > n) {
        throw std::invalid_argument("sorted_subset: m exceeds n");
    }
    std::vector<std::uint64_t> out;
    out.reserve(m);
    std::unordered_set<std::uint64_t> chosen;
    for (std::uint64_t j = n - m; j < n; ++j) {
        std::uint64_t r = uniform_below(j + 1);
        if (chosen.insert(r).second) {
            out.push_back(r);
        } else {
            chosen.insert(j);
            out.push_back(j);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace mcrp
