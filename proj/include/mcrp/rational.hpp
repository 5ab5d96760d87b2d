#ifndef MCRP_RATIONAL_HPP
#define MCRP_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace mcrp {

using BigInt = mpz_class;
using BigRational = mpq_class;

/// Binomial coefficient C(n, k) for n >= -1.
///
/// Uses the convention C(-1, 0) = 1 and C(-1, k) = 0 for k >= 1, which is
/// what makes the stars-and-bars count correct when there are no slots yet.
BigInt binomial(std::int64_t n, std::int64_t k);

/// "num/den" in lowest terms; integers print without a denominator.
std::string to_string(const BigRational& q);
std::string to_string(const BigInt& z);

/// Parses "p/q" or "p". Throws std::invalid_argument on malformed input.
BigRational parse_rational(std::string_view text);

/// Raises a rational to a nonnegative integer power.
BigRational pow(const BigRational& base, std::uint64_t exponent);

/// Converts an exact rational to the nearest double, including values whose
/// numerator and denominator individually overflow double range.
double to_double(const BigRational& q);

/// Sum of a sequence of rationals.
BigRational sum(std::span<const BigRational> values);

/// Positive rational weighting parameter theta = p/q, stored in lowest terms.
class Theta {
public:
    Theta() : value_(1), num_(1), den_(1) {}
    explicit Theta(BigRational value);
    Theta(long num, long den) : Theta(BigRational(num, den)) {}

    static Theta parse(std::string_view text);

    const BigRational& value() const { return value_; }
    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }
    bool is_one() const { return value_ == 1; }
    std::string to_string() const { return mcrp::to_string(value_); }

    friend bool operator==(const Theta& a, const Theta& b) { return a.value_ == b.value_; }

private:
    BigRational value_;
    BigInt num_;
    BigInt den_;
};

}  // namespace mcrp

#endif  // MCRP_RATIONAL_HPP
