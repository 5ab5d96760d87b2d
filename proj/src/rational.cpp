#include "mcrp/rational.hpp"

#include <stdexcept>

namespace mcrp {

BigInt binomial(std::int64_t n, std::int64_t k)
{
    if (k < 0) {
        return 0;
    }
    if (n == -1) {
        return k == 0 ? 1 : 0;
    }
    if (n < -1) {
        throw std::invalid_argument("binomial: n must be >= -1");
    }
    if (k > n) {
        return 0;
    }
    BigInt result;
    mpz_bin_uiui(result.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return result;
}

std::string to_string(const BigInt& z) { return z.get_str(); }

std::string to_string(const BigRational& q)
{
    if (q.get_den() == 1) {
        return q.get_num().get_str();
    }
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

BigInt parse_integer(std::string_view digits, std::string_view whole)
{
    if (digits.empty()) {
        throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
    }
    std::size_t start = (digits.front() == '-' || digits.front() == '+') ? 1 : 0;
    if (start == digits.size()) {
        throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
    }
    for (std::size_t i = start; i < digits.size(); ++i) {
        if (digits[i] < '0' || digits[i] > '9') {
            throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
        }
    }
    std::string text(digits.front() == '+' ? digits.substr(1) : digits);
    return BigInt(text, 10);
}

}  // namespace

BigRational parse_rational(std::string_view text)
{
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return BigRational(parse_integer(text, text));
    }
    BigInt num = parse_integer(text.substr(0, slash), text);
    BigInt den = parse_integer(text.substr(slash + 1), text);
    if (den == 0) {
        throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    }
    BigRational q(num, den);
    q.canonicalize();
    return q;
}

BigRational pow(const BigRational& base, std::uint64_t exponent)
{
    BigRational result;
    mpz_pow_ui(result.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
    mpz_pow_ui(result.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
    return result;
}

double to_double(const BigRational& q)
{
    if (q == 0) {
        return 0.0;
    }
    mpf_class f(0, 128);
    f = q;
    return f.get_d();
}

BigRational sum(std::span<const BigRational> values)
{
    BigRational total = 0;
    for (const auto& v : values) {
        total += v;
    }
    return total;
}

Theta::Theta(BigRational value) : value_(std::move(value))
{
    value_.canonicalize();
    if (value_ <= 0) {
        throw std::invalid_argument("theta must be positive, got " + mcrp::to_string(value_));
    }
    num_ = value_.get_num();
    den_ = value_.get_den();
}

Theta Theta::parse(std::string_view text) { return Theta(parse_rational(text)); }

}  // namespace mcrp
