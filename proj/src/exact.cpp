#include "bsc/exact.hpp"

namespace bsc {

BigInt ipow(long base, unsigned exponent)
{
    return mp::pow(BigInt(base), exponent);
}

Rational rpow(long base, int exponent)
{
    if (exponent >= 0) return Rational(ipow(base, static_cast<unsigned>(exponent)));
    return Rational(BigInt(1), ipow(base, static_cast<unsigned>(-exponent)));
}

std::string to_string(const Rational& r)
{
    return numerator(r).str() + "/" + denominator(r).str();
}

std::string to_string(const BigInt& n)
{
    return n.str();
}

Rational parse_rational(const std::string& text)
{
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(text));
        const BigInt num(text.substr(0, slash));
        const BigInt den(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rational(num, den);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("not a rational: '" + text + "'");
    }
}

}  // namespace bsc
