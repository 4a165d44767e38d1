#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>

namespace genfock {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using Complex = std::complex<double>;

inline BigInt int_pow(const BigInt& base, unsigned exp) {
    return boost::multiprecision::pow(base, exp);
}

/// base^exp for integer exp of either sign. 0^0 = 1; 0^negative throws.
inline Rational rat_pow(const Rational& base, long exp) {
    if (exp >= 0) {
        return Rational(int_pow(numerator(base), static_cast<unsigned>(exp)),
                        int_pow(denominator(base), static_cast<unsigned>(exp)));
    }
    if (base == 0) throw std::domain_error("rat_pow: zero to a negative power");
    return Rational(int_pow(denominator(base), static_cast<unsigned>(-exp)),
                    int_pow(numerator(base), static_cast<unsigned>(-exp)));
}

inline BigInt factorial_big(unsigned n) {
    BigInt f = 1;
    for (unsigned k = 2; k <= n; ++k) f *= k;
    return f;
}

inline BigInt binomial_big(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (unsigned i = 0; i < k; ++i) {
        r *= (n - i);
        r /= (i + 1);  // exact at every step: r is C(n, i+1) * remaining partial
    }
    return r;
}

/// Natural log of a positive big integer, accurate to ~1e-15 relative even
/// when the value is far outside double range.
inline double log_big(const BigInt& x) {
    if (x <= 0) throw std::domain_error("log_big: nonpositive argument");
    const unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(x)) + 1;
    if (bits <= 62) return std::log(x.convert_to<double>());
    const unsigned drop = bits - 62;
    const BigInt top = x >> drop;
    return std::log(top.convert_to<double>()) + drop * M_LN2;
}

inline double log_rational(const Rational& r) {
    if (r <= 0) throw std::domain_error("log_rational: nonpositive argument");
    return log_big(numerator(r)) - log_big(denominator(r));
}

/// Rational -> double that stays finite-and-correct when numerator and
/// denominator individually overflow double but the quotient does not.
inline double to_double(const Rational& r) {
    const BigInt& num = numerator(r);
    const BigInt& den = denominator(r);
    if (num == 0) return 0.0;
    const bool neg = num < 0;
    BigInt n = neg ? BigInt(-num) : num;
    const unsigned nb = static_cast<unsigned>(boost::multiprecision::msb(n)) + 1;
    const unsigned db = static_cast<unsigned>(boost::multiprecision::msb(den)) + 1;
    if (nb <= 960 && db <= 960) {
        double v = n.convert_to<double>() / den.convert_to<double>();
        return neg ? -v : v;
    }
    // Align both operands to ~64 bits and track the power of two.
    long shift = 0;
    BigInt d = den;
    if (nb > 64) { n >>= (nb - 64); shift += static_cast<long>(nb - 64); }
    if (db > 64) { d >>= (db - 64); shift -= static_cast<long>(db - 64); }
    double v = std::ldexp(n.convert_to<double>() / d.convert_to<double>(),
                          static_cast<int>(shift));
    return neg ? -v : v;
}

/// splitmix64: cheap stateless mixer used to derive independent
/// per-check PRNG seeds from (master seed, check tag).
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

}  // namespace genfock
