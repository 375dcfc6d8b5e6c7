#pragma once

#include <gmpxx.h>

#include <string>

#include "rankprob/errors.hpp"

namespace rankprob::exact {

using BigInt = mpz_class;
using BigRat = mpq_class;

/// A positive half-integer argument for the gamma function, stored as 2x so
/// that 1/2, 1, 3/2, ... are all representable without rounding.
class HalfInteger {
public:
    explicit HalfInteger(long twice_value) : twice_value_(twice_value) {}

    static HalfInteger whole(long k) { return HalfInteger(2 * k); }
    static HalfInteger half_of(long numerator) { return HalfInteger(numerator); }

    long twice_value() const { return twice_value_; }
    bool is_integer() const { return twice_value_ % 2 == 0; }

    bool operator==(const HalfInteger&) const = default;

private:
    long twice_value_;
};

/// Exact number of the form q * pi^(h/2) with q an arbitrary-precision
/// rational and h a nonnegative integer.  Always canonical: q in lowest terms
/// with positive denominator, and zero stored as (0/1, h = 0).  Two values
/// compare equal iff both fields match; pi^(1/2) is irrational, so no
/// cross-power normalization exists.
class PiRational {
public:
    PiRational() : coeff_(0), pi_half_pow_(0) {}
    PiRational(long value) : coeff_(value), pi_half_pow_(0) {}
    PiRational(BigRat coeff, long pi_half_pow = 0);
    PiRational(BigInt numerator, BigInt denominator, long pi_half_pow = 0);

    /// (1, h=1), i.e. sqrt(pi).
    static PiRational sqrt_pi() { return PiRational(BigRat(1), 1); }
    /// pi^power as (1, h=2*power).
    static PiRational pi_power(long power) { return PiRational(BigRat(1), 2 * power); }

    const BigRat& coeff() const { return coeff_; }
    long pi_half_pow() const { return pi_half_pow_; }

    bool is_zero() const { return sgn(coeff_) == 0; }
    /// True when the value involves no pi factor at all.
    bool is_rational() const { return pi_half_pow_ == 0; }
    int sign() const { return sgn(coeff_); }

    PiRational operator-() const;
    PiRational operator*(const PiRational& rhs) const;
    PiRational operator/(const PiRational& rhs) const;
    PiRational pow(unsigned long exponent) const;

    bool operator==(const PiRational& rhs) const;
    bool operator!=(const PiRational& rhs) const { return !(*this == rhs); }

    /// Nearest double; fine for |log10| within double range.
    double to_double() const;
    /// Natural log of |value|; robust for coefficients far outside double
    /// range.  Requires a nonzero value.
    double log_abs() const;

    /// Plain rendering, e.g. "27*pi^2/1024" with UTF-8 pi and middle dot:
    /// (27/1024, h=4) -> "27·π^2/1024", (1/4, h=2) -> "π/4".
    std::string to_string() const;
    /// Prime-factored rendering, e.g. (27/1024, h=4) -> "3^3·π^2/2^10".
    std::string to_factored_string() const;
    /// Correctly rounded decimal expansion to `digits` significant digits.
    std::string to_decimal(int digits) const;

private:
    void canonicalize();

    BigRat coeff_;
    long pi_half_pow_;
};

/// Exact Gamma(x) for a positive half-integer x, by iterating
/// Gamma(x+1) = x*Gamma(x) down to Gamma(1) = 1 or Gamma(1/2) = sqrt(pi).
PiRational gamma_half(HalfInteger x);

/// Barnes G at a positive integer argument: G(m) = (m-2)!(m-3)!...1!,
/// with G(1) = G(2) = 1.
BigInt barnes_g(long argument);

/// n!! with (-1)!! = 0!! = 1.
BigInt double_factorial(long n);

BigInt factorial(long n);

/// to_decimal as a free operation mirroring the member.
std::string to_decimal(const PiRational& x, int digits);

/// round(pi * 10^digits), computed from scratch by Machin's arctangent
/// formula; exposed so tests can pin the internal constant.
BigInt pi_scaled(int digits);

/// round(x * 10^pow10) as an exact integer (signed).
BigInt scaled_round(const PiRational& x, long pow10);

/// Renders scaled/10^pow10 to `digits` significant digits, same output rules
/// as PiRational::to_decimal.  Lets callers print quantities (such as
/// 1 - q*pi^(N/2)) that fall outside the PiRational closure.
std::string decimal_from_scaled(BigInt scaled, long pow10, int digits);

} // namespace rankprob::exact
