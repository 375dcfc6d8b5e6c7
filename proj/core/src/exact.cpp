#include "rankprob/exact.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace rankprob::exact {

namespace {

BigInt pow_int(const BigInt& base, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

BigInt ten_pow(unsigned long e) {
    return pow_int(BigInt(10), e);
}

/// round(10^scale / x) summed over the Gregory series for arctan(1/x).
BigInt arctan_inv_scaled(unsigned long x, const BigInt& scale) {
    BigInt term = scale / x;
    BigInt x2 = BigInt(x) * x;
    BigInt sum = 0;
    unsigned long k = 0;
    while (term != 0) {
        BigInt contrib = term / (2 * k + 1);
        if (k % 2 == 0)
            sum += contrib;
        else
            sum -= contrib;
        term /= x2;
        ++k;
    }
    return sum;
}

} // namespace

BigInt pi_scaled(int digits) {
    if (digits < 1)
        throw std::invalid_argument("pi_scaled: digits must be >= 1");
    // 12 internal guard digits absorb the series truncation error.
    const int guard = 12;
    BigInt scale = ten_pow(static_cast<unsigned long>(digits) + guard);
    // Machin: pi = 16*arctan(1/5) - 4*arctan(1/239).
    BigInt pi = 16 * arctan_inv_scaled(5, scale) - 4 * arctan_inv_scaled(239, scale);
    BigInt divisor = ten_pow(guard);
    return (pi + divisor / 2) / divisor;
}

PiRational::PiRational(BigRat coeff, long pi_half_pow)
    : coeff_(std::move(coeff)), pi_half_pow_(pi_half_pow) {
    canonicalize();
}

PiRational::PiRational(BigInt numerator, BigInt denominator, long pi_half_pow)
    : coeff_(), pi_half_pow_(pi_half_pow) {
    if (sgn(denominator) == 0)
        throw DivisionByZeroError("PiRational: zero denominator");
    coeff_ = BigRat(std::move(numerator), std::move(denominator));
    canonicalize();
}

void PiRational::canonicalize() {
    coeff_.canonicalize();
    if (sgn(coeff_) == 0)
        pi_half_pow_ = 0;
    if (pi_half_pow_ < 0)
        throw NegativePiPowerError("PiRational: negative power of pi");
}

PiRational PiRational::operator-() const {
    PiRational r(*this);
    r.coeff_ = -r.coeff_;
    return r;
}

PiRational PiRational::operator*(const PiRational& rhs) const {
    return PiRational(coeff_ * rhs.coeff_, pi_half_pow_ + rhs.pi_half_pow_);
}

PiRational PiRational::operator/(const PiRational& rhs) const {
    if (rhs.is_zero())
        throw DivisionByZeroError("PiRational: division by zero");
    if (is_zero())
        return PiRational();
    if (rhs.pi_half_pow_ > pi_half_pow_)
        throw NegativePiPowerError("PiRational: division would need pi in a denominator");
    return PiRational(coeff_ / rhs.coeff_, pi_half_pow_ - rhs.pi_half_pow_);
}

PiRational PiRational::pow(unsigned long exponent) const {
    if (exponent == 0)
        return PiRational(1);
    BigInt num = pow_int(coeff_.get_num(), exponent);
    BigInt den = pow_int(coeff_.get_den(), exponent);
    return PiRational(BigRat(num, den), pi_half_pow_ * static_cast<long>(exponent));
}

bool PiRational::operator==(const PiRational& rhs) const {
    return pi_half_pow_ == rhs.pi_half_pow_ && cmp(coeff_, rhs.coeff_) == 0;
}

double PiRational::to_double() const {
    if (is_zero())
        return 0.0;
    double d = coeff_.get_d();
    double p = std::pow(std::numbers::pi, static_cast<double>(pi_half_pow_) / 2.0);
    double v = d * p;
    if (std::isfinite(v) && v != 0.0)
        return v;
    return static_cast<double>(sign()) * std::exp(log_abs());
}

double PiRational::log_abs() const {
    if (is_zero())
        throw std::domain_error("PiRational::log_abs of zero");
    long nexp = 0;
    long dexp = 0;
    double nd = mpz_get_d_2exp(&nexp, coeff_.get_num().get_mpz_t());
    double dd = mpz_get_d_2exp(&dexp, coeff_.get_den().get_mpz_t());
    double log_coeff = std::log(std::fabs(nd)) - std::log(dd) +
                       std::numbers::ln2 * (static_cast<double>(nexp) - static_cast<double>(dexp));
    return log_coeff + 0.5 * static_cast<double>(pi_half_pow_) * std::log(std::numbers::pi);
}

namespace {

void append_pi_tokens(std::vector<std::string>& tokens, long pi_half_pow) {
    long whole = pi_half_pow / 2;
    if (whole == 1)
        tokens.push_back("π");
    else if (whole > 1)
        tokens.push_back("π^" + std::to_string(whole));
    if (pi_half_pow % 2 != 0)
        tokens.push_back("√π");
}

std::string join_tokens(const std::vector<std::string>& tokens) {
    std::string out;
    for (const auto& t : tokens) {
        if (!out.empty())
            out += "·";
        out += t;
    }
    return out;
}

/// Trial-division factorization into descending prime-power tokens.  All
/// quantities in this artifact factor over small primes; anything left after
/// the sweep is printed verbatim.
std::vector<std::string> factored_tokens(BigInt v) {
    std::vector<std::pair<BigInt, unsigned long>> factors;
    auto push = [&](const BigInt& p, unsigned long e) { factors.emplace_back(p, e); };
    unsigned long e2 = 0;
    while (mpz_even_p(v.get_mpz_t())) {
        v /= 2;
        ++e2;
    }
    if (e2 > 0)
        push(2, e2);
    for (BigInt p = 3; p * p <= v && p < 1000000; p += 2) {
        unsigned long e = 0;
        while (mpz_divisible_p(v.get_mpz_t(), p.get_mpz_t())) {
            v /= p;
            ++e;
        }
        if (e > 0)
            push(p, e);
    }
    if (v > 1)
        push(v, 1);

    std::vector<std::string> tokens;
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
        if (it->second == 1)
            tokens.push_back(it->first.get_str());
        else
            tokens.push_back(it->first.get_str() + "^" + std::to_string(it->second));
    }
    return tokens;
}

} // namespace

std::string PiRational::to_string() const {
    if (is_zero())
        return "0";
    BigInt num = abs(coeff_.get_num());
    BigInt den = coeff_.get_den();

    std::vector<std::string> tokens;
    if (num != 1 || pi_half_pow_ == 0)
        tokens.push_back(num.get_str());
    append_pi_tokens(tokens, pi_half_pow_);

    std::string out = join_tokens(tokens);
    if (den != 1)
        out += "/" + den.get_str();
    if (sign() < 0)
        out = "-" + out;
    return out;
}

std::string PiRational::to_factored_string() const {
    if (is_zero())
        return "0";
    BigInt num = abs(coeff_.get_num());
    BigInt den = coeff_.get_den();

    std::vector<std::string> tokens;
    if (num != 1)
        tokens = factored_tokens(num);
    append_pi_tokens(tokens, pi_half_pow_);
    if (tokens.empty())
        tokens.push_back("1");

    std::string out = join_tokens(tokens);
    if (den != 1) {
        auto den_tokens = factored_tokens(den);
        std::string den_str = join_tokens(den_tokens);
        if (den_tokens.size() > 1)
            den_str = "(" + den_str + ")";
        out += "/" + den_str;
    }
    if (sign() < 0)
        out = "-" + out;
    return out;
}

namespace {

std::string render_mantissa(const std::string& mantissa, long exp10, int digits) {
    // %g-style switch: fixed for moderate exponents, scientific otherwise.
    if (exp10 < -4 || exp10 >= digits) {
        std::string out;
        out += mantissa[0];
        if (digits > 1) {
            out += '.';
            out += mantissa.substr(1);
        }
        out += 'e';
        out += (exp10 < 0 ? '-' : '+');
        std::string e = std::to_string(std::labs(exp10));
        if (e.size() < 2)
            e = "0" + e;
        return out + e;
    }
    if (exp10 >= 0) {
        std::string out = mantissa.substr(0, exp10 + 1);
        if (exp10 + 1 < digits)
            out += "." + mantissa.substr(exp10 + 1);
        return out;
    }
    return "0." + std::string(-exp10 - 1, '0') + mantissa;
}

} // namespace

std::string PiRational::to_decimal(int digits) const {
    if (digits < 1)
        throw std::invalid_argument("to_decimal: digits must be >= 1");
    if (is_zero())
        return "0";

    const int guard = 20;
    const int working = digits + guard;
    const BigInt scale = ten_pow(working);
    const BigInt pi_w = pi_scaled(working);
    const long q = pi_half_pow_ / 2;
    const long r = pi_half_pow_ % 2;

    BigInt sqrt_pi_w = 0;
    if (r != 0) {
        BigInt t = pi_w * scale;
        mpz_sqrt(sqrt_pi_w.get_mpz_t(), t.get_mpz_t());
    }

    long exp10 = static_cast<long>(std::floor(log_abs() / std::log(10.0)));
    const BigInt lo = ten_pow(digits - 1);
    const BigInt hi = ten_pow(digits);

    for (int attempt = 0; attempt < 4; ++attempt) {
        long s = digits - 1 - exp10;
        BigInt nu = abs(coeff_.get_num());
        if (q > 0)
            nu *= pow_int(pi_w, q);
        if (r != 0)
            nu *= sqrt_pi_w;
        BigInt de = coeff_.get_den() * pow_int(scale, q + r);
        if (s >= 0)
            nu *= ten_pow(s);
        else
            de *= ten_pow(-s);
        BigInt mantissa = (2 * nu + de) / (2 * de);

        if (mantissa >= hi) {
            if (mantissa == hi) {
                mantissa = lo;
                ++exp10;
            } else {
                ++exp10;
                continue;
            }
        } else if (mantissa < lo) {
            --exp10;
            continue;
        }
        std::string m = mantissa.get_str();
        std::string out = render_mantissa(m, exp10, digits);
        return sign() < 0 ? "-" + out : out;
    }
    throw std::logic_error("to_decimal: exponent bracket failed to converge");
}

std::string to_decimal(const PiRational& x, int digits) {
    return x.to_decimal(digits);
}

BigInt scaled_round(const PiRational& x, long pow10) {
    if (x.is_zero())
        return 0;
    const int guard = 10;
    const long working = pow10 + guard;
    const BigInt scale = ten_pow(working);
    const BigInt pi_w = pi_scaled(static_cast<int>(working));
    const long q = x.pi_half_pow() / 2;
    const long r = x.pi_half_pow() % 2;

    BigInt nu = abs(x.coeff().get_num()) * ten_pow(working);
    if (q > 0)
        nu *= pow_int(pi_w, q);
    if (r != 0) {
        BigInt t = pi_w * scale;
        BigInt root;
        mpz_sqrt(root.get_mpz_t(), t.get_mpz_t());
        nu *= root;
    }
    BigInt de = x.coeff().get_den() * pow_int(scale, q + r);
    de *= ten_pow(guard);
    BigInt out = (2 * nu + de) / (2 * de);
    return x.sign() < 0 ? BigInt(-out) : out;
}

std::string decimal_from_scaled(BigInt scaled, long pow10, int digits) {
    if (digits < 1)
        throw std::invalid_argument("decimal_from_scaled: digits must be >= 1");
    if (scaled == 0)
        return "0";
    const bool negative = scaled < 0;
    BigInt a = abs(scaled);
    const std::string astr = a.get_str();
    const long len = static_cast<long>(astr.size());
    long exp10 = len - 1 - pow10;

    BigInt mantissa;
    if (len > digits) {
        BigInt divisor = ten_pow(len - digits);
        mantissa = (2 * a + divisor) / (2 * divisor);
        if (mantissa == ten_pow(digits)) {
            mantissa = ten_pow(digits - 1);
            ++exp10;
        }
    } else {
        mantissa = a * ten_pow(digits - len);
    }
    std::string out = render_mantissa(mantissa.get_str(), exp10, digits);
    return negative ? "-" + out : out;
}

PiRational gamma_half(HalfInteger x) {
    long t = x.twice_value();
    if (t < 1)
        throw std::invalid_argument("gamma_half: argument must be a positive half-integer");
    BigRat acc(1);
    while (t > 2) {
        t -= 2;
        BigRat f(t, 2);
        f.canonicalize();
        acc *= f;
    }
    if (t == 1)
        return PiRational(acc, 1);
    return PiRational(acc, 0);
}

BigInt barnes_g(long argument) {
    if (argument < 1)
        throw std::invalid_argument("barnes_g: argument must be >= 1");
    BigInt result = 1;
    BigInt fact = 1;
    for (long j = 1; j <= argument - 2; ++j) {
        fact *= j;
        result *= fact;
    }
    return result;
}

BigInt double_factorial(long n) {
    if (n < -1)
        throw std::invalid_argument("double_factorial: argument must be >= -1");
    BigInt result = 1;
    for (long k = n; k >= 2; k -= 2)
        result *= k;
    return result;
}

BigInt factorial(long n) {
    if (n < 0)
        throw std::invalid_argument("factorial: argument must be >= 0");
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

} // namespace rankprob::exact
