#include "rankprob/prob.hpp"

#include <cassert>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rankprob::prob {

using exact::BigInt;
using exact::BigRat;
using exact::HalfInteger;
using exact::PiRational;

namespace {

BigInt pow_int(long base, unsigned long e) {
    BigInt r;
    BigInt b(base);
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

BigInt pow2(unsigned long e) {
    BigInt r = 1;
    mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), e);
    return r;
}

void require_n(int n, int min, const char* who) {
    if (n < min)
        throw std::invalid_argument(std::string(who) + ": n must be >= " + std::to_string(min));
}

} // namespace

const char* route_name(Route route) {
    switch (route) {
    case Route::Direct: return "direct";
    case Route::Explicit: return "explicit";
    case Route::GenFunc: return "genfunc";
    case Route::Recursion: return "recursion";
    }
    return "unknown";
}

exact::PiRational p_rank_direct(int n) {
    require_n(n, 1, "p_rank_direct");
    PiRational gamma = exact::gamma_half(HalfInteger(n + 1));
    PiRational barnes(BigRat(exact::barnes_g(n + 1)), 0);
    return gamma.pow(static_cast<unsigned long>(n)) / barnes;
}

exact::PiRational p_rank_explicit(int n) {
    require_n(n, 2, "p_rank_explicit");
    if (n % 2 == 0) {
        BigInt num = 1;
        for (long b = n - 1; b >= 3; b -= 2)
            num *= pow_int(b, static_cast<unsigned long>(b));
        BigInt den = pow2(static_cast<unsigned long>(n) * n / 2);
        unsigned long e = 2;
        for (long b = n - 2; b >= 2; b -= 2, e += 2)
            den *= pow_int(b, e);
        return PiRational(BigRat(num, den), n);
    }
    BigInt num = 1;
    for (long b = n - 1; b >= 2; b -= 2)
        num *= pow_int(b, static_cast<unsigned long>(b));
    BigInt den = pow2(static_cast<unsigned long>(n) * (n - 1) / 2);
    unsigned long e = 2;
    for (long b = n - 2; b >= 3; b -= 2, e += 2)
        den *= pow_int(b, e);
    return PiRational(BigRat(num, den), 0);
}

exact::PiRational p_rank_genfunc(int n) {
    require_n(n, 2, "p_rank_genfunc");

    PiRational gamma_pow = exact::gamma_half(HalfInteger(n + 1)).pow(static_cast<unsigned long>(n));
    PiRational gamma_sq_prod(1);
    for (int j = 1; j <= n; ++j) {
        PiRational g = exact::gamma_half(HalfInteger(j));
        gamma_sq_prod = gamma_sq_prod * g * g;
    }

    if (n % 2 == 0) {
        const long sign_num = static_cast<long>(n) * (n - 2);
        // The sign exponent must be a whole number for every even N; a
        // fractional value here means the parity split was transcribed wrong.
        assert(sign_num % 8 == 0);
        const int sign = (sign_num / 8) % 2 == 0 ? 1 : -1;

        PiRational two_pi_pow(BigRat(pow2(static_cast<unsigned long>(n) / 2)), n);
        BigInt alpha_den = 1;
        for (long l = 0; l <= (n - 2) / 2; ++l)
            alpha_den *= (n - 1 - 4 * l);
        PiRational alpha_prod(BigRat(BigInt(sign), alpha_den), 0);

        PiRational numerator = two_pi_pow * gamma_pow * alpha_prod;
        PiRational denominator =
            PiRational(BigRat(pow2(static_cast<unsigned long>(n) * (n - 1) / 2)), 0) * gamma_sq_prod;
        return numerator / denominator;
    }

    const long sign_num = static_cast<long>(n - 1) * (n - 3);
    assert(sign_num % 8 == 0);
    const int sign = (sign_num / 8) % 2 == 0 ? 1 : -1;

    PiRational two_pi_pow(BigRat(pow2(static_cast<unsigned long>(n + 1) / 2)), n + 1);
    // Boundary split at ceil((N-1)/4); the two subcases N = 3,7,11,... and
    // N = 5,9,13,... fall out of the same bounds.
    const long split = (n + 2) / 4;
    BigInt alpha_den = 1;
    for (long l = 0; l <= split - 1; ++l)
        alpha_den *= (n - 1 - 4 * l);
    for (long l = split; l <= (n - 3) / 2; ++l)
        alpha_den *= (n - 3 - 4 * l);
    PiRational alpha_prod(BigRat(BigInt(sign), alpha_den), 0);

    PiRational numerator = two_pi_pow * gamma_pow * alpha_prod;
    PiRational denominator =
        PiRational(BigRat(pow2(static_cast<unsigned long>(n) * (n - 1) / 2 + 1)), 0) * gamma_sq_prod;
    return numerator / denominator;
}

exact::PiRational recursion_step1(int n, const exact::PiRational& p_n) {
    require_n(n, 1, "recursion_step1");
    PiRational g_top = exact::gamma_half(HalfInteger(n + 2)); // Gamma(n/2 + 1)
    PiRational g_bot = exact::gamma_half(HalfInteger(n + 1)); // Gamma((n+1)/2)
    PiRational gamma_int(BigRat(exact::factorial(n)), 0);     // Gamma(n+1)
    return (p_n * g_top.pow(static_cast<unsigned long>(n) + 1)) /
           (g_bot.pow(static_cast<unsigned long>(n)) * gamma_int);
}

exact::PiRational recursion_step2(int n, const exact::PiRational& p_n) {
    require_n(n, 1, "recursion_step2");
    BigInt num = pow_int(n + 1, static_cast<unsigned long>(n) + 1);
    BigInt dfact = exact::double_factorial(n);
    BigInt den = pow2(2 * static_cast<unsigned long>(n) + 1) * dfact * dfact;
    if (n % 2 == 0)
        return p_n * PiRational(BigRat(num, den * 2), 2); // extra pi/2
    return p_n * PiRational(BigRat(num, den), 0);
}

exact::PiRational p_rank_recursive(int n) {
    require_n(n, 1, "p_rank_recursive");
    if (n == 1)
        return PiRational(1);
    PiRational p(BigRat(1, 4), 2); // P_2 = pi/4
    for (int k = 2; k < n; ++k)
        p = recursion_step1(k, p);
    return p;
}

exact::PiRational p_rank(int n, Route route) {
    switch (route) {
    case Route::Direct: return p_rank_direct(n);
    case Route::Explicit: return p_rank_explicit(n);
    case Route::GenFunc: return p_rank_genfunc(n);
    case Route::Recursion: return p_rank_recursive(n);
    }
    throw std::invalid_argument("p_rank: unknown route");
}

RankProbability rank_probability(int n, Route route) {
    return RankProbability{n, p_rank(n, route), route};
}

std::optional<exact::PiRational> RankProbability::complement_exact() const {
    if (!p_rank_n.is_rational())
        return std::nullopt;
    return PiRational(BigRat(1) - p_rank_n.coeff(), 0);
}

std::string RankProbability::complement_string() const {
    if (auto c = complement_exact())
        return c->to_string();
    return "1 - " + p_rank_n.to_string();
}

std::string RankProbability::complement_decimal(int digits) const {
    const long pow10 = digits + 10;
    BigInt one;
    mpz_ui_pow_ui(one.get_mpz_t(), 10, static_cast<unsigned long>(pow10));
    BigInt scaled = one - exact::scaled_round(p_rank_n, pow10);
    return exact::decimal_from_scaled(scaled, pow10, digits);
}

AsymptoticEstimate log_p_asymptotic(int n) {
    require_n(n, 2, "log_p_asymptotic");
    AsymptoticEstimate est;
    est.n = n;
    est.glaisher_A = kGlaisherA;
    est.zeta_prime_minus1 = 1.0 / 12.0 - std::log(kGlaisherA);
    const double log_e_over_4 = 1.0 - 2.0 * std::numbers::ln2;
    const double nn = static_cast<double>(n);
    est.log_p = nn * nn / 4.0 * log_e_over_4 + (std::log(nn) - 1.0) / 12.0 - est.zeta_prime_minus1;
    return est;
}

double log_p_asymptotic_product_form(int n) {
    require_n(n, 2, "log_p_asymptotic_product_form");
    const double log_e_over_4 = 1.0 - 2.0 * std::numbers::ln2;
    const double nn = static_cast<double>(n);
    return std::log(nn) / 12.0 + nn * nn / 4.0 * log_e_over_4 + std::log(kGlaisherA) - 1.0 / 6.0;
}

double ratio_asymptotic(int n) {
    require_n(n, 2, "ratio_asymptotic");
    const double log_e_over_4 = 1.0 - 2.0 * std::numbers::ln2;
    return std::exp((2.0 * n + 1.0) / 4.0 * log_e_over_4);
}

double log_p_exact(int n) {
    return p_rank_direct(n).log_abs();
}

std::vector<TableRow> probability_table(int n_max, int digits) {
    require_n(n_max, 1, "probability_table");
    if (digits < 1)
        throw std::invalid_argument("probability_table: digits must be >= 1");
    std::vector<TableRow> rows;
    rows.reserve(static_cast<std::size_t>(n_max));
    for (int n = 1; n <= n_max; ++n) {
        PiRational p = p_rank_direct(n);
        rows.push_back(TableRow{n, p.to_factored_string(), p.to_decimal(digits)});
    }
    return rows;
}

} // namespace rankprob::prob
