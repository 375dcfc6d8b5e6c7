#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "rankprob/exact.hpp"

using namespace rankprob;
using exact::BigInt;
using exact::BigRat;
using exact::HalfInteger;
using exact::PiRational;

namespace {

PiRational pr(long num, long den, long h = 0) {
    return PiRational(BigRat(num, den), h);
}

} // namespace

TEST_SUITE("exact") {

TEST_CASE("canonical form") {
    PiRational a(BigRat(4, 8), 3);
    CHECK(a.coeff() == BigRat(1, 2));
    CHECK(a.pi_half_pow() == 3);

    PiRational negden(BigInt(3), BigInt(-6), 1);
    CHECK(negden.coeff() == BigRat(-1, 2));
    CHECK(negden.coeff().get_den() == 2);

    PiRational zero(BigRat(0), 7);
    CHECK(zero.is_zero());
    CHECK(zero.pi_half_pow() == 0);
    CHECK(zero == PiRational());

    CHECK_THROWS_AS(PiRational(BigRat(1), -1), NegativePiPowerError);
    CHECK_THROWS_AS(PiRational(BigInt(1), BigInt(0)), DivisionByZeroError);
}

TEST_CASE("multiply, divide, power") {
    // sqrt(pi) * sqrt(pi) = pi
    CHECK(PiRational::sqrt_pi() * PiRational::sqrt_pi() == PiRational::pi_power(1));
    // (3/4 sqrt(pi))^2 = 9/16 pi
    CHECK(pr(3, 4, 1).pow(2) == pr(9, 16, 2));
    // (27/1024 pi^2) / (1/4 pi) = 27/256 pi
    CHECK(pr(27, 1024, 4) / pr(1, 4, 2) == pr(27, 256, 2));

    CHECK_THROWS_AS(pr(1, 2) / PiRational(), DivisionByZeroError);
    CHECK_THROWS_AS(pr(1, 2, 0) / pr(1, 1, 1), NegativePiPowerError);
    // zero dividend never needs a pi denominator
    CHECK(PiRational() / pr(1, 1, 4) == PiRational());

    CHECK(pr(-2, 3, 2).pow(3) == pr(-8, 27, 6));
    CHECK(pr(5, 7, 3).pow(0) == PiRational(1));
    CHECK(-pr(1, 4, 2) == pr(-1, 4, 2));
}

TEST_CASE("equality is structural") {
    CHECK(pr(1, 2, 0) != pr(1, 2, 1));
    CHECK(pr(1, 2, 2) == pr(2, 4, 2));
}

TEST_CASE("gamma at half-integers") {
    CHECK(exact::gamma_half(HalfInteger(1)) == pr(1, 1, 1));  // Gamma(1/2) = sqrt(pi)
    CHECK(exact::gamma_half(HalfInteger(2)) == PiRational(1)); // Gamma(1) = 1
    CHECK(exact::gamma_half(HalfInteger(5)) == pr(3, 4, 1));  // Gamma(5/2) = 3/4 sqrt(pi)
    CHECK(exact::gamma_half(HalfInteger(8)) == PiRational(6)); // Gamma(4) = 3!
    CHECK_THROWS(exact::gamma_half(HalfInteger(0)));
}

TEST_CASE("gamma recurrence Gamma(x+1) = x Gamma(x), x = 1/2 .. 100") {
    for (long t = 1; t <= 200; ++t) {
        PiRational x(BigRat(t, 2), 0);
        CHECK(exact::gamma_half(HalfInteger(t + 2)) == x * exact::gamma_half(HalfInteger(t)));
    }
}

TEST_CASE("duplication identity Gamma(j/2) Gamma((j+1)/2) = 2^(1-j) sqrt(pi) (j-1)!") {
    for (long j = 1; j <= 100; ++j) {
        PiRational lhs = exact::gamma_half(HalfInteger(j)) * exact::gamma_half(HalfInteger(j + 1));
        BigInt two_pow;
        mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, static_cast<unsigned long>(j - 1));
        PiRational rhs(BigRat(exact::factorial(j - 1), two_pow), 1);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("Barnes G at small arguments") {
    CHECK(exact::barnes_g(1) == 1);
    CHECK(exact::barnes_g(2) == 1);
    CHECK(exact::barnes_g(3) == 1);
    CHECK(exact::barnes_g(4) == 2);  // 2! 1!
    CHECK(exact::barnes_g(5) == 12); // 3! 2! 1!
    CHECK_THROWS(exact::barnes_g(0));
}

TEST_CASE("Barnes G recursion G(N+1) = G(N) (N-1)!") {
    for (long n = 2; n <= 60; ++n)
        CHECK(exact::barnes_g(n + 1) == exact::barnes_g(n) * exact::factorial(n - 1));
}

TEST_CASE("double factorial") {
    CHECK(exact::double_factorial(-1) == 1);
    CHECK(exact::double_factorial(0) == 1);
    CHECK(exact::double_factorial(1) == 1);
    CHECK(exact::double_factorial(5) == 15);
    CHECK(exact::double_factorial(6) == 48);
    CHECK(exact::double_factorial(10) == 3840);
    CHECK_THROWS(exact::double_factorial(-2));
}

TEST_CASE("internal pi constant") {
    // pi * 10^30, correctly rounded
    CHECK(exact::pi_scaled(30) == BigInt("3141592653589793238462643383280"));
    CHECK(exact::pi_scaled(1) == 31);
}

TEST_CASE("to_decimal pinned values") {
    CHECK(pr(1, 4, 2).to_decimal(10) == "0.7853981634"); // pi/4
    CHECK(pr(1, 2, 0).to_decimal(5) == "0.50000");
    // 27 pi^2 / 1024 = 0.26023370979...; six significant digits
    CHECK(pr(27, 1024, 4).to_decimal(6) == "0.260234");
    CHECK(PiRational(1).to_decimal(3) == "1.00");
    CHECK(PiRational().to_decimal(7) == "0");
    CHECK(pr(-1, 4, 2).to_decimal(4) == "-0.7854");
    CHECK(pr(1, 1, 1).to_decimal(8) == "1.7724539"); // sqrt(pi)
    CHECK(pr(1, 1000000, 0).to_decimal(3) == "1.00e-06");
    CHECK(PiRational(12345).to_decimal(3) == "1.23e+04");
    CHECK_THROWS(pr(1, 2).to_decimal(0));
}

TEST_CASE("to_decimal is monotone in digits") {
    const PiRational values[] = {pr(1, 4, 2), pr(27, 1024, 4), pr(355, 113, 0),
                                 pr(1, 3, 5),  pr(-7, 11, 3),  pr(1, 999983, 2)};
    for (const auto& v : values) {
        for (int d = 3; d <= 15; ++d) {
            const double lo = std::strtod(v.to_decimal(d).c_str(), nullptr);
            const double hi = std::strtod(v.to_decimal(d + 5).c_str(), nullptr);
            const double mag = std::fabs(hi);
            // agreement up to final-digit rounding of the d-digit form
            CHECK(std::fabs(lo - hi) <= 0.51 * mag * std::pow(10.0, 1.0 - d));
        }
    }
}

TEST_CASE("string renderings") {
    CHECK(pr(1, 4, 2).to_string() == "π/4");
    CHECK(pr(1, 2, 0).to_string() == "1/2");
    CHECK(pr(27, 1024, 4).to_string() == "27·π^2/1024");
    CHECK(pr(3, 4, 1).to_string() == "3·√π/4");
    CHECK(pr(-1, 4, 2).to_string() == "-π/4");
    CHECK(PiRational().to_string() == "0");
    CHECK(PiRational(1).to_string() == "1");

    CHECK(pr(27, 1024, 4).to_factored_string() == "3^3·π^2/2^10");
    CHECK(pr(9, 800, 0).to_factored_string() == "3^2/(5^2·2^5)");
    CHECK(PiRational(1).to_factored_string() == "1");
    CHECK(pr(1, 9, 0).to_factored_string() == "1/3^2");
}

TEST_CASE("scaled rounding helpers") {
    CHECK(exact::scaled_round(pr(1, 4, 2), 6) == 785398);
    CHECK(exact::scaled_round(pr(-1, 4, 2), 6) == -785398);
    CHECK(exact::scaled_round(PiRational(), 6) == 0);
    CHECK(exact::decimal_from_scaled(BigInt(785398), 6, 4) == "0.7854");
    CHECK(exact::decimal_from_scaled(BigInt(999996), 6, 4) == "1.000");
    CHECK(exact::decimal_from_scaled(BigInt(-50), 3, 2) == "-0.050");
}

} // TEST_SUITE
