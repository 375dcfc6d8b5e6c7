#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rankprob/exact.hpp"

namespace rankprob::prob {

/// The four independent exact routes to P_N.  They must agree to the bit;
/// the cross-route equality suite is the main defense against transcription
/// slips in any one formula.
enum class Route { Direct, Explicit, GenFunc, Recursion };

const char* route_name(Route route);

/// P_N = Gamma((N+1)/2)^N / G(N+1).
exact::PiRational p_rank_direct(int n);

/// The explicit even/odd product forms (empty products make the even form
/// valid from N = 2).
exact::PiRational p_rank_explicit(int n);

/// The degree-N coefficient of the generating function: prefactor times the
/// signed alpha products, with the ceiling-split boundaries taken literally.
exact::PiRational p_rank_genfunc(int n);

/// Builds up from P_1 = 1 and P_2 = pi/4 by the gamma-ratio step recursion.
exact::PiRational p_rank_recursive(int n);

exact::PiRational p_rank(int n, Route route);

/// P_{n+1} from P_n via the gamma-ratio recursion.
exact::PiRational recursion_step1(int n, const exact::PiRational& p_n);

/// P_{n+2} from P_n via the double-factorial step-2 forms; kept as an
/// independent consistency path.
exact::PiRational recursion_step2(int n, const exact::PiRational& p_n);

struct RankProbability {
    int n = 0;
    exact::PiRational p_rank_n;
    Route route = Route::Direct;

    /// 1 - P_n, exactly representable only when P_n carries no pi factor
    /// (odd n).  For even n the complement is transcendental and is reported
    /// symbolically / numerically instead.
    std::optional<exact::PiRational> complement_exact() const;
    std::string complement_string() const;
    std::string complement_decimal(int digits) const;
};

RankProbability rank_probability(int n, Route route = Route::Direct);

inline constexpr double kGlaisherA = 1.28242712910062263687534256887;

struct AsymptoticEstimate {
    int n = 0;
    double log_p = 0.0;              ///< three-term log expansion
    double glaisher_A = kGlaisherA;
    double zeta_prime_minus1 = 0.0;  ///< 1/12 - ln(glaisher_A)
};

AsymptoticEstimate log_p_asymptotic(int n);

/// log of the equivalent product form N^(1/12) (e/4)^(N^2/4) A e^(-1/6);
/// agrees with the three-term expansion up to floating round-off.
double log_p_asymptotic_product_form(int n);

/// Leading asymptotic ratio P_{n+1}/P_n = (e/4)^((2n+1)/4).
double ratio_asymptotic(int n);

/// Numeric natural log of the exact P_n; robust far below double range.
double log_p_exact(int n);

struct TableRow {
    int n = 0;
    std::string exact_form;
    std::string decimal;
};

/// Exact factored form plus decimal value for n = 1..n_max.
std::vector<TableRow> probability_table(int n_max, int digits);

} // namespace rankprob::prob
