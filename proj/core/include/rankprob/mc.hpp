#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include "rankprob/linalg.hpp"

namespace rankprob::mc {

inline constexpr double kDefaultTol = 1e-10;

/// Name of the uniform generator behind every trial, echoed in output
/// metadata so results are reproducible from any line of output.
const char* generator_name();

/// Tallies of real-eigenvalue counts k over seeded trials.  Ambiguous trials
/// (a 2x2 block inside the discriminant dead band) and degenerate ones (both
/// slices ill-conditioned, or no QR convergence) are counted separately and
/// excluded from frequencies, never resampled.
struct EmpiricalKDistribution {
    int n = 0;
    long trials = 0;
    std::map<int, long> counts;
    long ambiguous = 0;
    long degenerate = 0;
    std::uint64_t seed = 0;
    double tol = kDefaultTol;

    long tallied() const;
    long effective_trials() const { return trials - ambiguous - degenerate; }
    double frequency(int k) const;
};

struct TestReport {
    int n = 0;
    double p_hat = 0.0;
    double p_exact = 0.0;
    double z_score = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 1.0;
    long trials = 0;
    long ambiguous = 0;
    long degenerate = 0;
    std::uint64_t seed = 0;
    double tol = kDefaultTol;
};

struct MomentReport {
    double mean = 0.0;
    double variance = 0.0;
    /// Standardized third moment; near zero when the k-distribution has
    /// settled into its Gaussian bulk shape.
    double skewness = 0.0;
};

/// Real-eigenvalue counts of the pencil (t1, t2) over `trials` Gaussian
/// pairs.  Trial i always runs on stream i, so the result is a pure function
/// of (n, trials, seed, tol) for any worker count.  workers <= 0 picks the
/// hardware concurrency.
EmpiricalKDistribution run_trials(int n, long trials, std::uint64_t seed,
                                  double tol = kDefaultTol, int workers = 0);

/// Same harness over single Gaussian matrices instead of pencils.
EmpiricalKDistribution run_ginibre_trials(int n, long trials, std::uint64_t seed,
                                          double tol = kDefaultTol, int workers = 0);

/// Tests the all-real frequency (k = n) against the exact P_n.
TestReport estimate_rank_probability(int n, long trials, std::uint64_t seed,
                                     double tol = kDefaultTol, int workers = 0);

/// Tests the single-matrix all-real frequency against 2^(-n(n-1)/4).
TestReport ginibre_all_real_check(int n, long trials, std::uint64_t seed,
                                  double tol = kDefaultTol, int workers = 0);

MomentReport moment_report(const EmpiricalKDistribution& dist);

/// z-score of p_hat against p under the null binomial SE; exact endpoints
/// (p of 0 or 1) give 0 on agreement and infinity otherwise.
double z_score(double p_hat, double p_exact, long effective_trials);

/// Wilson 95% interval for a binomial proportion.
std::pair<double, double> wilson_interval(double p_hat, long effective_trials);

/// CSV with columns n,k,tally,trials,seed,tol (one row per tallied k) and
/// metadata comment lines for the generator and excluded-trial counts.
std::string to_csv(const EmpiricalKDistribution& dist);

/// CSV with columns n,p_hat,p_exact,z,ci_lo,ci_hi,trials.
std::string to_csv(const TestReport& report);

} // namespace rankprob::mc
