#include "rankprob/mc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <stdexcept>
#include <thread>
#include <vector>

#include "rankprob/prob.hpp"

namespace rankprob::mc {

const char* generator_name() {
    return rng::RngState::kGeneratorName;
}

long EmpiricalKDistribution::tallied() const {
    long s = 0;
    for (const auto& [k, c] : counts)
        s += c;
    return s;
}

double EmpiricalKDistribution::frequency(int k) const {
    const long eff = effective_trials();
    if (eff <= 0)
        return 0.0;
    auto it = counts.find(k);
    return it == counts.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(eff);
}

namespace {

struct LocalTally {
    std::map<int, long> counts;
    long ambiguous = 0;
    long degenerate = 0;
};

/// One classified trial; returns the real count or records the exclusion.
template <typename TrialFn>
void tally_range(int n, long lo, long hi, std::uint64_t seed, double tol, TrialFn&& trial,
                 LocalTally& out) {
    for (long i = lo; i < hi; ++i) {
        rng::RngState stream(seed, static_cast<std::uint64_t>(i));
        try {
            linalg::EigenClassification ec = trial(n, stream, tol);
            if (ec.ambiguous_blocks > 0)
                ++out.ambiguous;
            else
                ++out.counts[ec.real_count];
        } catch (const DegeneratePencilError&) {
            ++out.degenerate;
        } catch (const NoConvergenceError&) {
            ++out.degenerate;
        }
    }
}

template <typename TrialFn>
EmpiricalKDistribution run_harness(int n, long trials, std::uint64_t seed, double tol,
                                   int workers, TrialFn&& trial) {
    if (n < 1)
        throw std::invalid_argument("run_trials: n must be >= 1");
    if (trials < 1)
        throw std::invalid_argument("run_trials: trials must be >= 1");
    if (tol <= 0.0)
        throw std::invalid_argument("run_trials: tol must be positive");

    int nworkers = workers;
    if (nworkers <= 0)
        nworkers = static_cast<int>(std::thread::hardware_concurrency());
    nworkers = std::clamp<long>(nworkers, 1, trials);

    std::vector<LocalTally> locals(static_cast<std::size_t>(nworkers));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nworkers));
    for (int w = 0; w < nworkers; ++w) {
        const long lo = trials * w / nworkers;
        const long hi = trials * (w + 1) / nworkers;
        pool.emplace_back([&, w, lo, hi] { tally_range(n, lo, hi, seed, tol, trial, locals[static_cast<std::size_t>(w)]); });
    }
    for (auto& t : pool)
        t.join();

    EmpiricalKDistribution dist;
    dist.n = n;
    dist.trials = trials;
    dist.seed = seed;
    dist.tol = tol;
    for (const auto& local : locals) {
        dist.ambiguous += local.ambiguous;
        dist.degenerate += local.degenerate;
        for (const auto& [k, c] : local.counts)
            dist.counts[k] += c;
    }
    return dist;
}

linalg::EigenClassification pencil_trial(int n, rng::RngState& stream, double tol) {
    linalg::Matrix t1 = linalg::sample_gaussian_matrix(n, stream);
    linalg::Matrix t2 = linalg::sample_gaussian_matrix(n, stream);
    return linalg::real_generalized_eigencount(t1, t2, tol);
}

linalg::EigenClassification ginibre_trial(int n, rng::RngState& stream, double tol) {
    linalg::Matrix a = linalg::sample_gaussian_matrix(n, stream);
    return linalg::real_schur_eigen(a, tol);
}

TestReport report_from(const EmpiricalKDistribution& dist, double p_exact) {
    TestReport r;
    r.n = dist.n;
    r.trials = dist.trials;
    r.ambiguous = dist.ambiguous;
    r.degenerate = dist.degenerate;
    r.seed = dist.seed;
    r.tol = dist.tol;
    r.p_exact = p_exact;
    r.p_hat = dist.frequency(dist.n);
    r.z_score = z_score(r.p_hat, p_exact, dist.effective_trials());
    std::tie(r.ci_lo, r.ci_hi) = wilson_interval(r.p_hat, dist.effective_trials());
    return r;
}

} // namespace

EmpiricalKDistribution run_trials(int n, long trials, std::uint64_t seed, double tol, int workers) {
    return run_harness(n, trials, seed, tol, workers, pencil_trial);
}

EmpiricalKDistribution run_ginibre_trials(int n, long trials, std::uint64_t seed, double tol,
                                          int workers) {
    return run_harness(n, trials, seed, tol, workers, ginibre_trial);
}

TestReport estimate_rank_probability(int n, long trials, std::uint64_t seed, double tol,
                                     int workers) {
    EmpiricalKDistribution dist = run_trials(n, trials, seed, tol, workers);
    return report_from(dist, prob::p_rank_direct(n).to_double());
}

TestReport ginibre_all_real_check(int n, long trials, std::uint64_t seed, double tol,
                                  int workers) {
    EmpiricalKDistribution dist = run_ginibre_trials(n, trials, seed, tol, workers);
    const double p_exact = std::exp2(-static_cast<double>(n) * (n - 1) / 4.0);
    return report_from(dist, p_exact);
}

MomentReport moment_report(const EmpiricalKDistribution& dist) {
    MomentReport r;
    const long eff = dist.effective_trials();
    if (eff <= 0)
        return r;
    double mean = 0.0;
    for (const auto& [k, c] : dist.counts)
        mean += static_cast<double>(k) * static_cast<double>(c);
    mean /= static_cast<double>(eff);
    double m2 = 0.0, m3 = 0.0;
    for (const auto& [k, c] : dist.counts) {
        const double d = static_cast<double>(k) - mean;
        m2 += d * d * static_cast<double>(c);
        m3 += d * d * d * static_cast<double>(c);
    }
    m2 /= static_cast<double>(eff);
    m3 /= static_cast<double>(eff);
    r.mean = mean;
    r.variance = m2;
    r.skewness = (m2 > 0.0) ? m3 / std::pow(m2, 1.5) : 0.0;
    return r;
}

double z_score(double p_hat, double p_exact, long effective_trials) {
    if (effective_trials <= 0)
        return std::numeric_limits<double>::infinity();
    const double se2 = p_exact * (1.0 - p_exact) / static_cast<double>(effective_trials);
    if (se2 <= 0.0)
        return p_hat == p_exact ? 0.0 : std::numeric_limits<double>::infinity();
    return (p_hat - p_exact) / std::sqrt(se2);
}

std::pair<double, double> wilson_interval(double p_hat, long effective_trials) {
    if (effective_trials <= 0)
        return {0.0, 1.0};
    const double z = 1.959963984540054; // 97.5% normal quantile
    const double nn = static_cast<double>(effective_trials);
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double center = (p_hat + z2 / (2.0 * nn)) / denom;
    const double half =
        z * std::sqrt(p_hat * (1.0 - p_hat) / nn + z2 / (4.0 * nn * nn)) / denom;
    return {center - half, center + half};
}

namespace {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

} // namespace

std::string to_csv(const EmpiricalKDistribution& dist) {
    std::string out;
    out += "# generator=";
    out += generator_name();
    out += "\n# ambiguous=" + std::to_string(dist.ambiguous) +
           " degenerate=" + std::to_string(dist.degenerate) + "\n";
    out += "n,k,tally,trials,seed,tol\n";
    for (const auto& [k, c] : dist.counts) {
        out += std::to_string(dist.n) + "," + std::to_string(k) + "," + std::to_string(c) + "," +
               std::to_string(dist.trials) + "," + std::to_string(dist.seed) + "," +
               format_double(dist.tol) + "\n";
    }
    return out;
}

std::string to_csv(const TestReport& report) {
    std::string out;
    out += "# generator=";
    out += generator_name();
    out += " seed=" + std::to_string(report.seed) + " tol=" + format_double(report.tol) +
           " ambiguous=" + std::to_string(report.ambiguous) +
           " degenerate=" + std::to_string(report.degenerate) + "\n";
    out += "n,p_hat,p_exact,z,ci_lo,ci_hi,trials\n";
    out += std::to_string(report.n) + "," + format_double(report.p_hat) + "," +
           format_double(report.p_exact) + "," + format_double(report.z_score) + "," +
           format_double(report.ci_lo) + "," + format_double(report.ci_hi) + "," +
           std::to_string(report.trials) + "\n";
    return out;
}

} // namespace rankprob::mc
