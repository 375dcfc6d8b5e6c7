#include <doctest.h>

#include <cmath>

#include "rankprob/mc.hpp"
#include "rankprob/prob.hpp"

using namespace rankprob;

TEST_SUITE("mc") {

TEST_CASE("reproducibility across runs and worker counts") {
    auto a = mc::run_trials(3, 4000, 99, 1e-10, 1);
    auto b = mc::run_trials(3, 4000, 99, 1e-10, 1);
    auto c = mc::run_trials(3, 4000, 99, 1e-10, 3);
    CHECK(a.counts == b.counts);
    CHECK(a.counts == c.counts);
    CHECK(a.ambiguous == c.ambiguous);
    CHECK(a.degenerate == c.degenerate);
    CHECK(mc::to_csv(a) == mc::to_csv(c));

    auto d = mc::run_trials(3, 4000, 100, 1e-10, 1);
    CHECK(a.counts != d.counts);
}

TEST_CASE("tally bookkeeping invariants") {
    auto dist = mc::run_trials(4, 3000, 7, 1e-10);
    CHECK(dist.tallied() + dist.ambiguous + dist.degenerate == dist.trials);
    for (const auto& [k, c] : dist.counts) {
        CHECK(k >= 0);
        CHECK(k <= dist.n);
        CHECK(k % 2 == dist.n % 2);
        CHECK(c > 0);
    }
}

TEST_CASE("report is consistent with the tallies") {
    const std::uint64_t seed = 31;
    auto dist = mc::run_trials(3, 5000, seed, 1e-10);
    auto rep = mc::estimate_rank_probability(3, 5000, seed, 1e-10);
    CHECK(rep.p_hat == doctest::Approx(dist.frequency(3)).epsilon(1e-15));
    CHECK(rep.ci_lo <= rep.p_hat);
    CHECK(rep.p_hat <= rep.ci_hi);
    CHECK(rep.trials == 5000);
}

TEST_CASE("n = 1 pencils always have one real root") {
    auto rep = mc::estimate_rank_probability(1, 1000, 5, 1e-10);
    CHECK(rep.p_hat == 1.0);
    CHECK(rep.p_exact == 1.0);
    CHECK(rep.z_score == 0.0);
}

TEST_CASE("moderate-trial z-scores against the exact engine") {
    // 20k trials: loose 4-sigma gates, seeds pinned
    for (int n : {2, 3, 4}) {
        auto rep = mc::estimate_rank_probability(n, 20000, 4242, 1e-10);
        CHECK(std::fabs(rep.z_score) < 4.0);
        CHECK(rep.ambiguous + rep.degenerate <= rep.trials / 500);
    }
}

TEST_CASE("exclusion budget stays under 0.1% through n = 10") {
    for (int n : {8, 10}) {
        auto dist = mc::run_trials(n, 20000, 606, 1e-10);
        CHECK((dist.ambiguous + dist.degenerate) * 1000 <= dist.trials);
    }
}

TEST_CASE("k-distribution is roughly symmetric at moderate n") {
    auto dist = mc::run_trials(30, 4000, 19, 1e-10);
    auto m = mc::moment_report(dist);
    CHECK(std::fabs(m.skewness) < 0.6);
    CHECK(m.mean > 0.0);
    CHECK(m.variance > 0.0);
}

TEST_CASE("two-point distribution identity at n = 2") {
    auto dist = mc::run_trials(2, 10000, 11, 1e-10);
    auto m = mc::moment_report(dist);
    CHECK(m.mean == doctest::Approx(2.0 * dist.frequency(2)).epsilon(1e-12));
}

TEST_CASE("ginibre all-real check") {
    auto one = mc::ginibre_all_real_check(1, 500, 3, 1e-10);
    CHECK(one.p_hat == 1.0);
    CHECK(one.p_exact == 1.0);

    auto two = mc::ginibre_all_real_check(2, 20000, 17, 1e-10);
    CHECK(two.p_exact == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
    CHECK(std::fabs(two.z_score) < 4.0);

    auto three = mc::ginibre_all_real_check(3, 20000, 18, 1e-10);
    CHECK(three.p_exact == doctest::Approx(std::exp2(-1.5)).epsilon(1e-15));
    CHECK(std::fabs(three.z_score) < 4.0);
}

TEST_CASE("z-score edge cases") {
    CHECK(mc::z_score(1.0, 1.0, 100) == 0.0);
    CHECK(std::isinf(mc::z_score(0.99, 1.0, 100)));
    CHECK(std::isinf(mc::z_score(0.5, 0.5, 0)));
    CHECK(mc::z_score(0.55, 0.5, 100) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("wilson interval") {
    auto [lo, hi] = mc::wilson_interval(0.5, 1000);
    CHECK(lo < 0.5);
    CHECK(hi > 0.5);
    CHECK(hi - lo == doctest::Approx(2 * 1.96 * std::sqrt(0.25 / 1000)).epsilon(0.01));
    auto [lo0, hi0] = mc::wilson_interval(0.0, 100);
    CHECK(lo0 == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(hi0 > 0.0);
}

TEST_CASE("csv schemas") {
    auto dist = mc::run_trials(2, 2000, 123, 1e-10);
    const std::string csv = mc::to_csv(dist);
    CHECK(csv.find("n,k,tally,trials,seed,tol\n") != std::string::npos);
    CHECK(csv.find("# generator=philox4x32-10") != std::string::npos);
    CHECK(csv.find(",123,1e-10\n") != std::string::npos);

    auto rep = mc::estimate_rank_probability(2, 2000, 123, 1e-10);
    const std::string rcsv = mc::to_csv(rep);
    CHECK(rcsv.find("n,p_hat,p_exact,z,ci_lo,ci_hi,trials\n") != std::string::npos);
    CHECK(rcsv.find("\n2,") != std::string::npos);
    CHECK(rcsv.find(",2000\n") != std::string::npos);
}

TEST_CASE("moment report on a hand-built distribution") {
    mc::EmpiricalKDistribution d;
    d.n = 3;
    d.trials = 10;
    d.counts[1] = 5;
    d.counts[3] = 5;
    CHECK(mc::moment_report(d).mean == doctest::Approx(2.0));
    CHECK(mc::moment_report(d).variance == doctest::Approx(1.0));
    CHECK(mc::moment_report(d).skewness == doctest::Approx(0.0));
}

TEST_CASE("input validation") {
    CHECK_THROWS(mc::run_trials(0, 10, 1));
    CHECK_THROWS(mc::run_trials(2, 0, 1));
    CHECK_THROWS(mc::run_trials(2, 10, 1, -1.0));
}

} // TEST_SUITE
