#include <doctest.h>

#include <cmath>
#include <limits>

#include "subgc/bounds.hpp"
#include "subgc/errors.hpp"

using namespace subgc;

namespace {
const double kInf = std::numeric_limits<double>::infinity();

// Independent long-double evaluations of the frozen example values.
long double expected_lemma_example() {
    // n=1e5, eps=0.5, alpha=0.25, p=1e-4, q=0.02
    const long double t2 = 3.0L * powl(1e-4L, 0.375L) / 0.5L;
    return 0.02L + t2 + 2.0L * expl(-500.0L);
}

long double expected_paper_p() {
    // n=1e5, eps=0.5, delta=0.1, alpha=0.25
    const long double L = logl(1.25L / 0.5L);
    const long double lnln = logl(logl(1e5L / 0.1L));
    return powl(0.5L * 0.1L * L / (2.0L * lnln), 2.0L / 0.75L);
}

long double expected_n0(long double eps, long double delta, long double alpha) {
    const long double G = 4.0L * alpha / (1.0L - alpha);
    const long double lead = logl(6.0L / delta) / (2.0L * eps * eps);
    const long double A = alpha == 0.0L ? lead : lead * powl(eps * delta / 3.0L, -G);
    const long double D =
        alpha == 0.0L
            ? lead
            : lead * powl(eps * delta / 6.0L * logl((1.0L + alpha) / (2.0L * alpha)), -G);
    const long double B =
        (D + 1.0L) * powl(10.0L * logl(12.0L * (D + 4.0L) / (delta * (1.0L - alpha))), G);
    return A > B ? A : B;
}
}  // namespace

TEST_CASE("massart bound") {
    CHECK(massart_bound(100, 0.1) ==
          doctest::Approx(static_cast<double>(2.0L * expl(-2.0L))).epsilon(1e-14));
    CHECK(massart_bound(50, 0.2) ==
          doctest::Approx(static_cast<double>(2.0L * expl(-4.0L))).epsilon(1e-14));
    CHECK(massart_bound(50, 0.2) == doctest::Approx(0.0366313).epsilon(1e-5));
    CHECK(massart_bound(1000, 1e-12) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(massart_bound(10, 2.0) < 1e-10);  // uncapped, never clamped
    CHECK_THROWS_AS(massart_bound(0, 0.1), UserError);
    CHECK_THROWS_AS(massart_bound(10, 0.0), UserError);
}

TEST_CASE("three-term failure bound") {
    const BoundReport r = lemma_failure_bound(1e5, 0.5, 0.25, 1e-4, 0.02);
    CHECK(r.feasible);
    CHECK(r.m == 3);
    CHECK(r.t1 == doctest::Approx(0.02));
    CHECK(r.t2 == doctest::Approx(3.0 * std::pow(10.0, -1.5) / 0.5).epsilon(1e-12));
    CHECK(r.bound ==
          doctest::Approx(static_cast<double>(expected_lemma_example())).epsilon(1e-12));
    CHECK(r.bound == doctest::Approx(0.209737).epsilon(1e-5));
    CHECK(r.bound == doctest::Approx(r.t1 + r.t2 + r.t3));
    CHECK_FALSE(r.vacuous);

    // p above eps^(1/(1-alpha)) ~ 0.39685 is infeasible but still evaluated
    const BoundReport bad = lemma_failure_bound(1e5, 0.5, 0.25, 0.5, 0.1);
    CHECK_FALSE(bad.feasible);

    // middle region empty when q/n >= p
    const BoundReport empty = lemma_failure_bound(2, 0.3, 0.5, 0.05, 0.5);
    CHECK(empty.t2 == 0.0);
    CHECK_FALSE(empty.feasible);  // n below eps^(-1/(1-alpha)) = 11.1

    CHECK_THROWS_AS(lemma_failure_bound(100, 0.5, 0.0, 0.01, 0.1), UserError);
    CHECK_THROWS_AS(lemma_failure_bound(100, 0.5, 0.5, 0.0, 0.1), UserError);
    CHECK_THROWS_AS(lemma_failure_bound(100, 0.5, 0.5, 0.01, 1.5), UserError);
}

TEST_CASE("failure bound shrinks with more data and larger eps") {
    double prev = kInf;
    for (double n : {100.0, 1000.0, 10000.0, 100000.0}) {
        const BoundReport r = lemma_failure_bound(n, 0.5, 0.25, 1e-4, 0.02);
        CHECK(r.bound <= prev + 1e-15);
        prev = r.bound;
    }
    prev = kInf;
    for (double eps : {0.3, 0.4, 0.5, 0.7, 0.9}) {
        const BoundReport r = lemma_failure_bound(1e5, eps, 0.25, 1e-4, 0.02);
        CHECK(r.bound <= prev + 1e-15);
        prev = r.bound;
    }
}

TEST_CASE("paper tuning strategy") {
    const BoundReport r = tune_pq(1e5, 0.5, 0.25, 0.1, TuneStrategy::Paper);
    CHECK(r.feasible);
    CHECK(r.q == doctest::Approx(0.1));
    CHECK(r.p == doctest::Approx(static_cast<double>(expected_paper_p())).epsilon(1e-12));
    CHECK(r.p == doctest::Approx(3.23e-6).epsilon(0.005));

    // small lnln(n/delta) relative to the ladder log selects p = (eps delta)^(2/(1-alpha))
    const BoundReport c2 = tune_pq(4, 0.9, 0.2, 0.3, TuneStrategy::Paper);
    CHECK(c2.q == doctest::Approx(0.3));
    CHECK(c2.p == doctest::Approx(std::pow(0.9 * 0.3, 2.0 / 0.8)).epsilon(1e-12));
    CHECK(c2.feasible);
}

TEST_CASE("grid tuning never loses to the paper point by much") {
    for (double n : {1e4, 1e5}) {
        for (double eps : {0.3, 0.5}) {
            for (double alpha : {0.25, 0.5}) {
                for (double delta : {0.05, 0.2}) {
                    const BoundReport paper = tune_pq(n, eps, alpha, delta, TuneStrategy::Paper);
                    const BoundReport grid = tune_pq(n, eps, alpha, delta, TuneStrategy::Grid);
                    CAPTURE(n);
                    CAPTURE(eps);
                    CAPTURE(alpha);
                    CAPTURE(delta);
                    CHECK(grid.feasible);
                    CHECK(grid.bound <= paper.bound * 1.15 + 1e-15);
                }
            }
        }
    }
    // no feasible point when n is below eps^(-1/(1-alpha))
    CHECK_THROWS_AS(tune_pq(1, 0.5, 0.5, 0.1, TuneStrategy::Grid), UserError);
    const BoundReport infeasible = tune_pq(1, 0.5, 0.5, 0.1, TuneStrategy::Paper);
    CHECK_FALSE(infeasible.feasible);
}

TEST_CASE("sample-size threshold") {
    const double v = n0_submult(0.25, 0.25, 0.0);
    CHECK(v == doctest::Approx(static_cast<double>(expected_n0(0.25L, 0.25L, 0.0L)))
                   .epsilon(1e-12));
    CHECK(v == doctest::Approx(std::log(24.0) / 0.125 + 1.0).epsilon(1e-12));

    const double w = n0_submult(0.5, 0.2, 0.25);
    CHECK(w == doctest::Approx(static_cast<double>(expected_n0(0.5L, 0.2L, 0.25L)))
                   .epsilon(1e-3));
    CHECK(w == doctest::Approx(1.050e6).epsilon(0.005));

    const N0Report rep = n0_submult_report(0.5, 0.2, 0.25);
    CHECK(rep.direct_term == doctest::Approx(634.1).epsilon(1e-3));
    CHECK(rep.D == doctest::Approx(1797.2).epsilon(2e-3));
    CHECK(rep.n0 == std::max(rep.direct_term, rep.recursed_term));

    double prev = 0.0;
    for (double alpha : {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}) {
        const double cur = n0_submult(0.1, 0.1, alpha);
        CHECK(cur >= prev);
        prev = cur;
    }

    CHECK_THROWS_AS(n0_submult(0.0, 0.1, 0.5), UserError);
    CHECK_THROWS_AS(n0_submult(0.1, 1.0, 0.5), UserError);
    CHECK_THROWS_AS(n0_submult(0.1, 0.1, 1.0), UserError);
}

TEST_CASE("lnln recursion solver") {
    CHECK(solve_lnln_recursion(0, 4, 0) == doctest::Approx(1.0));
    const double expected =
        static_cast<double>(11.0L * 10.0L * (logl(14.0L) + logl(5.0L) + logl(4.0L)));
    CHECK(solve_lnln_recursion(10, 4, 1) == doctest::Approx(expected).epsilon(1e-12));
    // the solver's output satisfies n >= D (lnln(E n))^F
    for (double D : {0.0, 0.5, 3.0, 50.0, 1e4}) {
        for (double E : {4.0, 10.0, 1e3}) {
            for (double F : {0.0, 0.5, 1.0, 3.0, 8.0}) {
                const double n = solve_lnln_recursion(D, E, F);
                CAPTURE(D);
                CAPTURE(E);
                CAPTURE(F);
                CHECK(n >= D * std::pow(std::log(std::log(E * n)), F));
            }
        }
    }
    CHECK_THROWS_AS(solve_lnln_recursion(-1, 4, 0), UserError);
    CHECK_THROWS_AS(solve_lnln_recursion(0, 3, 0), UserError);
    CHECK_THROWS_AS(solve_lnln_recursion(0, 4, -1), UserError);
}

TEST_CASE("revenue-to-tail reduction") {
    const GCReduction r = reduce_revenue_to_gc(0.5, 1.0, 3.0);
    CHECK(r.eps_prime == doctest::Approx(0.5 / std::sqrt(3.0)).epsilon(1e-12));
    CHECK(r.eps_prime == doctest::Approx(0.288675).epsilon(1e-5));
    CHECK(r.alpha == doctest::Approx(0.5));

    const GCReduction cone = reduce_revenue_to_gc(0.37, 2.0, 1.0);
    CHECK(cone.eps_prime == doctest::Approx(0.37));
    CHECK(cone.alpha == doctest::Approx(1.0 / 3.0));

    const GCReduction big = reduce_revenue_to_gc(0.25, 3.0, 16.0);
    CHECK(big.eps_prime == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(big.alpha == doctest::Approx(0.25));

    CHECK_THROWS_AS(reduce_revenue_to_gc(1.0, 1.0, 1.0), UserError);
    CHECK_THROWS_AS(reduce_revenue_to_gc(0.5, 0.0, 1.0), UserError);
    CHECK_THROWS_AS(reduce_revenue_to_gc(0.5, 1.0, 0.5), UserError);
}

TEST_CASE("revenue sample size composes through the reduction") {
    const RevenueComplexityReport r = n0_revenue(0.5, 0.2, 1.0, 1.0);
    CHECK(r.n0 == n0_submult(0.5, 0.2, 0.5));  // exact composition identity at C = 1
    CHECK(n0_revenue(0.25, 0.25, 1.0, 1.0).n0 == n0_submult(0.25, 0.25, 0.5));
    CHECK(n0_revenue(0.25, 0.25, 3.0, 1.0).n0 == n0_submult(0.25, 0.25, 0.25));

    // large theta approaches the additive regime
    const double far = n0_revenue(0.1, 0.1, 1e8, 1.0).n0;
    CHECK(far == doctest::Approx(n0_submult(0.1, 0.1, 0.0)).epsilon(1e-4));

    CHECK(n0_revenue(0.5, 0.2, 1.0, 3.0).eq1_leading > 0.0);
}

TEST_CASE("failure bound at the threshold stays within delta") {
    // plugging the tuned (p, q) at delta/3 and n = ceil(n0) keeps the
    // three-term bound at or below delta
    for (double eps : {0.1, 0.25}) {
        for (double delta : {0.05, 0.1, 0.25}) {
            for (double alpha : {0.1, 0.3, 0.5, 0.7}) {
                const double n0 = std::ceil(n0_submult(eps, delta, alpha));
                const BoundReport r = tune_pq(n0, eps, alpha, delta / 3.0, TuneStrategy::Paper);
                CAPTURE(eps);
                CAPTURE(delta);
                CAPTURE(alpha);
                CHECK(r.feasible);
                CHECK(r.bound <= delta + 1e-12);
            }
        }
    }
}

TEST_CASE("integer-grid tail sums sandwich the mean") {
    const TailSumBounds eta = tail_sum_bounds(Distribution::eta(0.1), 20);
    CHECK(eta.lower == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(eta.upper == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(eta.remainder == 0.0);

    const TailSumBounds uni = tail_sum_bounds(Distribution::uniform01(), 5);
    CHECK(uni.lower == 0.0);
    CHECK(uni.upper == 1.0);
    CHECK(uni.remainder == 0.0);

    double harmonic = 0.0;
    for (int k = 1; k <= 100; ++k) harmonic += 1.0 / k;
    const TailSumBounds er = tail_sum_bounds(Distribution::equal_revenue(), 100);
    CHECK(er.lower == doctest::Approx(harmonic).epsilon(1e-12));
    CHECK(std::isinf(er.remainder));
    CHECK(tail_sum_bounds(Distribution::equal_revenue(), 1000).lower > er.lower);

    for (const char* spec : {"uniform", "pareto:a=2", "pareto:a=3", "eta:p=0.1", "eta:p=0.5"}) {
        const Distribution d = Distribution::parse(spec);
        const double mean = d.moment(1.0);
        for (long long N : {1, 5, 20, 100}) {
            const TailSumBounds b = tail_sum_bounds(d, N);
            CAPTURE(spec);
            CAPTURE(N);
            CHECK(b.lower <= mean + 1e-12);
            CHECK(mean <= b.lower + b.remainder + 1.0 + 1e-12);
        }
    }
    CHECK_THROWS_AS(tail_sum_bounds(Distribution::uniform01(), 0), UserError);
}

TEST_CASE("bound report serializes to json") {
    const std::string j = lemma_failure_bound(1e5, 0.5, 0.25, 1e-4, 0.02).to_json();
    CHECK(j.find("\"bound\"") != std::string::npos);
    CHECK(j.find("\"terms\"") != std::string::npos);
    CHECK(j.find("\"m\":3") != std::string::npos);
    CHECK(j.find("\"feasible\":true") != std::string::npos);
}
