#pragma once

#include <string>

#include "subgc/distributions.hpp"

namespace subgc {

struct GCParams {
    double eps;    // accuracy, (0,1]
    double delta;  // confidence, (0,1)
    double alpha;  // submultiplicative exponent, [0,1)
};

/// The three-term failure bound q + m * p^((1-alpha)/2) / eps
/// + 2 exp(-2 n (eps p^alpha)^2) together with its tuning internals.
/// Bounds are never clamped; `vacuous` flags values >= 1.
struct BoundReport {
    double bound = 0.0;
    double t1 = 0.0, t2 = 0.0, t3 = 0.0;
    double p = 0.0, q = 0.0;
    long long m = 0;      // ladder count ceil(lnln(n/q) / ln((1+alpha)/(2 alpha)))
    double n = 0.0;       // real-valued so thresholds far beyond 2^63 still evaluate
    double eps = 0.0, alpha = 0.0;
    bool feasible = false;
    bool vacuous = false;
    std::string note;     // why infeasible, empty otherwise

    std::string to_json() const;
};

/// 2 exp(-2 n eps^2), uncapped.
double massart_bound(double n, double eps);

/// Three-term failure bound at explicit tuning parameters (p, q).
/// Preconditions (alpha in (0,1), n >= eps^(-1/(1-alpha)),
/// p <= min(eps^(1/(1-alpha)), 1/e), q in (0,1]) are reported through
/// `feasible` rather than thrown, so tuners can probe freely. The
/// middle term is 0 whenever q/n >= p (the middle region is empty).
BoundReport lemma_failure_bound(double n, double eps, double alpha,
                                double p, double q);

enum class TuneStrategy { Paper, Grid };

struct GridSpec {
    int np = 240;          // >= 200 log-spaced p values
    int nq = 240;          // >= 200 log-spaced q values
    double p_min = 1e-16;  // p enters as p^((1-alpha)/2); tiny values matter
    double q_min = 1e-9;
};

/// Picks (p, q) for lemma_failure_bound. Paper strategy: q = delta and
/// p = (eps delta ln((1+alpha)/(2 alpha)) / (2 lnln(n/delta)))^(2/(1-alpha))
/// when lnln(n/delta)/ln((1+alpha)/(2 alpha)) >= 1, else
/// p = (eps delta)^(2/(1-alpha)). Grid strategy: argmin of the bound
/// over feasible log-spaced grid points, ties broken toward smaller p
/// then smaller q; throws UserError if no grid point is feasible.
BoundReport tune_pq(double n, double eps, double alpha, double delta,
                    TuneStrategy strategy, const GridSpec& grid = {});

/// Sample-size threshold report for the submultiplicative deviation
/// event: n0 = max(direct_term, recursed_term).
struct N0Report {
    double n0;
    double direct_term;    // (ln(6/delta)/(2 eps^2)) (eps delta/3)^(-4a/(1-a))
    double recursed_term;  // (D+1) (10 ln(12(D+4)/(delta(1-a))))^(4a/(1-a))
    double D;
    double exponent;       // 4 alpha / (1 - alpha)
};

/// Requires eps in (0,1], delta in (0,1), alpha in [0,1). At alpha = 0
/// every factor x^(4 alpha/(1-alpha)) is taken as 1 (even where x
/// diverges), so the value reduces to ln(6/delta)/(2 eps^2) + 1.
N0Report n0_submult_report(double eps, double delta, double alpha);
double n0_submult(double eps, double delta, double alpha);

/// Smallest convenient n with n >= D (lnln(E n))^F, namely
/// (D+1) (10 (ln(D+4) + ln(F+4) + ln E))^F. Requires D >= 0, E >= 4, F >= 0.
double solve_lnln_recursion(double D, double E, double F);

struct GCReduction {
    double eps_prime;  // eps / C^(1/(1+theta))
    double alpha;      // 1 / (1+theta)
};

/// Substitution pair carrying a revenue-accuracy target to a tail-side
/// submultiplicative deviation target under the moment bound
/// E[V^(1+theta)] <= C. Requires eps in (0,1), theta > 0, C >= 1.
GCReduction reduce_revenue_to_gc(double eps, double theta, double C);

struct RevenueComplexityReport {
    double n0;           // n0_submult(eps_prime, delta, alpha), exact
    double eps_prime;
    double alpha;
    double eq1_leading;  // leading-order annotation, not asserted against n0
};

/// Sample size for uniform revenue estimation under a (theta, C) moment
/// bound, by composition through reduce_revenue_to_gc.
RevenueComplexityReport n0_revenue(double eps, double delta, double theta, double C);

struct TailSumBounds {
    double lower;      // sum_{k=1..N} tail(k)
    double upper;      // lower + 1 (the k=0 term)
    double remainder;  // closed-form upper bound on sum_{k>N} tail(k); may be +inf
};

/// Integer-grid tail sums sandwiching the first moment:
/// lower <= E[V] <= lower + remainder + 1 (when the remainder is finite).
TailSumBounds tail_sum_bounds(const Distribution& d, long long N);

}  // namespace subgc
