#include "subgc/bounds.hpp"

#include <cmath>
#include <limits>

#include <json.hpp>

#include "subgc/errors.hpp"

namespace subgc {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double ladder_log(double alpha) { return std::log((1.0 + alpha) / (2.0 * alpha)); }
}  // namespace

std::string BoundReport::to_json() const {
    nlohmann::json j{{"bound", bound},
                     {"terms", {t1, t2, t3}},
                     {"p", p},
                     {"q", q},
                     {"m", m},
                     {"n", n},
                     {"eps", eps},
                     {"alpha", alpha},
                     {"feasible", feasible},
                     {"vacuous", vacuous}};
    if (!note.empty()) j["note"] = note;
    return j.dump();
}

double massart_bound(double n, double eps) {
    if (!(n >= 1.0)) throw UserError("n must be at least 1");
    if (!(eps > 0.0)) throw UserError("eps must be positive");
    return 2.0 * std::exp(-2.0 * n * eps * eps);
}

BoundReport lemma_failure_bound(double n, double eps, double alpha, double p,
                                double q) {
    if (!(n >= 1.0) || !std::isfinite(n)) throw UserError("n must be at least 1");
    if (!(eps > 0.0)) throw UserError("eps must be positive");
    if (!(alpha > 0.0 && alpha < 1.0)) throw UserError("alpha must lie in (0,1)");
    if (!(p > 0.0 && p < 1.0)) throw UserError("p must lie in (0,1)");
    if (!(q > 0.0 && q <= 1.0)) throw UserError("q must lie in (0,1]");

    BoundReport r;
    r.p = p, r.q = q, r.n = n, r.eps = eps, r.alpha = alpha;
    r.feasible = true;

    const double nd = n;
    if (!(nd >= std::pow(eps, -1.0 / (1.0 - alpha)))) {
        r.feasible = false;
        r.note = "requires n >= eps^(-1/(1-alpha))";
    }
    const double p_cap = std::min(std::pow(eps, 1.0 / (1.0 - alpha)), 1.0 / M_E);
    if (!(p <= p_cap)) {
        r.feasible = false;
        r.note = r.note.empty() ? "requires p <= min(eps^(1/(1-alpha)), 1/e)" : r.note;
    }

    r.t1 = q;

    const bool middle_empty = q / nd >= p;
    const double log_nq = std::log(nd / q);
    if (log_nq > 0.0) {
        const double raw = std::ceil(std::log(log_nq) / ladder_log(alpha));
        r.m = static_cast<long long>(std::max(middle_empty ? 0.0 : 1.0, raw));
    } else if (!middle_empty) {
        r.feasible = false;
        r.note = r.note.empty() ? "lnln(n/q) undefined" : r.note;
        r.m = 0;
    }
    r.t2 = middle_empty ? 0.0
                        : static_cast<double>(r.m) * std::pow(p, (1.0 - alpha) / 2.0) / eps;

    const double exponent = eps * std::pow(p, alpha);
    r.t3 = 2.0 * std::exp(-2.0 * nd * exponent * exponent);

    r.bound = r.t1 + r.t2 + r.t3;
    r.vacuous = r.bound >= 1.0;
    return r;
}

BoundReport tune_pq(double n, double eps, double alpha, double delta,
                    TuneStrategy strategy, const GridSpec& grid) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw UserError("alpha must lie in (0,1)");
    if (!(eps > 0.0 && eps <= 1.0)) throw UserError("eps must lie in (0,1]");
    if (!(n >= 1.0) || !std::isfinite(n)) throw UserError("n must be at least 1");

    if (strategy == TuneStrategy::Paper) {
        if (!(delta > 0.0 && delta < 1.0)) throw UserError("delta must lie in (0,1)");
        const double L = ladder_log(alpha);
        const double lnln = std::log(std::log(n / delta));
        const double expo = 2.0 / (1.0 - alpha);
        const double p = (lnln / L >= 1.0)
                             ? std::pow(eps * delta * L / (2.0 * lnln), expo)
                             : std::pow(eps * delta, expo);
        return lemma_failure_bound(n, eps, alpha, p, delta);
    }

    const double p_max = std::min(std::pow(eps, 1.0 / (1.0 - alpha)), 1.0 / M_E);
    const double p_min = std::min(grid.p_min, p_max);
    BoundReport best;
    bool found = false;
    for (int i = 0; i < grid.np; ++i) {
        const double fp = grid.np == 1 ? 0.0 : static_cast<double>(i) / (grid.np - 1);
        const double p = p_min * std::pow(p_max / p_min, fp);
        for (int j = 0; j < grid.nq; ++j) {
            const double fq = grid.nq == 1 ? 0.0 : static_cast<double>(j) / (grid.nq - 1);
            const double q = grid.q_min * std::pow(1.0 / grid.q_min, fq);
            BoundReport r = lemma_failure_bound(n, eps, alpha, p, q);
            if (!r.feasible) continue;
            if (!found || r.bound < best.bound) {
                best = r;
                found = true;
            }
        }
    }
    if (!found) throw UserError("no feasible (p,q) grid point for these parameters");
    return best;
}

double solve_lnln_recursion(double D, double E, double F) {
    if (!(D >= 0.0)) throw UserError("D must be >= 0");
    if (!(E >= 4.0)) throw UserError("E must be >= 4");
    if (!(F >= 0.0)) throw UserError("F must be >= 0");
    return (D + 1.0) * std::pow(10.0 * (std::log(D + 4.0) + std::log(F + 4.0) + std::log(E)), F);
}

N0Report n0_submult_report(double eps, double delta, double alpha) {
    if (!(eps > 0.0 && eps <= 1.0)) throw UserError("eps must lie in (0,1]");
    if (!(delta > 0.0 && delta < 1.0)) throw UserError("delta must lie in (0,1)");
    if (!(alpha >= 0.0 && alpha < 1.0)) throw UserError("alpha must lie in [0,1)");

    N0Report r{};
    r.exponent = 4.0 * alpha / (1.0 - alpha);
    const double lead = std::log(6.0 / delta) / (2.0 * eps * eps);
    if (alpha == 0.0) {
        // every factor x^(4a/(1-a)) is 1 at a = 0, even the one whose base diverges
        r.direct_term = lead;
        r.D = lead;
    } else {
        r.direct_term = lead * std::pow(eps * delta / 3.0, -r.exponent);
        r.D = lead * std::pow(eps * delta / 6.0 * ladder_log(alpha), -r.exponent);
    }
    r.recursed_term = solve_lnln_recursion(r.D, 3.0 / delta, r.exponent);
    r.n0 = std::max(r.direct_term, r.recursed_term);
    return r;
}

double n0_submult(double eps, double delta, double alpha) {
    return n0_submult_report(eps, delta, alpha).n0;
}

GCReduction reduce_revenue_to_gc(double eps, double theta, double C) {
    if (!(eps > 0.0 && eps < 1.0)) throw UserError("eps must lie in (0,1)");
    if (!(theta > 0.0)) throw UserError("theta must be positive");
    if (!(C >= 1.0)) throw UserError("C must be >= 1");
    return {eps / std::pow(C, 1.0 / (1.0 + theta)), 1.0 / (1.0 + theta)};
}

RevenueComplexityReport n0_revenue(double eps, double delta, double theta, double C) {
    const GCReduction red = reduce_revenue_to_gc(eps, theta, C);
    if (!(delta > 0.0 && delta < 1.0)) throw UserError("delta must lie in (0,1)");

    RevenueComplexityReport r{};
    r.eps_prime = red.eps_prime;
    r.alpha = red.alpha;
    r.n0 = n0_submult(red.eps_prime, delta, red.alpha);
    const double croot = std::pow(C, 1.0 / (1.0 + theta));
    r.eq1_leading = std::log(1.0 / delta) / (eps * eps) * std::pow(C, 2.0 / (1.0 + theta)) *
                    std::pow(6.0 * croot / (eps * delta * std::log1p(theta / 2.0)), 4.0 / theta);
    return r;
}

TailSumBounds tail_sum_bounds(const Distribution& d, long long N) {
    if (N < 1) throw UserError("N must be a positive integer");
    TailSumBounds r{};
    for (long long k = 1; k <= N; ++k) r.lower += d.tail(static_cast<double>(k));
    r.upper = r.lower + 1.0;
    switch (d.family()) {
        case DistFamily::Uniform01:
            r.remainder = 0.0;
            break;
        case DistFamily::Pareto:
            r.remainder = d.param() > 1.0
                              ? std::pow(static_cast<double>(N), 1.0 - d.param()) / (d.param() - 1.0)
                              : kInf;
            break;
        case DistFamily::EqualRevenue:
            r.remainder = kInf;
            break;
        case DistFamily::Eta:
            r.remainder = d.param() * std::max(0.0, std::floor(1.0 / d.param()) -
                                                        static_cast<double>(N));
            break;
    }
    return r;
}

}  // namespace subgc
