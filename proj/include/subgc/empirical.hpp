#pragma once

#include "subgc/distributions.hpp"
#include "subgc/sample.hpp"

namespace subgc {

/// Which pair of curves a deviation statistic compares.
enum class Side { Cdf, Tail };

enum class DevSide { Above, Below };

struct DeviationResult {
    double value;   // sup statistic, possibly +infinity
    double witness; // location achieving (or approaching) the sup
    DevSide side;   // Above: empirical curve exceeds the true one
};

/// Exact Kolmogorov-Smirnov statistic sup_t |F_n(t) - F(t)|.
DeviationResult sup_additive_deviation(const Sample& s, const Distribution& d);

/// Exact sup_t |F_n(t) - F(t)| / F(t)^alpha (side = Cdf), or the same
/// statistic on the tails q_n, q (side = Tail). alpha in [0,1).
///
/// Conventions at a zero denominator: 0/0 := 0 and positive/0 := +inf;
/// at alpha = 0 the denominator is identically 1 and the statistic is
/// the additive one.
DeviationResult sup_submult_deviation(const Sample& s, const Distribution& d,
                                      double alpha, Side side);

/// True iff sup_submult_deviation(...) <= eps, i.e. the event
/// "for all t, |F_n - F| <= eps * F^alpha" holds for this sample.
bool check_submult_event(const Sample& s, const Distribution& d, double alpha,
                         double eps, Side side);

/// Per-region violation indicators for the three-way split of the line
/// by CDF value: F <= q/n, q/n < F <= p, p < F <= 1. The middle
/// indicator is false by construction when q/n >= p. Requires
/// p in (0,1), q in (0,1].
struct RegionViolations {
    bool low;
    bool middle;
    bool high;
    bool any() const { return low || middle || high; }
};
RegionViolations region_violations(const Sample& s, const Distribution& d,
                                   double alpha, double eps, double p, double q);

}  // namespace subgc
