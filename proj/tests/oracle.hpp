#pragma once

// Brute-force grid oracles used only by tests. They evaluate every
// statistic pointwise on a dense grid plus all jump points, atoms and
// formula breakpoints (with one-sided limits there), independently of
// the exact sweep in src/empirical.cpp and the per-piece optimization
// in src/revenue.cpp.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "subgc/distributions.hpp"
#include "subgc/sample.hpp"

namespace subgc::testing {

struct GridOracle {
    double additive = 0.0;
    std::vector<double> submult_cdf;   // one entry per alpha
    std::vector<double> submult_tail;  // one entry per alpha
    double revenue = 0.0;
};

inline double oracle_ratio(double c, double s, double alpha) {
    const double diff = std::abs(c - s);
    if (alpha == 0.0) return diff;
    if (s <= 0.0) return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    if (alpha == 0.5) return diff / std::sqrt(s);
    if (alpha == 0.25) return diff / std::sqrt(std::sqrt(s));
    return diff / std::pow(s, alpha);
}

inline GridOracle grid_oracle(const Sample& smp, const Distribution& dst,
                              const std::vector<double>& alphas,
                              std::size_t grid_points) {
    GridOracle out;
    out.submult_cdf.assign(alphas.size(), 0.0);
    out.submult_tail.assign(alphas.size(), 0.0);

    const std::vector<double>& xs = smp.values();
    const double n = static_cast<double>(xs.size());
    auto count_le = [&](double t) {
        return static_cast<double>(std::upper_bound(xs.begin(), xs.end(), t) - xs.begin());
    };
    auto count_lt = [&](double t) {
        return static_cast<double>(std::lower_bound(xs.begin(), xs.end(), t) - xs.begin());
    };

    double hi = std::max(1.0, smp.max());
    for (double b : dst.breakpoints()) hi = std::max(hi, b);
    hi *= 1.25;

    // point kinds: 0 = at t, 1 = left limit, 2 = right limit
    auto visit = [&](double t, int kind) {
        double fn, f, qn, q;
        if (kind == 0) {
            fn = count_le(t) / n;
            f = dst.cdf(t);
            qn = (n - count_lt(t)) / n;
            q = dst.tail(t);
        } else if (kind == 1) {
            fn = count_lt(t) / n;
            f = dst.cdf_left(t);
            qn = (n - count_lt(t)) / n;  // tails are left-continuous
            q = dst.tail(t);
        } else {
            fn = count_le(t) / n;  // CDFs are right-continuous
            f = dst.cdf(t);
            qn = (n - count_le(t)) / n;
            q = dst.tail_right(t);
        }
        out.additive = std::max(out.additive, std::abs(fn - f));
        for (std::size_t a = 0; a < alphas.size(); ++a) {
            out.submult_cdf[a] = std::max(out.submult_cdf[a], oracle_ratio(fn, f, alphas[a]));
            out.submult_tail[a] = std::max(out.submult_tail[a], oracle_ratio(qn, q, alphas[a]));
        }
        if (t >= 0.0) out.revenue = std::max(out.revenue, std::abs(t * qn - t * q));
    };

    for (std::size_t i = 0; i <= grid_points; ++i) {
        const double t = hi * static_cast<double>(i) / static_cast<double>(grid_points);
        visit(t, 0);
    }
    std::vector<double> special = xs;
    for (double b : dst.breakpoints()) special.push_back(b);
    for (const Atom& a : dst.atoms()) special.push_back(a.location);
    for (double t : special) {
        visit(t, 0);
        visit(t, 1);
        visit(t, 2);
    }
    return out;
}

}  // namespace subgc::testing
