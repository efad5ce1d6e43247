#include "subgc/empirical.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "subgc/errors.hpp"

namespace subgc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// |c - s| / s^alpha with 0/0 := 0 and positive/0 := +inf. At alpha = 0
// the denominator is identically 1 (additive statistic), including s = 0.
double dev_ratio(double c, double s, double alpha) {
    double diff = std::abs(c - s);
    if (alpha == 0.0) return diff;
    if (s <= 0.0) return diff == 0.0 ? 0.0 : kInf;
    return diff / std::pow(s, alpha);
}

// Distinct sample values merged with atom locations, ascending.
std::vector<double> merged_breakpoints(const Sample& s, const Distribution& d) {
    std::vector<double> pts;
    pts.reserve(s.n() + d.atoms().size());
    auto atom = d.atoms().begin();
    const auto atom_end = d.atoms().end();
    double prev = -kInf;
    for (double v : s.values()) {
        if (v == prev) continue;
        while (atom != atom_end && atom->location < v) pts.push_back((atom++)->location);
        if (atom != atom_end && atom->location == v) ++atom;
        pts.push_back(v);
        prev = v;
    }
    while (atom != atom_end) pts.push_back((atom++)->location);
    return pts;
}

// Sweeps the line in increasing t. Point evaluations carry the exact
// (empirical level, true level) pair at a breakpoint; segments carry the
// constant empirical level c and the closed range the true level sweeps
// over the open interval between breakpoints. Within a segment
// |c - s| / s^alpha is monotone on either side of s = c, so its maximum
// over any s-subrange is attained at the subrange endpoints; the sup
// over the whole line therefore reduces to these finitely many values.
//
// point(c, s, t); segment(c, s_lo, s_hi, t_of_s_lo, t_of_s_hi)
template <class PointFn, class SegmentFn>
void sweep(const Sample& smp, const Distribution& dst, Side side, PointFn&& point,
           SegmentFn&& segment) {
    const std::vector<double> b = merged_breakpoints(smp, dst);
    const std::size_t m = b.size();
    if (side == Side::Cdf) {
        segment(0.0, 0.0, dst.cdf_left(b[0]), b[0], b[0]);
        for (std::size_t j = 0; j < m; ++j) {
            point(smp.cdf(b[j]), dst.cdf(b[j]), b[j]);
            if (j + 1 < m)
                segment(smp.cdf(b[j]), dst.cdf(b[j]), dst.cdf_left(b[j + 1]), b[j], b[j + 1]);
        }
        segment(smp.cdf(b[m - 1]), dst.cdf(b[m - 1]), 1.0, b[m - 1], b[m - 1]);
    } else {
        segment(1.0, dst.tail(b[0]), 1.0, b[0], b[0]);
        for (std::size_t j = 0; j < m; ++j) {
            point(smp.tail(b[j]), dst.tail(b[j]), b[j]);
            if (j + 1 < m)
                segment(smp.tail(b[j + 1]), dst.tail(b[j + 1]), dst.tail_right(b[j]),
                        b[j + 1], b[j]);
        }
        segment(smp.tail_strict(b[m - 1]), 0.0, dst.tail_right(b[m - 1]), b[m - 1], b[m - 1]);
    }
}

struct BestDeviation {
    double value = -1.0;
    double witness = kInf;
    bool is_limit = true;
    DevSide side = DevSide::Below;

    void consider(double v, double t, bool limit, DevSide sd) {
        if (v < value) return;
        if (v > value) {
            value = v, witness = t, is_limit = limit, side = sd;
            return;
        }
        // ties: smallest witness, then attained over limit, then Above
        if (t > witness) return;
        if (t < witness) {
            witness = t, is_limit = limit, side = sd;
            return;
        }
        if (limit && !is_limit) return;
        if (!limit && is_limit) {
            is_limit = limit, side = sd;
            return;
        }
        if (sd == DevSide::Above && side == DevSide::Below) side = sd;
    }
};

DevSide side_of(double c, double s) { return c >= s ? DevSide::Above : DevSide::Below; }

void validate_alpha(double alpha) {
    if (!(alpha >= 0.0 && alpha < 1.0)) throw UserError("alpha must lie in [0,1)");
}

}  // namespace

DeviationResult sup_submult_deviation(const Sample& s, const Distribution& d,
                                      double alpha, Side side) {
    validate_alpha(alpha);
    BestDeviation best;
    sweep(
        s, d, side,
        [&](double c, double sv, double t) {
            best.consider(dev_ratio(c, sv, alpha), t, false, side_of(c, sv));
        },
        [&](double c, double s_lo, double s_hi, double t_lo, double t_hi) {
            best.consider(dev_ratio(c, s_lo, alpha), t_lo, true, side_of(c, s_lo));
            best.consider(dev_ratio(c, s_hi, alpha), t_hi, true, side_of(c, s_hi));
        });
    return {best.value, best.witness, best.side};
}

DeviationResult sup_additive_deviation(const Sample& s, const Distribution& d) {
    return sup_submult_deviation(s, d, 0.0, Side::Cdf);
}

bool check_submult_event(const Sample& s, const Distribution& d, double alpha,
                         double eps, Side side) {
    if (!(eps > 0.0)) throw UserError("eps must be positive");
    return sup_submult_deviation(s, d, alpha, side).value <= eps;
}

RegionViolations region_violations(const Sample& s, const Distribution& d,
                                   double alpha, double eps, double p, double q) {
    validate_alpha(alpha);
    if (!(alpha > 0.0)) throw UserError("region split requires alpha in (0,1)");
    if (!(eps > 0.0)) throw UserError("eps must be positive");
    if (!(p > 0.0 && p < 1.0)) throw UserError("p must lie in (0,1)");
    if (!(q > 0.0 && q <= 1.0)) throw UserError("q must lie in (0,1]");

    const double qn = q / static_cast<double>(s.n());
    // CDF-value windows (lo, hi]; the middle window is empty when q/n >= p.
    const double lo[3] = {-1.0, qn, p};
    const double hi[3] = {qn, p, 1.0};
    double sup[3] = {0.0, 0.0, 0.0};

    auto add = [&](int w, double value) {
        if (value > sup[w]) sup[w] = value;
    };
    sweep(
        s, d, Side::Cdf,
        [&](double c, double sv, double) {
            for (int w = 0; w < 3; ++w)
                if (lo[w] < hi[w] && sv > lo[w] && sv <= hi[w])
                    add(w, dev_ratio(c, sv, alpha));
        },
        [&](double c, double s_lo, double s_hi, double, double) {
            for (int w = 0; w < 3; ++w) {
                if (!(lo[w] < hi[w])) continue;
                if (!(s_hi > lo[w] && s_lo <= hi[w])) continue;
                // Clipping to the window boundary evaluates the one-sided
                // limit there, which is exact for the strict violation event.
                add(w, dev_ratio(c, std::max(s_lo, lo[w]), alpha));
                add(w, dev_ratio(c, std::min(s_hi, hi[w]), alpha));
            }
        });
    return {sup[0] > eps, sup[1] > eps, sup[2] > eps};
}

}  // namespace subgc
