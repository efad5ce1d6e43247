#include "subgc/revenue.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include <json.hpp>

#include "subgc/errors.hpp"
#include "subgc/io.hpp"

namespace subgc {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> distinct_values(const Sample& s) {
    std::vector<double> w;
    w.reserve(s.n());
    for (double v : s.values())
        if (w.empty() || w.back() != v) w.push_back(v);
    return w;
}
}  // namespace

double emp_revenue(const Sample& s, double p) {
    if (!(p >= 0.0)) throw UserError("price must be nonnegative");
    return p == 0.0 ? 0.0 : p * s.tail(p);
}

RevenueCurve::RevenueCurve(const Sample& s) {
    const std::vector<double> w = distinct_values(s);
    double left = 0.0;
    for (double v : w) {
        pieces_.push_back({left, v, s.tail(v)});
        left = v;
    }
    pieces_.push_back({left, kInf, 0.0});
}

double RevenueCurve::operator()(double p) const {
    if (!(p >= 0.0)) throw UserError("price must be nonnegative");
    for (const RevenuePiece& piece : pieces_)
        if (p <= piece.right) return piece.tail * p;
    return 0.0;
}

void RevenueCurve::write_csv(std::ostream& out) const {
    out << "piece,left,right,tail,slope\n";
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        const RevenuePiece& p = pieces_[i];
        out << i << ',' << format_double(p.left) << ',' << format_double(p.right) << ','
            << format_double(p.tail) << ',' << format_double(p.tail) << '\n';
    }
}

double revenue_error(const Sample& s, const Distribution& d) {
    const std::vector<double> w = distinct_values(s);
    double sup = 0.0;
    auto consider = [&](double dev) {
        if (dev > sup) sup = dev;
    };

    const std::vector<double> breaks = d.breakpoints();
    double left = 0.0;
    for (double u : w) {
        const double c = s.tail(u);  // empirical tail on (left, u]
        consider(std::abs(c * u - d.revenue(u)));
        if (u > left) {  // degenerate only when the sample starts at 0
            consider(std::abs(c * left - left * d.tail_right(left)));
            for (double b : breaks)
                if (b > left && b < u) {
                    consider(std::abs(c * b - d.revenue(b)));
                    consider(std::abs(c * b - b * d.tail_right(b)));
                }
            for (double cp : d.revenue_critical_points(c, left, u))
                consider(std::abs(c * cp - d.revenue(cp)));
        }
        left = u;
    }
    // past the largest sample value the empirical revenue is identically 0
    consider(d.sup_revenue_above(w.back()));
    return sup;
}

PriceReport pick_price(const Sample& s, PriceMode mode, const Distribution* dist,
                       std::optional<long long> guard_index) {
    double cap = kInf;
    if (mode == PriceMode::Guarded) {
        long long g = guard_index.value_or(
            static_cast<long long>(std::ceil(std::sqrt(static_cast<double>(s.n())))));
        if (g < 1 || g > static_cast<long long>(s.n()))
            throw UserError("guard index must lie in [1, n]");
        cap = s.values()[s.n() - static_cast<std::size_t>(g)];  // g-th largest
    }

    double best_price = 0.0, best_rev = -1.0;
    for (double v : distinct_values(s)) {
        if (v > cap) break;
        const double rev = v * s.tail(v);
        if (rev > best_rev) {
            best_rev = rev;
            best_price = v;
        }
    }
    if (best_rev < 0.0) {  // all candidates above the cap cannot happen: cap is a sample value
        best_price = 0.0;
        best_rev = 0.0;
    }
    PriceReport r;
    r.price = best_price;
    r.empirical_revenue = best_rev;
    r.mode = mode;
    if (dist) r.true_revenue = dist->revenue(best_price);
    return r;
}

double regret(const Distribution& d, double price) {
    if (!(price >= 0.0)) throw UserError("price must be nonnegative");
    return d.max_revenue() - d.revenue(price);
}

std::string PriceReport::to_json() const {
    nlohmann::json j{{"price", price},
                     {"empirical_revenue", empirical_revenue},
                     {"mode", mode == PriceMode::Erm ? "erm" : "guarded"}};
    j["true_revenue"] = true_revenue ? nlohmann::json(*true_revenue) : nlohmann::json();
    return j.dump();
}

}  // namespace subgc
