#include "subgc/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "subgc/errors.hpp"
#include "subgc/io.hpp"

namespace subgc {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

Distribution::Distribution(DistFamily f, double param) : family_(f), param_(param) {
    if (family_ == DistFamily::Eta) {
        if (param_ < 1.0) atoms_.push_back({0.0, 1.0 - param_});
        atoms_.push_back({1.0 / param_, param_});
    }
}

Distribution Distribution::uniform01() { return Distribution(DistFamily::Uniform01, 0.0); }

Distribution Distribution::pareto(double shape) {
    if (!(shape > 0.0) || !std::isfinite(shape))
        throw UserError("pareto shape must be a positive real");
    return Distribution(DistFamily::Pareto, shape);
}

Distribution Distribution::equal_revenue() { return Distribution(DistFamily::EqualRevenue, 0.0); }

Distribution Distribution::eta(double p) {
    if (!(p > 0.0 && p <= 1.0)) throw UserError("eta parameter p must lie in (0,1]");
    return Distribution(DistFamily::Eta, p);
}

Distribution Distribution::parse(std::string_view spec) {
    auto bad = [&] { return UserError("unknown distribution '" + std::string(spec) + "'"); };
    auto param_after = [&](std::string_view prefix) {
        std::string token(spec.substr(prefix.size()));
        std::size_t pos = 0;
        double v;
        try {
            v = std::stod(token, &pos);
        } catch (const std::exception&) {
            throw bad();
        }
        if (pos != token.size()) throw bad();
        return v;
    };
    if (spec == "uniform") return uniform01();
    if (spec == "equalrev") return equal_revenue();
    if (spec.rfind("pareto:a=", 0) == 0) return pareto(param_after("pareto:a="));
    if (spec.rfind("eta:p=", 0) == 0) return eta(param_after("eta:p="));
    throw bad();
}

std::string Distribution::spec_string() const {
    switch (family_) {
        case DistFamily::Uniform01: return "uniform";
        case DistFamily::Pareto: return "pareto:a=" + format_double(param_);
        case DistFamily::EqualRevenue: return "equalrev";
        case DistFamily::Eta: return "eta:p=" + format_double(param_);
    }
    return {};
}

double Distribution::cdf(double t) const {
    switch (family_) {
        case DistFamily::Uniform01:
            if (t <= 0.0) return 0.0;
            return t >= 1.0 ? 1.0 : t;
        case DistFamily::Pareto:
            return t < 1.0 ? 0.0 : 1.0 - std::pow(t, -param_);
        case DistFamily::EqualRevenue:
            return t <= 1.0 ? 0.0 : 1.0 - 1.0 / t;
        case DistFamily::Eta:
            if (t < 0.0) return 0.0;
            return t < 1.0 / param_ ? 1.0 - param_ : 1.0;
    }
    return 0.0;
}

double Distribution::tail(double v) const {
    switch (family_) {
        case DistFamily::Uniform01:
            if (v <= 0.0) return 1.0;
            return v >= 1.0 ? 0.0 : 1.0 - v;
        case DistFamily::Pareto:
            return v <= 1.0 ? 1.0 : std::pow(v, -param_);
        case DistFamily::EqualRevenue:
            return v <= 1.0 ? 1.0 : 1.0 / v;
        case DistFamily::Eta:
            if (v <= 0.0) return 1.0;
            return v <= 1.0 / param_ ? param_ : 0.0;
    }
    return 0.0;
}

double Distribution::moment(double k) const {
    if (!(k >= 1.0)) throw UserError("moment order k must be >= 1");
    switch (family_) {
        case DistFamily::Uniform01: return 1.0 / (k + 1.0);
        case DistFamily::Pareto: return k < param_ ? param_ / (param_ - k) : kInf;
        case DistFamily::EqualRevenue: return kInf;
        case DistFamily::Eta: return std::pow(param_, 1.0 - k);
    }
    return 0.0;
}

double Distribution::atom_mass(double v) const {
    for (const Atom& a : atoms_)
        if (a.location == v) return a.mass;
    return 0.0;
}

std::vector<double> Distribution::breakpoints() const {
    switch (family_) {
        case DistFamily::Uniform01: return {0.0, 1.0};
        case DistFamily::Pareto: return {1.0};
        case DistFamily::EqualRevenue: return {1.0};
        case DistFamily::Eta: {
            std::vector<double> pts;
            for (const Atom& a : atoms_) pts.push_back(a.location);
            return pts;
        }
    }
    return {};
}

double Distribution::quantile(double u) const {
    switch (family_) {
        case DistFamily::Uniform01: return u;
        case DistFamily::Pareto: return std::pow(1.0 - u, -1.0 / param_);
        case DistFamily::EqualRevenue: return 1.0 / (1.0 - u);
        case DistFamily::Eta: return u <= 1.0 - param_ ? 0.0 : 1.0 / param_;
    }
    return 0.0;
}

Sample Distribution::sample(RngStream& rng, std::size_t n) const {
    std::vector<double> values(n);
    for (double& v : values) v = quantile(rng.next_unit());
    return Sample(std::move(values));
}

std::vector<double> Distribution::revenue_critical_points(double c, double a, double b) const {
    if (!(a >= 0.0) || !(a < b)) throw UserError("invalid interval [a,b)");
    std::vector<double> pts;
    auto interior = [&](double x) { return x > a && x < b; };

    switch (family_) {
        case DistFamily::Uniform01:
            // c*p - p(1-p) is quadratic on [0,1] with vertex (1-c)/2
            if (double v = (1.0 - c) / 2.0; interior(v) && v < 1.0) pts.push_back(v);
            break;
        case DistFamily::Pareto:
            // On p > 1, d/dp [c p - p^(1-a)] = c - (1-a) p^-a vanishes only
            // for shape < 1; for shape >= 1 the difference is piecewise monotone.
            if (param_ < 1.0 && c > 0.0) {
                double v = std::pow((1.0 - param_) / c, 1.0 / param_);
                if (v > 1.0 && interior(v)) pts.push_back(v);
            }
            break;
        case DistFamily::EqualRevenue:
        case DistFamily::Eta:
            break;  // c*p - r(p) linear on every piece
    }
    for (double d : breakpoints())
        if (interior(d)) pts.push_back(d);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

double Distribution::sup_revenue_above(double x) const {
    switch (family_) {
        case DistFamily::Uniform01:
            if (x >= 1.0) return 0.0;
            return x <= 0.5 ? 0.25 : x * (1.0 - x);
        case DistFamily::Pareto:
            if (param_ < 1.0) return kInf;
            if (x <= 1.0) return 1.0;
            return param_ == 1.0 ? 1.0 : std::pow(x, 1.0 - param_);
        case DistFamily::EqualRevenue:
            return 1.0;
        case DistFamily::Eta:
            return x < 1.0 / param_ ? 1.0 : 0.0;
    }
    return 0.0;
}

double Distribution::max_revenue() const {
    if (family_ == DistFamily::Pareto && param_ < 1.0)
        throw UserError("maximum revenue is infinite for pareto shape < 1");
    return family_ == DistFamily::Uniform01 ? 0.25 : 1.0;
}

double Distribution::max_revenue_price() const {
    switch (family_) {
        case DistFamily::Uniform01: return 0.5;
        case DistFamily::Pareto:
            if (param_ < 1.0)
                throw UserError("maximum revenue is infinite for pareto shape < 1");
            return 1.0;
        case DistFamily::EqualRevenue: return 1.0;
        case DistFamily::Eta: return 1.0 / param_;
    }
    return 0.0;
}

}  // namespace subgc
