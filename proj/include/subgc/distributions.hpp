#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "subgc/rng.hpp"
#include "subgc/sample.hpp"

namespace subgc {

enum class DistFamily { Uniform01, Pareto, EqualRevenue, Eta };

struct Atom {
    double location;
    double mass;
};

/// Closed-form distribution zoo over the nonnegative reals.
///
/// Families:
///   uniform       F(t) = t on [0,1]
///   pareto:a=A    F(t) = 1 - t^-A for t >= 1 (scale fixed at 1), A > 0
///   equalrev      tail q(v) = min(1, 1/v); every price p >= 1 earns
///                 expected revenue 1; infinite mean
///   eta:p=P       mass 1-P at 0 and mass P at 1/P, P in (0,1]
///
/// All evaluations are exact closed forms. Values are immutable after
/// construction and safe for unrestricted concurrent use.
class Distribution {
  public:
    static Distribution uniform01();
    static Distribution pareto(double shape);
    static Distribution equal_revenue();
    static Distribution eta(double p);

    /// Parses a spec string: uniform | pareto:a=<real> | equalrev | eta:p=<real>.
    /// Throws UserError on anything else.
    static Distribution parse(std::string_view spec);
    std::string spec_string() const;

    DistFamily family() const { return family_; }
    double param() const { return param_; }

    /// F(t) = Pr[V <= t]; defined for all real t.
    double cdf(double t) const;
    /// F(t-) = 1 - tail(t)
    double cdf_left(double t) const { return 1.0 - tail(t); }
    /// q(v) = Pr[V >= v] = 1 - F(v-); defined for all real v.
    double tail(double v) const;
    /// q(v+) = Pr[V > v] = tail(v) - mass at v
    double tail_right(double v) const { return tail(v) - atom_mass(v); }
    /// r(p) = p * q(p), p >= 0
    double revenue(double p) const { return p == 0.0 ? 0.0 : p * tail(p); }

    /// k-th raw moment for k >= 1; +infinity is a first-class result.
    double moment(double k) const;

    /// Atoms in increasing location order (empty for continuous families).
    const std::vector<Atom>& atoms() const { return atoms_; }
    double atom_mass(double v) const;

    /// Locations where F or r changes formula (kinks and jumps).
    std::vector<double> breakpoints() const;

    /// Generalized inverse CDF, u in [0,1).
    double quantile(double u) const;

    /// n i.i.d. draws by inverse transform, sorted ascending.
    /// Bit-identical output for identical (stream state, n).
    Sample sample(RngStream& rng, std::size_t n) const;

    /// Interior stationary points of p -> c*p - r(p) on (a,b), plus
    /// formula-change points of r inside (a,b). Requires 0 <= a < b.
    std::vector<double> revenue_critical_points(double c, double a, double b) const;

    /// sup of r over (x, infinity); may be +infinity.
    double sup_revenue_above(double x) const;

    /// r* = sup_p r(p). Throws UserError when infinite (pareto shape < 1).
    double max_revenue() const;
    /// A price attaining r*.
    double max_revenue_price() const;

  private:
    Distribution(DistFamily f, double param);

    DistFamily family_;
    double param_;  // pareto shape or eta p; unused otherwise
    std::vector<Atom> atoms_;
};

}  // namespace subgc
