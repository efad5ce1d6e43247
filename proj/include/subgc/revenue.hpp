#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "subgc/distributions.hpp"
#include "subgc/sample.hpp"

namespace subgc {

/// r_n(p) = p * q_n(p)
double emp_revenue(const Sample& s, double p);

/// The empirical revenue curve as a step-slope function: on each piece
/// (left, right] the empirical tail is the constant `tail` and
/// r_n(p) = tail * p. The first piece starts closed at 0, the last has
/// right = +inf and tail = 0. Tails are strictly decreasing from 1 to 0.
struct RevenuePiece {
    double left;
    double right;
    double tail;
};

class RevenueCurve {
  public:
    explicit RevenueCurve(const Sample& s);
    const std::vector<RevenuePiece>& pieces() const { return pieces_; }
    double operator()(double p) const;
    /// Columns: piece,left,right,tail,slope
    void write_csv(std::ostream& out) const;

  private:
    std::vector<RevenuePiece> pieces_;
};

/// Exact revenue estimation error sup_p |r_n(p) - r(p)| over [0, inf).
/// +infinity when r is unbounded past the largest sample value.
double revenue_error(const Sample& s, const Distribution& d);

enum class PriceMode { Erm, Guarded };

struct PriceReport {
    double price;
    double empirical_revenue;
    std::optional<double> true_revenue;  // set when the distribution is known
    PriceMode mode;

    std::string to_json() const;
};

/// Empirical-revenue-maximizing price over the sample values (exact:
/// r_n is linear increasing within each piece, so every piece is
/// dominated by its right endpoint, a sample value). Ties go to the
/// smallest price. Guarded mode restricts candidates to prices at most
/// the g-th largest sample value; g defaults to ceil(sqrt(n)).
PriceReport pick_price(const Sample& s, PriceMode mode,
                       const Distribution* dist = nullptr,
                       std::optional<long long> guard_index = std::nullopt);

/// r* - r(price). Throws UserError when r* is infinite.
double regret(const Distribution& d, double price);

}  // namespace subgc
