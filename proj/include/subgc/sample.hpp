#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

namespace subgc {

/// A sorted sample of nonnegative realizations; the empirical measure.
///
/// Values are kept ascending, so the stored list is exactly the order
/// statistics. Empirical CDF/tail evaluation is O(log n).
class Sample {
  public:
    /// Sorts and validates (nonempty, all values >= 0).
    explicit Sample(std::vector<double> values);

    /// Reads one nonnegative decimal per line. Blank lines are ignored.
    static Sample load(std::istream& in);
    void save(std::ostream& out) const;

    std::size_t n() const { return values_.size(); }
    const std::vector<double>& values() const { return values_; }
    double min() const { return values_.front(); }
    double max() const { return values_.back(); }

    /// F_n(t) = #{x_i <= t} / n
    double cdf(double t) const;
    /// F_n(t-) = #{x_i < t} / n
    double cdf_strict(double t) const;
    /// q_n(v) = #{x_i >= v} / n = 1 - F_n(v-)
    double tail(double v) const { return 1.0 - cdf_strict(v); }
    /// q_n(v+) = #{x_i > v} / n
    double tail_strict(double v) const { return 1.0 - cdf(v); }

  private:
    std::vector<double> values_;
};

}  // namespace subgc
