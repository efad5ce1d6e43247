#include "subgc/sample.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>

#include "subgc/errors.hpp"
#include "subgc/io.hpp"

namespace subgc {

Sample::Sample(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw UserError("sample must contain at least one value");
    for (double v : values_) {
        if (!(v >= 0.0) || !std::isfinite(v))
            throw UserError("sample values must be finite and nonnegative");
    }
    std::sort(values_.begin(), values_.end());
}

Sample Sample::load(std::istream& in) {
    std::vector<double> values;
    std::string line;
    while (std::getline(in, line)) {
        // trim whitespace
        auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        auto e = line.find_last_not_of(" \t\r");
        std::string token = line.substr(b, e - b + 1);
        std::size_t pos = 0;
        double v;
        try {
            v = std::stod(token, &pos);
        } catch (const std::exception&) {
            throw UserError("invalid sample value: '" + token + "'");
        }
        if (pos != token.size()) throw UserError("invalid sample value: '" + token + "'");
        values.push_back(v);
    }
    return Sample(std::move(values));
}

void Sample::save(std::ostream& out) const {
    for (double v : values_) out << format_double(v) << '\n';
}

double Sample::cdf(double t) const {
    auto it = std::upper_bound(values_.begin(), values_.end(), t);
    return static_cast<double>(it - values_.begin()) / static_cast<double>(n());
}

double Sample::cdf_strict(double t) const {
    auto it = std::lower_bound(values_.begin(), values_.end(), t);
    return static_cast<double>(it - values_.begin()) / static_cast<double>(n());
}

}  // namespace subgc
