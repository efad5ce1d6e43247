#include "subgc/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "subgc/errors.hpp"

namespace subgc {

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    (void)ec;
    return std::string(buf, ptr);
}

CsvTable CsvTable::parse(const std::string& text) {
    CsvTable t;
    std::istringstream in(text);
    std::string line;
    bool first = true;
    auto split = [](const std::string& s) {
        std::vector<std::string> out;
        std::size_t start = 0;
        while (true) {
            std::size_t pos = s.find(',', start);
            if (pos == std::string::npos) {
                out.push_back(s.substr(start));
                break;
            }
            out.push_back(s.substr(start, pos - start));
            start = pos + 1;
        }
        return out;
    };
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (first) {
            t.header = split(line);
            first = false;
        } else {
            t.rows.push_back(split(line));
        }
    }
    if (first) throw UserError("CSV input has no header line");
    return t;
}

std::size_t CsvTable::column(const std::string& name) const {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw UserError("CSV column '" + name + "' not found");
    return static_cast<std::size_t>(it - header.begin());
}

namespace {

double parse_cell(const std::string& cell) {
    if (cell.empty()) return std::nan("");
    if (cell == "inf") return HUGE_VAL;
    if (cell == "-inf") return -HUGE_VAL;
    try {
        std::size_t pos = 0;
        double v = std::stod(cell, &pos);
        if (pos != cell.size()) return std::nan("");
        return v;
    } catch (const std::exception&) {
        return std::nan("");
    }
}

// Heckbert-style "nice number": 1, 2 or 5 times a power of ten.
double nice_num(double x, bool round) {
    const double expv = std::floor(std::log10(x));
    const double f = x / std::pow(10.0, expv);
    double nf;
    if (round)
        nf = f < 1.5 ? 1.0 : f < 3.0 ? 2.0 : f < 7.0 ? 5.0 : 10.0;
    else
        nf = f <= 1.0 ? 1.0 : f <= 2.0 ? 2.0 : f <= 5.0 ? 5.0 : 10.0;
    return nf * std::pow(10.0, expv);
}

std::string fmt2(double x) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.2f", x);
    return buf;
}

}  // namespace

std::string render_svg_chart(const CsvTable& table, const PlotSpec& spec) {
    if (table.rows.empty()) throw UserError("CSV body is empty");
    const std::size_t xi = table.column(spec.x_col);
    const std::size_t yi = table.column(spec.y_col);

    std::vector<std::pair<double, double>> pts;
    for (const auto& row : table.rows) {
        if (xi >= row.size() || yi >= row.size()) continue;
        double x = parse_cell(row[xi]);
        double y = parse_cell(row[yi]);
        if (!std::isfinite(x) || !std::isfinite(y)) continue;  // inf quantiles etc.
        if (spec.logx && x <= 0.0)
            throw UserError("log x axis requires positive values");
        if (spec.logy && y <= 0.0)
            throw UserError("log y axis requires positive values");
        pts.emplace_back(x, y);
    }
    if (pts.empty()) throw UserError("no plottable points in CSV body");

    auto transform = [](double v, bool log) { return log ? std::log10(v) : v; };
    double xlo = HUGE_VAL, xhi = -HUGE_VAL, ylo = HUGE_VAL, yhi = -HUGE_VAL;
    for (auto& [x, y] : pts) {
        xlo = std::min(xlo, transform(x, spec.logx));
        xhi = std::max(xhi, transform(x, spec.logx));
        ylo = std::min(ylo, transform(y, spec.logy));
        yhi = std::max(yhi, transform(y, spec.logy));
    }
    auto pad = [](double& lo, double& hi) {
        if (hi - lo <= 0.0) {
            const double d = std::max(1.0, std::abs(hi)) * 0.5;
            lo -= d, hi += d;
        } else {
            const double d = (hi - lo) * 0.05;
            lo -= d, hi += d;
        }
    };
    pad(xlo, xhi);
    pad(ylo, yhi);

    constexpr double W = 640, H = 480, ML = 70, MR = 20, MT = 30, MB = 50;
    auto sx = [&](double x) {
        return ML + (transform(x, spec.logx) - xlo) / (xhi - xlo) * (W - ML - MR);
    };
    auto sy = [&](double y) {
        return H - MB - (transform(y, spec.logy) - ylo) / (yhi - ylo) * (H - MT - MB);
    };

    // tick positions in data space
    auto ticks = [&](double lo, double hi, bool log) {
        std::vector<double> out;
        if (log) {
            for (double e = std::ceil(lo); e <= std::floor(hi); e += 1.0)
                out.push_back(std::pow(10.0, e));
            if (out.empty()) out.push_back(std::pow(10.0, (lo + hi) / 2.0));
        } else {
            const double step = nice_num((hi - lo) / 4.0, true);
            for (double v = std::ceil(lo / step) * step; v <= hi + step * 1e-9; v += step)
                out.push_back(std::abs(v) < step * 1e-9 ? 0.0 : v);
        }
        return out;
    };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << W
        << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    svg << "<rect x=\"0\" y=\"0\" width=\"" << W << "\" height=\"" << H
        << "\" fill=\"white\"/>\n";
    if (!spec.title.empty())
        svg << "<text x=\"" << fmt2(W / 2) << "\" y=\"20\" text-anchor=\"middle\" "
               "font-family=\"monospace\" font-size=\"14\">" << spec.title << "</text>\n";

    for (double t : ticks(xlo, xhi, spec.logx)) {
        const double px = sx(t);
        svg << "<line x1=\"" << fmt2(px) << "\" y1=\"" << fmt2(H - MB) << "\" x2=\""
            << fmt2(px) << "\" y2=\"" << fmt2(H - MB + 5) << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << fmt2(px) << "\" y=\"" << fmt2(H - MB + 18)
            << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"11\">"
            << format_double(t) << "</text>\n";
    }
    for (double t : ticks(ylo, yhi, spec.logy)) {
        const double py = sy(t);
        svg << "<line x1=\"" << fmt2(ML - 5) << "\" y1=\"" << fmt2(py) << "\" x2=\""
            << fmt2(ML) << "\" y2=\"" << fmt2(py) << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << fmt2(ML - 8) << "\" y=\"" << fmt2(py + 4)
            << "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"11\">"
            << format_double(t) << "</text>\n";
    }
    // axes
    svg << "<line x1=\"" << fmt2(ML) << "\" y1=\"" << fmt2(H - MB) << "\" x2=\""
        << fmt2(W - MR) << "\" y2=\"" << fmt2(H - MB) << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << fmt2(ML) << "\" y1=\"" << fmt2(MT) << "\" x2=\"" << fmt2(ML)
        << "\" y2=\"" << fmt2(H - MB) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << fmt2((ML + W - MR) / 2) << "\" y=\"" << fmt2(H - 10)
        << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"12\">"
        << spec.x_col << "</text>\n";
    svg << "<text x=\"15\" y=\"" << fmt2((MT + H - MB) / 2)
        << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"12\" "
           "transform=\"rotate(-90 15 " << fmt2((MT + H - MB) / 2) << ")\">"
        << spec.y_col << "</text>\n";

    svg << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) svg << ' ';
        svg << fmt2(sx(pts[i].first)) << ',' << fmt2(sy(pts[i].second));
    }
    svg << "\"/>\n";
    for (auto& [x, y] : pts)
        svg << "<circle cx=\"" << fmt2(sx(x)) << "\" cy=\"" << fmt2(sy(y))
            << "\" r=\"2.5\" fill=\"steelblue\"/>\n";
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace subgc
