#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace pricewave {

/// Minimal self-contained SVG line plot: fixed viewbox, axes with tick
/// labels, one polyline per series.  Good enough for the toolkit's
/// curve and time-series figures without an external renderer.
class SvgLinePlot {
public:
    SvgLinePlot(std::string title, std::string x_label, std::string y_label)
        : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

    void add_series(const std::vector<double>& x, const std::vector<double>& y,
                    const std::string& color) {
        if (x.size() != y.size()) throw std::invalid_argument("SvgLinePlot: size mismatch");
        series_.push_back({x, y, color});
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (!std::isfinite(x[i]) || !std::isfinite(y[i])) continue;
            x_min_ = std::min(x_min_, x[i]);
            x_max_ = std::max(x_max_, x[i]);
            y_min_ = std::min(y_min_, y[i]);
            y_max_ = std::max(y_max_, y[i]);
        }
    }

    std::string str() const {
        double x0 = x_min_, x1 = x_max_, y0 = y_min_, y1 = y_max_;
        if (!(x0 < x1)) { x0 -= 1.0; x1 += 1.0; }
        if (!(y0 < y1)) { y0 -= 1.0; y1 += 1.0; }

        std::ostringstream svg;
        svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << W << ' ' << H
            << "\">\n";
        svg << "<rect x=\"0\" y=\"0\" width=\"" << W << "\" height=\"" << H
            << "\" fill=\"white\"/>\n";
        svg << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
            << title_ << "</text>\n";

        const auto sx = [&](double x) { return ML + (x - x0) / (x1 - x0) * (W - ML - MR); };
        const auto sy = [&](double y) { return H - MB - (y - y0) / (y1 - y0) * (H - MT - MB); };

        // frame
        svg << "<rect x=\"" << ML << "\" y=\"" << MT << "\" width=\"" << (W - ML - MR)
            << "\" height=\"" << (H - MT - MB)
            << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";

        // ticks
        for (int k = 0; k <= 5; ++k) {
            const double xv = x0 + (x1 - x0) * k / 5.0;
            const double yv = y0 + (y1 - y0) * k / 5.0;
            svg << "<line x1=\"" << sx(xv) << "\" y1=\"" << H - MB << "\" x2=\"" << sx(xv)
                << "\" y2=\"" << H - MB + 5 << "\" stroke=\"black\"/>\n";
            svg << "<text x=\"" << sx(xv) << "\" y=\"" << H - MB + 20
                << "\" text-anchor=\"middle\" font-size=\"11\">" << tick(xv) << "</text>\n";
            svg << "<line x1=\"" << ML - 5 << "\" y1=\"" << sy(yv) << "\" x2=\"" << ML
                << "\" y2=\"" << sy(yv) << "\" stroke=\"black\"/>\n";
            svg << "<text x=\"" << ML - 8 << "\" y=\"" << sy(yv) + 4
                << "\" text-anchor=\"end\" font-size=\"11\">" << tick(yv) << "</text>\n";
        }
        // zero lines when visible
        if (y0 < 0.0 && 0.0 < y1)
            svg << "<line x1=\"" << ML << "\" y1=\"" << sy(0.0) << "\" x2=\"" << W - MR
                << "\" y2=\"" << sy(0.0) << "\" stroke=\"#bbbbbb\" stroke-dasharray=\"4\"/>\n";

        svg << "<text x=\"" << W / 2 << "\" y=\"" << H - 8
            << "\" text-anchor=\"middle\" font-size=\"13\">" << x_label_ << "</text>\n";
        svg << "<text x=\"16\" y=\"" << H / 2
            << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 " << H / 2
            << ")\">" << y_label_ << "</text>\n";

        for (const auto& s : series_) {
            svg << "<polyline fill=\"none\" stroke=\"" << s.color
                << "\" stroke-width=\"1.5\" points=\"";
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
                svg << sx(s.x[i]) << ',' << sy(s.y[i]) << ' ';
            }
            svg << "\"/>\n";
        }
        svg << "</svg>\n";
        return svg.str();
    }

    void write(const std::string& path) const {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + path);
        out << str();
        if (!out) throw std::runtime_error("short write to " + path);
    }

private:
    struct Series {
        std::vector<double> x, y;
        std::string color;
    };

    static std::string tick(double v) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.4g", v);
        return buf;
    }

    static constexpr int W = 800, H = 500;
    static constexpr int ML = 70, MR = 20, MT = 40, MB = 50;

    std::string title_, x_label_, y_label_;
    std::vector<Series> series_;
    double x_min_ = std::numeric_limits<double>::infinity();
    double x_max_ = -std::numeric_limits<double>::infinity();
    double y_min_ = std::numeric_limits<double>::infinity();
    double y_max_ = -std::numeric_limits<double>::infinity();
};

}  // namespace pricewave
