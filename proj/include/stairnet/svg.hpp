#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace stairnet {

/// Minimal self-contained SVG line chart; no external plotting
/// dependency. Log-scale y drops nonpositive points.
class SvgChart {
public:
    SvgChart(std::string title, std::string x_label, std::string y_label, bool log_y = false)
        : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)),
          log_y_(log_y) {}

    void add_series(std::string name, std::vector<std::pair<double, double>> points) {
        series_.push_back({std::move(name), std::move(points)});
    }

    void render(std::ostream& os) const {
        const double width = 720, height = 480;
        const double ml = 70, mr = 150, mt = 40, mb = 55;
        const double pw = width - ml - mr, ph = height - mt - mb;

        double xmin = std::numeric_limits<double>::max(), xmax = -xmin;
        double ymin = std::numeric_limits<double>::max(), ymax = -ymin;
        for (const auto& s : series_)
            for (auto [x, y] : s.points) {
                if (log_y_ && y <= 0.0) continue;
                double yv = log_y_ ? std::log10(y) : y;
                xmin = std::min(xmin, x);
                xmax = std::max(xmax, x);
                ymin = std::min(ymin, yv);
                ymax = std::max(ymax, yv);
            }
        if (xmin > xmax) { xmin = 0; xmax = 1; }
        if (ymin > ymax) { ymin = 0; ymax = 1; }
        if (xmax == xmin) xmax = xmin + 1;
        if (ymax == ymin) { ymax += 0.5; ymin -= 0.5; }

        auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * pw; };
        auto py = [&](double yv) { return mt + (ymax - yv) / (ymax - ymin) * ph; };

        os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
           << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
        os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
        os << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
           << escape(title_) << "</text>\n";
        os << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\"" << ph
           << "\" fill=\"none\" stroke=\"black\"/>\n";

        const int ticks = 5;
        for (int i = 0; i <= ticks; ++i) {
            double fx = xmin + (xmax - xmin) * i / ticks;
            double fy = ymin + (ymax - ymin) * i / ticks;
            os << "<line x1=\"" << px(fx) << "\" y1=\"" << mt + ph << "\" x2=\"" << px(fx)
               << "\" y2=\"" << mt + ph + 5 << "\" stroke=\"black\"/>\n";
            os << "<text x=\"" << px(fx) << "\" y=\"" << mt + ph + 20
               << "\" text-anchor=\"middle\" font-size=\"11\">" << format(fx) << "</text>\n";
            os << "<line x1=\"" << ml - 5 << "\" y1=\"" << py(fy) << "\" x2=\"" << ml << "\" y2=\""
               << py(fy) << "\" stroke=\"black\"/>\n";
            os << "<text x=\"" << ml - 8 << "\" y=\"" << py(fy) + 4
               << "\" text-anchor=\"end\" font-size=\"11\">"
               << (log_y_ ? "1e" + format(fy) : format(fy)) << "</text>\n";
        }
        os << "<text x=\"" << ml + pw / 2 << "\" y=\"" << height - 12
           << "\" text-anchor=\"middle\" font-size=\"13\">" << escape(x_label_) << "</text>\n";
        os << "<text x=\"18\" y=\"" << mt + ph / 2
           << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 "
           << mt + ph / 2 << ")\">" << escape(y_label_) << "</text>\n";

        for (std::size_t si = 0; si < series_.size(); ++si) {
            const std::string color = palette(si);
            std::ostringstream pts;
            for (auto [x, y] : series_[si].points) {
                if (log_y_ && y <= 0.0) continue;
                double yv = log_y_ ? std::log10(y) : y;
                pts << px(x) << ',' << py(yv) << ' ';
            }
            os << "<polyline points=\"" << pts.str() << "\" fill=\"none\" stroke=\"" << color
               << "\" stroke-width=\"1.5\"/>\n";
            double ly = mt + 16 + 16 * static_cast<double>(si);
            os << "<line x1=\"" << ml + pw + 8 << "\" y1=\"" << ly << "\" x2=\"" << ml + pw + 28
               << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
            os << "<text x=\"" << ml + pw + 33 << "\" y=\"" << ly + 4 << "\" font-size=\"11\">"
               << escape(series_[si].name) << "</text>\n";
        }
        os << "</svg>\n";
    }

private:
    struct Series {
        std::string name;
        std::vector<std::pair<double, double>> points;
    };

    static std::string palette(std::size_t i) {
        static const char* colors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                       "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
        return colors[i % 10];
    }

    static std::string format(double v) {
        std::ostringstream os;
        os.precision(4);
        os << v;
        return os.str();
    }

    static std::string escape(const std::string& s) {
        std::string out;
        for (char c : s) {
            if (c == '&') out += "&amp;";
            else if (c == '<') out += "&lt;";
            else if (c == '>') out += "&gt;";
            else out += c;
        }
        return out;
    }

    std::string title_, x_label_, y_label_;
    bool log_y_;
    std::vector<Series> series_;
};

}  // namespace stairnet
