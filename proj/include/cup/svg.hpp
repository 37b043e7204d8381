#pragma once

// A minimal SVG line-chart writer for the sweep and tail reports.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cup/errors.hpp"

namespace cup::svg {

struct Series {
    std::string label;
    std::string color = "#1f6fb2";
    bool line = true;
    bool markers = false;
    std::vector<std::pair<double, double>> points;
};

struct Chart {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    std::vector<Series> series;

    void write(const std::string& path) const {
        std::ofstream os(path);
        require_config(static_cast<bool>(os), "svg: cannot open " + path);
        write(os);
    }

    void write(std::ostream& os) const {
        const double width = 720, height = 480;
        const double ml = 70, mr = 20, mt = 40, mb = 55;
        double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
        for (const auto& s : series)
            for (auto [x, y] : s.points) {
                const double xv = log_x ? std::log10(x) : x;
                xmin = std::min(xmin, xv);
                xmax = std::max(xmax, xv);
                ymin = std::min(ymin, y);
                ymax = std::max(ymax, y);
            }
        if (xmin > xmax) {
            xmin = 0;
            xmax = 1;
        }
        if (ymin > ymax) {
            ymin = 0;
            ymax = 1;
        }
        if (xmax - xmin < 1e-12) {
            xmin -= 0.5;
            xmax += 0.5;
        }
        const double pad = 0.06 * (ymax - ymin + 1e-12);
        ymin -= pad;
        ymax += pad;
        auto px = [&](double x) {
            const double xv = log_x ? std::log10(x) : x;
            return ml + (xv - xmin) / (xmax - xmin) * (width - ml - mr);
        };
        auto py = [&](double y) {
            return height - mb - (y - ymin) / (ymax - ymin) * (height - mt - mb);
        };
        os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
           << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
        os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
        os << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
           << "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";
        // axes
        os << "<line x1=\"" << ml << "\" y1=\"" << height - mb << "\" x2=\"" << width - mr
           << "\" y2=\"" << height - mb << "\" stroke=\"black\"/>\n";
        os << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\""
           << height - mb << "\" stroke=\"black\"/>\n";
        for (int i = 0; i <= 5; ++i) {
            const double fx = xmin + (xmax - xmin) * i / 5;
            const double vx = log_x ? std::pow(10.0, fx) : fx;
            const double X = ml + (fx - xmin) / (xmax - xmin) * (width - ml - mr);
            os << "<line x1=\"" << X << "\" y1=\"" << height - mb << "\" x2=\"" << X
               << "\" y2=\"" << height - mb + 5 << "\" stroke=\"black\"/>\n";
            os << "<text x=\"" << X << "\" y=\"" << height - mb + 20
               << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
               << format_num(vx) << "</text>\n";
            const double fy = ymin + (ymax - ymin) * i / 5;
            const double Y = py(fy);
            os << "<line x1=\"" << ml - 5 << "\" y1=\"" << Y << "\" x2=\"" << ml << "\" y2=\""
               << Y << "\" stroke=\"black\"/>\n";
            os << "<text x=\"" << ml - 8 << "\" y=\"" << Y + 4
               << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
               << format_num(fy) << "</text>\n";
        }
        os << "<text x=\"" << (ml + width - mr) / 2 << "\" y=\"" << height - 12
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << x_label
           << "</text>\n";
        os << "<text x=\"18\" y=\"" << (mt + height - mb) / 2
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
           << "transform=\"rotate(-90 18 " << (mt + height - mb) / 2 << ")\">" << y_label
           << "</text>\n";
        double legend_y = mt + 8;
        for (const auto& s : series) {
            if (s.line && s.points.size() >= 2) {
                os << "<polyline fill=\"none\" stroke=\"" << s.color
                   << "\" stroke-width=\"1.8\" points=\"";
                for (auto [x, y] : s.points) os << px(x) << "," << py(y) << " ";
                os << "\"/>\n";
            }
            if (s.markers) {
                for (auto [x, y] : s.points)
                    os << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y)
                       << "\" r=\"3.5\" fill=\"" << s.color << "\"/>\n";
            }
            os << "<text x=\"" << width - mr - 8 << "\" y=\"" << legend_y
               << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" fill=\""
               << s.color << "\">" << s.label << "</text>\n";
            legend_y += 16;
        }
        os << "</svg>\n";
    }

  private:
    static std::string format_num(double v) {
        std::ostringstream os;
        os.precision(4);
        os << v;
        return os.str();
    }
};

}  // namespace cup::svg
