#include "sirsat/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sirsat {

namespace {

constexpr int kMarginL = 70, kMarginR = 20, kMarginT = 40, kMarginB = 50;

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

SvgPlot::SvgPlot(std::string title, std::string x_label, std::string y_label, int width,
                 int height)
    : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)),
      width_(width), height_(height), xmin_(0), xmax_(1), ymin_(0), ymax_(1) {}

void SvgPlot::extend_range(const std::vector<double>& x, const std::vector<double>& y) {
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!std::isfinite(x[i]) || !std::isfinite(y[i])) continue;
        if (!has_data_) {
            xmin_ = xmax_ = x[i];
            ymin_ = ymax_ = y[i];
            has_data_ = true;
        } else {
            xmin_ = std::min(xmin_, x[i]);
            xmax_ = std::max(xmax_, x[i]);
            ymin_ = std::min(ymin_, y[i]);
            ymax_ = std::max(ymax_, y[i]);
        }
    }
}

void SvgPlot::add_polyline(const std::vector<double>& x, const std::vector<double>& y,
                           const std::string& color, double stroke_width,
                           const std::string& legend) {
    if (x.size() != y.size()) throw std::invalid_argument("polyline size mismatch");
    extend_range(x, y);
    lines_.push_back({x, y, color, stroke_width, legend});
}

void SvgPlot::add_points(const std::vector<double>& x, const std::vector<double>& y,
                         const std::string& color, double radius, const std::string& legend) {
    if (x.size() != y.size()) throw std::invalid_argument("points size mismatch");
    extend_range(x, y);
    points_.push_back({x, y, color, radius, legend});
}

void SvgPlot::add_cell(double x0, double y0, double x1, double y1, const std::string& color) {
    extend_range({x0, x1}, {y0, y1});
    cells_.push_back({x0, y0, x1, y1, color});
}

void SvgPlot::add_label(double x, double y, const std::string& text, const std::string& color) {
    labels_.push_back({x, y, text, color});
}

std::string SvgPlot::render() const {
    double xmin = xmin_, xmax = xmax_, ymin = ymin_, ymax = ymax_;
    if (xmax == xmin) xmax = xmin + 1.0;
    if (ymax == ymin) ymax = ymin + 1.0;
    const double pad_x = 0.02 * (xmax - xmin);
    const double pad_y = 0.05 * (ymax - ymin);
    xmin -= pad_x;
    xmax += pad_x;
    ymin -= pad_y;
    ymax += pad_y;

    const double pw = width_ - kMarginL - kMarginR;
    const double ph = height_ - kMarginT - kMarginB;
    auto px = [&](double x) { return kMarginL + (x - xmin) / (xmax - xmin) * pw; };
    auto py = [&](double y) { return kMarginT + (1.0 - (y - ymin) / (ymax - ymin)) * ph; };

    std::ostringstream os;
    os.precision(8);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width_ << "\" height=\""
       << height_ << "\" viewBox=\"0 0 " << width_ << " " << height_ << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    for (const Cell& c : cells_) {
        const double x0 = px(std::min(c.x0, c.x1)), x1 = px(std::max(c.x0, c.x1));
        const double y0 = py(std::max(c.y0, c.y1)), y1 = py(std::min(c.y0, c.y1));
        os << "<rect x=\"" << x0 << "\" y=\"" << y0 << "\" width=\"" << x1 - x0
           << "\" height=\"" << y1 - y0 << "\" fill=\"" << c.color << "\"/>\n";
    }

    // axes
    os << "<rect x=\"" << kMarginL << "\" y=\"" << kMarginT << "\" width=\"" << pw
       << "\" height=\"" << ph << "\" fill=\"none\" stroke=\"#333\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double fx = xmin + (xmax - xmin) * i / 5.0;
        const double fy = ymin + (ymax - ymin) * i / 5.0;
        os << "<text x=\"" << px(fx) << "\" y=\"" << height_ - kMarginB + 18
           << "\" font-size=\"11\" text-anchor=\"middle\" fill=\"#333\">" << fx
           << "</text>\n";
        os << "<text x=\"" << kMarginL - 6 << "\" y=\"" << py(fy) + 4
           << "\" font-size=\"11\" text-anchor=\"end\" fill=\"#333\">" << fy << "</text>\n";
        os << "<line x1=\"" << px(fx) << "\" y1=\"" << kMarginT + ph << "\" x2=\"" << px(fx)
           << "\" y2=\"" << kMarginT + ph + 4 << "\" stroke=\"#333\"/>\n";
        os << "<line x1=\"" << kMarginL - 4 << "\" y1=\"" << py(fy) << "\" x2=\"" << kMarginL
           << "\" y2=\"" << py(fy) << "\" stroke=\"#333\"/>\n";
    }
    os << "<text x=\"" << kMarginL + pw / 2 << "\" y=\"" << height_ - 12
       << "\" font-size=\"13\" text-anchor=\"middle\">" << escape(x_label_) << "</text>\n";
    os << "<text x=\"16\" y=\"" << kMarginT + ph / 2
       << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
       << kMarginT + ph / 2 << ")\">" << escape(y_label_) << "</text>\n";
    os << "<text x=\"" << width_ / 2 << "\" y=\"22\" font-size=\"15\" text-anchor=\"middle\">"
       << escape(title_) << "</text>\n";

    int legend_row = 0;
    auto legend = [&](const std::string& text, const std::string& color) {
        if (text.empty()) return;
        const double ly = kMarginT + 14 + 16 * legend_row++;
        os << "<rect x=\"" << kMarginL + pw - 150 << "\" y=\"" << ly - 9
           << "\" width=\"10\" height=\"10\" fill=\"" << color << "\"/>\n";
        os << "<text x=\"" << kMarginL + pw - 136 << "\" y=\"" << ly
           << "\" font-size=\"11\">" << escape(text) << "</text>\n";
    };

    for (const Polyline& l : lines_) {
        os << "<polyline fill=\"none\" stroke=\"" << l.color << "\" stroke-width=\"" << l.w
           << "\" points=\"";
        for (std::size_t i = 0; i < l.x.size(); ++i) {
            if (!std::isfinite(l.x[i]) || !std::isfinite(l.y[i])) continue;
            os << px(l.x[i]) << ',' << py(l.y[i]) << ' ';
        }
        os << "\"/>\n";
        legend(l.legend, l.color);
    }
    for (const Points& ptset : points_) {
        for (std::size_t i = 0; i < ptset.x.size(); ++i) {
            if (!std::isfinite(ptset.x[i]) || !std::isfinite(ptset.y[i])) continue;
            os << "<circle cx=\"" << px(ptset.x[i]) << "\" cy=\"" << py(ptset.y[i])
               << "\" r=\"" << ptset.r << "\" fill=\"" << ptset.color << "\"/>\n";
        }
        legend(ptset.legend, ptset.color);
    }
    for (const Label& lb : labels_) {
        os << "<text x=\"" << px(lb.x) << "\" y=\"" << py(lb.y)
           << "\" font-size=\"13\" text-anchor=\"middle\" fill=\"" << lb.color << "\">"
           << escape(lb.text) << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

void SvgPlot::write(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write SVG: " + path);
    out << render();
}

}  // namespace sirsat
