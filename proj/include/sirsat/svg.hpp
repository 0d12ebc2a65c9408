#pragma once

#include <string>
#include <vector>

namespace sirsat {

// Minimal self-contained SVG writer: polylines, points, filled cells and axis
// labels on a single plot area.  Enough to render branch diagrams, region
// maps, trajectories and phase portraits without a plotting dependency.
class SvgPlot {
public:
    SvgPlot(std::string title, std::string x_label, std::string y_label,
            int width = 720, int height = 520);

    void add_polyline(const std::vector<double>& x, const std::vector<double>& y,
                      const std::string& color, double stroke_width = 1.5,
                      const std::string& legend = "");
    void add_points(const std::vector<double>& x, const std::vector<double>& y,
                    const std::string& color, double radius = 2.0,
                    const std::string& legend = "");
    // Filled rectangle given in data coordinates (region-map cells).
    void add_cell(double x0, double y0, double x1, double y1, const std::string& color);
    void add_label(double x, double y, const std::string& text, const std::string& color = "#000");

    std::string render() const;
    void write(const std::string& path) const;

private:
    struct Polyline { std::vector<double> x, y; std::string color; double w; std::string legend; };
    struct Points { std::vector<double> x, y; std::string color; double r; std::string legend; };
    struct Cell { double x0, y0, x1, y1; std::string color; };
    struct Label { double x, y; std::string text, color; };

    void extend_range(const std::vector<double>& x, const std::vector<double>& y);

    std::string title_, x_label_, y_label_;
    int width_, height_;
    double xmin_, xmax_, ymin_, ymax_;
    bool has_data_ = false;
    std::vector<Polyline> lines_;
    std::vector<Points> points_;
    std::vector<Cell> cells_;
    std::vector<Label> labels_;
};

}  // namespace sirsat
