#pragma once

#include <string>
#include <vector>

namespace spreadnet::svg {

/// Minimal self-contained line-plot writer (polylines, axes, ticks, legend);
/// CSV remains the ground truth, plots are for eyeballing overlays.
class SvgPlot {
public:
    SvgPlot(std::string title, std::string x_label, std::string y_label);

    void add_line(const std::vector<double>& x, const std::vector<double>& y, const std::string& color,
                  const std::string& label, bool dashed = false);

    /// Shaded band between lo(x) and hi(x), drawn under the lines.
    void add_band(const std::vector<double>& x, const std::vector<double>& lo,
                  const std::vector<double>& hi, const std::string& color);

    std::string render() const;
    void write_file(const std::string& path) const;

private:
    struct Line {
        std::vector<double> x, y;
        std::string color, label;
        bool dashed;
    };
    struct Band {
        std::vector<double> x, lo, hi;
        std::string color;
    };

    std::string title_, x_label_, y_label_;
    std::vector<Line> lines_;
    std::vector<Band> bands_;
};

} // namespace spreadnet::svg
