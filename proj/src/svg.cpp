#include "spreadnet/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace spreadnet::svg {

namespace {

constexpr double kWidth = 720, kHeight = 480;
constexpr double kLeft = 70, kRight = 30, kTop = 40, kBottom = 55;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

// Round tick spacing to 1/2/5 times a power of ten.
std::vector<double> ticks(double lo, double hi, int target = 6) {
    std::vector<double> out;
    const double span = hi - lo;
    if (!(span > 0)) return {lo};
    double raw = span / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double mult : {1.0, 2.0, 5.0, 10.0})
        if (raw <= mult * mag) {
            step = mult * mag;
            break;
        }
    const double first = std::ceil(lo / step) * step;
    for (double v = first; v <= hi + 1e-9 * span; v += step) out.push_back(v);
    return out;
}

} // namespace

SvgPlot::SvgPlot(std::string title, std::string x_label, std::string y_label)
    : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

void SvgPlot::add_line(const std::vector<double>& x, const std::vector<double>& y,
                       const std::string& color, const std::string& label, bool dashed) {
    if (x.size() != y.size()) throw std::invalid_argument("svg: x/y size mismatch");
    lines_.push_back(Line{x, y, color, label, dashed});
}

void SvgPlot::add_band(const std::vector<double>& x, const std::vector<double>& lo,
                       const std::vector<double>& hi, const std::string& color) {
    if (x.size() != lo.size() || x.size() != hi.size())
        throw std::invalid_argument("svg: band size mismatch");
    bands_.push_back(Band{x, lo, hi, color});
}

std::string SvgPlot::render() const {
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    auto eat = [&](const std::vector<double>& xs, const std::vector<double>& ys) {
        for (double v : xs) {
            xmin = std::min(xmin, v);
            xmax = std::max(xmax, v);
        }
        for (double v : ys) {
            ymin = std::min(ymin, v);
            ymax = std::max(ymax, v);
        }
    };
    for (const auto& l : lines_) eat(l.x, l.y);
    for (const auto& b : bands_) {
        eat(b.x, b.lo);
        eat(b.x, b.hi);
    }
    if (!std::isfinite(xmin)) {
        xmin = 0;
        xmax = 1;
        ymin = 0;
        ymax = 1;
    }
    if (xmax == xmin) xmax = xmin + 1;
    if (ymax == ymin) ymax = ymin + 1;
    const double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * plot_w; };
    auto py = [&](double y) { return kTop + plot_h - (y - ymin) / (ymax - ymin) * plot_h; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
       << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\" "
          "font-family=\"sans-serif\">"
       << title_ << "</text>\n";

    for (const auto& b : bands_) {
        os << "<polygon fill=\"" << b.color << "\" fill-opacity=\"0.25\" stroke=\"none\" points=\"";
        for (std::size_t i = 0; i < b.x.size(); ++i) os << fmt(px(b.x[i])) << ',' << fmt(py(b.lo[i])) << ' ';
        for (std::size_t i = b.x.size(); i-- > 0;) os << fmt(px(b.x[i])) << ',' << fmt(py(b.hi[i])) << ' ';
        os << "\"/>\n";
    }

    // Axes with ticks and numeric labels.
    os << "<g stroke=\"black\" stroke-width=\"1\">\n";
    os << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << kLeft + plot_w
       << "\" y2=\"" << kTop + plot_h << "\"/>\n";
    os << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
       << kTop + plot_h << "\"/>\n";
    os << "</g>\n";
    for (double v : ticks(xmin, xmax)) {
        os << "<line stroke=\"black\" x1=\"" << fmt(px(v)) << "\" y1=\"" << kTop + plot_h << "\" x2=\""
           << fmt(px(v)) << "\" y2=\"" << kTop + plot_h + 5 << "\"/>\n";
        os << "<text x=\"" << fmt(px(v)) << "\" y=\"" << kTop + plot_h + 20
           << "\" text-anchor=\"middle\" font-size=\"11\" font-family=\"sans-serif\">" << fmt(v)
           << "</text>\n";
    }
    for (double v : ticks(ymin, ymax)) {
        os << "<line stroke=\"black\" x1=\"" << kLeft - 5 << "\" y1=\"" << fmt(py(v)) << "\" x2=\"" << kLeft
           << "\" y2=\"" << fmt(py(v)) << "\"/>\n";
        os << "<text x=\"" << kLeft - 8 << "\" y=\"" << fmt(py(v) + 4)
           << "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\">" << fmt(v) << "</text>\n";
    }
    os << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 12
       << "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\">" << x_label_
       << "</text>\n";
    os << "<text x=\"18\" y=\"" << kTop + plot_h / 2
       << "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\" transform=\"rotate(-90 18 "
       << kTop + plot_h / 2 << ")\">" << y_label_ << "</text>\n";

    for (const auto& l : lines_) {
        os << "<polyline fill=\"none\" stroke=\"" << l.color << "\" stroke-width=\"1.8\"";
        if (l.dashed) os << " stroke-dasharray=\"6 4\"";
        os << " points=\"";
        for (std::size_t i = 0; i < l.x.size(); ++i) os << fmt(px(l.x[i])) << ',' << fmt(py(l.y[i])) << ' ';
        os << "\"/>\n";
    }

    double ly = kTop + 10;
    for (const auto& l : lines_) {
        if (l.label.empty()) continue;
        const double lx = kLeft + plot_w - 150;
        os << "<line stroke=\"" << l.color << "\" stroke-width=\"1.8\"";
        if (l.dashed) os << " stroke-dasharray=\"6 4\"";
        os << " x1=\"" << lx << "\" y1=\"" << ly << "\" x2=\"" << lx + 26 << "\" y2=\"" << ly << "\"/>\n";
        os << "<text x=\"" << lx + 32 << "\" y=\"" << ly + 4
           << "\" font-size=\"12\" font-family=\"sans-serif\">" << l.label << "</text>\n";
        ly += 18;
    }
    os << "</svg>\n";
    return os.str();
}

void SvgPlot::write_file(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << render();
}

} // namespace spreadnet::svg
