#include "munk/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "munk/errors.hpp"

namespace munk {

SvgTrace to_svg_trace(const ConvergenceTrace& trace, std::string label) {
    SvgTrace t;
    t.label = std::move(label);
    for (const auto& r : trace.records) {
        t.iters.push_back(r.iter);
        t.objectives.push_back(r.objective);
    }
    return t;
}

namespace {

constexpr double kWidth = 800, kHeight = 500;
constexpr double kLeft = 70, kRight = 20, kTop = 20, kBottom = 50;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string gnum(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// Largest "nice" step (1, 2, or 5 times a power of ten) giving <= max_ticks
// intervals over the span.
double nice_step(double span, int max_ticks) {
    double raw = span / max_ticks;
    double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        if (mag * m >= raw)
            return mag * m;
    }
    return mag * 10.0;
}

} // namespace

std::string render_convergence_svg(const std::vector<SvgTrace>& traces) {
    if (traces.empty())
        throw InputError("svg: need at least one trace");

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& t : traces) {
        std::size_t usable = 0;
        for (std::size_t k = 0; k < t.iters.size(); ++k) {
            if (t.iters[k] < 1)
                continue; // log axis starts at iteration 1
            ++usable;
            const double lx = std::log10(static_cast<double>(t.iters[k]));
            xmin = std::min(xmin, lx);
            xmax = std::max(xmax, lx);
            ymin = std::min(ymin, t.objectives[k]);
            ymax = std::max(ymax, t.objectives[k]);
        }
        if (usable < 2)
            throw InputError("svg: trace '" + t.label + "' has fewer than 2 plottable points");
    }
    if (xmax == xmin)
        xmax = xmin + 1.0;
    if (ymax == ymin) {
        ymax += 0.5;
        ymin -= 0.5;
    }

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto px = [&](double lx) { return kLeft + (lx - xmin) / (xmax - xmin) * plot_w; };
    auto py = [&](double y) { return kTop + (ymax - y) / (ymax - ymin) * plot_h; };

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
    out << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";

    // axes box
    out << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(plot_w)
        << "\" height=\"" << num(plot_h)
        << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";

    // x ticks at integer decades
    for (int e = static_cast<int>(std::ceil(xmin)); e <= static_cast<int>(std::floor(xmax));
         ++e) {
        const double x = px(e);
        out << "<line x1=\"" << num(x) << "\" y1=\"" << num(kTop + plot_h) << "\" x2=\""
            << num(x) << "\" y2=\"" << num(kTop + plot_h + 6)
            << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << num(x) << "\" y=\"" << num(kTop + plot_h + 22)
            << "\" font-size=\"13\" text-anchor=\"middle\" font-family=\"sans-serif\">1e" << e
            << "</text>\n";
    }
    // y ticks on a nice grid
    const double ystep = nice_step(ymax - ymin, 6);
    for (double v = std::ceil(ymin / ystep) * ystep; v <= ymax + 1e-12 * ystep; v += ystep) {
        const double y = py(v);
        out << "<line x1=\"" << num(kLeft - 6) << "\" y1=\"" << num(y) << "\" x2=\""
            << num(kLeft) << "\" y2=\"" << num(y)
            << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << num(kLeft - 10) << "\" y=\"" << num(y + 4)
            << "\" font-size=\"13\" text-anchor=\"end\" font-family=\"sans-serif\">" << gnum(v)
            << "</text>\n";
    }

    out << "<text x=\"" << num(kLeft + plot_w / 2) << "\" y=\"" << num(kHeight - 10)
        << "\" font-size=\"14\" text-anchor=\"middle\" font-family=\"sans-serif\">iteration "
           "(log scale)</text>\n";
    out << "<text x=\"16\" y=\"" << num(kTop + plot_h / 2)
        << "\" font-size=\"14\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "transform=\"rotate(-90 16 "
        << num(kTop + plot_h / 2) << ")\">objective</text>\n";

    for (std::size_t t = 0; t < traces.size(); ++t) {
        const char* color = kPalette[t % (sizeof kPalette / sizeof kPalette[0])];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        bool first = true;
        for (std::size_t k = 0; k < traces[t].iters.size(); ++k) {
            if (traces[t].iters[k] < 1)
                continue;
            if (!first)
                out << ' ';
            first = false;
            out << num(px(std::log10(static_cast<double>(traces[t].iters[k])))) << ','
                << num(py(traces[t].objectives[k]));
        }
        out << "\"/>\n";
        // legend entry
        const double ly = kTop + 16 + 20 * static_cast<double>(t);
        out << "<line x1=\"" << num(kLeft + plot_w - 150) << "\" y1=\"" << num(ly) << "\" x2=\""
            << num(kLeft + plot_w - 120) << "\" y2=\"" << num(ly) << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << num(kLeft + plot_w - 112) << "\" y=\"" << num(ly + 4)
            << "\" font-size=\"13\" font-family=\"sans-serif\">" << traces[t].label
            << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

void render_convergence_svg(const std::vector<SvgTrace>& traces, const std::string& path,
                            const std::string& config_echo) {
    const std::string body = render_convergence_svg(traces);
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot write " + path);
    out << "<!-- munk-plot v1";
    if (!config_echo.empty())
        out << " | config: " << config_echo;
    out << " -->\n" << body;
    if (!out)
        throw IoError("write failed for " + path);
}

} // namespace munk
