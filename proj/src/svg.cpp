#include "planpred/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "planpred/errors.hpp"

namespace planpred {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string escape_text(const std::string& text) {
    std::string out;
    for (char ch : text) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += ch;
        }
    }
    return out;
}

std::string clip_label(const std::string& label, std::size_t max_chars) {
    if (label.size() <= max_chars) return label;
    return label.substr(0, max_chars - 1) + "~";
}

}  // namespace

std::string grouped_bar_chart_svg(const std::string& title,
                                  const std::vector<std::string>& group_labels,
                                  const std::vector<ChartSeries>& series) {
    if (group_labels.empty() || series.empty()) throw DomainError("empty chart");
    for (const ChartSeries& s : series) {
        if (s.values.size() != group_labels.size()) {
            throw DomainError("chart series length does not match group count");
        }
    }

    const double width = 640.0, height = 360.0;
    const double left = 50.0, right = 20.0, top = 40.0, bottom = 60.0;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;
    const double group_w = plot_w / static_cast<double>(group_labels.size());
    const double bar_w = group_w * 0.8 / static_cast<double>(series.size());

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\""
        << num(height) << "\" viewBox=\"0 0 " << num(width) << " " << num(height) << "\">\n";
    svg << "  <rect width=\"" << num(width) << "\" height=\"" << num(height) << "\" fill=\"white\"/>\n";
    svg << "  <text x=\"" << num(width / 2) << "\" y=\"22\" font-family=\"sans-serif\" font-size=\"14\""
        << " text-anchor=\"middle\">" << escape_text(title) << "</text>\n";

    // Horizontal gridlines and y labels at 0, 0.25, ..., 1.
    for (int i = 0; i <= 4; ++i) {
        const double frac = static_cast<double>(i) / 4.0;
        const double y = top + plot_h * (1.0 - frac);
        svg << "  <line x1=\"" << num(left) << "\" y1=\"" << num(y) << "\" x2=\"" << num(left + plot_w)
            << "\" y2=\"" << num(y) << "\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";
        svg << "  <text x=\"" << num(left - 6) << "\" y=\"" << num(y + 4)
            << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\">" << num(frac)
            << "</text>\n";
    }

    for (std::size_t g = 0; g < group_labels.size(); ++g) {
        const double group_x = left + group_w * static_cast<double>(g) + group_w * 0.1;
        for (std::size_t s = 0; s < series.size(); ++s) {
            const double v = std::clamp(series[s].values[g], 0.0, 1.0);
            const double bar_h = plot_h * v;
            const double x = group_x + bar_w * static_cast<double>(s);
            const double y = top + plot_h - bar_h;
            svg << "  <rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(bar_w)
                << "\" height=\"" << num(bar_h) << "\" fill=\"" << series[s].color << "\"/>\n";
        }
        svg << "  <text x=\"" << num(group_x + group_w * 0.4) << "\" y=\"" << num(top + plot_h + 16)
            << "\" font-family=\"sans-serif\" font-size=\"9\" text-anchor=\"middle\">"
            << escape_text(clip_label(group_labels[g], 26)) << "</text>\n";
    }

    // Axis frame.
    svg << "  <line x1=\"" << num(left) << "\" y1=\"" << num(top) << "\" x2=\"" << num(left)
        << "\" y2=\"" << num(top + plot_h) << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    svg << "  <line x1=\"" << num(left) << "\" y1=\"" << num(top + plot_h) << "\" x2=\""
        << num(left + plot_w) << "\" y2=\"" << num(top + plot_h)
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";

    // Legend along the bottom edge.
    double legend_x = left;
    const double legend_y = height - 14.0;
    for (const ChartSeries& s : series) {
        svg << "  <rect x=\"" << num(legend_x) << "\" y=\"" << num(legend_y - 9) << "\" width=\"10\""
            << " height=\"10\" fill=\"" << s.color << "\"/>\n";
        svg << "  <text x=\"" << num(legend_x + 14) << "\" y=\"" << num(legend_y)
            << "\" font-family=\"sans-serif\" font-size=\"10\">" << escape_text(s.label) << "</text>\n";
        legend_x += 14.0 + 7.0 * static_cast<double>(s.label.size()) + 16.0;
    }

    svg << "</svg>\n";
    return svg.str();
}

}  // namespace planpred
