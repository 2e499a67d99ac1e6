#include "fairkit/report.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "fairkit/error.hpp"
#include "fairkit/io.hpp"

namespace fairkit {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 400.0;
constexpr double kMargin = 40.0;

std::string escape(const std::string& text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string num(double v) {
    std::ostringstream s;
    s.setf(std::ios::fixed);
    s.precision(2);
    s << v;
    return s.str();
}

void open_svg(std::ostringstream& out, const std::string& title) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
    out << "<title>" << escape(title) << "</title>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" << escape(title)
        << "</text>\n";
    out << "<line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin << "\" x2=\"" << kWidth - kMargin
        << "\" y2=\"" << kHeight - kMargin << "\" stroke=\"black\"/>\n";
}

}  // namespace

std::string svg_bar_chart(const std::string& title, std::span<const Bar> bars) {
    std::ostringstream out;
    open_svg(out, title);
    double top = 0.0;
    for (const auto& b : bars) {
        top = std::max(top, b.value);
    }
    const double plot_w = kWidth - 2 * kMargin;
    const double plot_h = kHeight - 2 * kMargin - 10;
    const double slot = bars.empty() ? plot_w : plot_w / static_cast<double>(bars.size());
    for (std::size_t i = 0; i < bars.size(); ++i) {
        const double h = top > 0 ? plot_h * bars[i].value / top : 0.0;
        const double x = kMargin + slot * static_cast<double>(i);
        out << "<rect class=\"bar\" x=\"" << num(x + slot * 0.1) << "\" y=\"" << num(kHeight - kMargin - h)
            << "\" width=\"" << num(slot * 0.8) << "\" height=\"" << num(h) << "\" fill=\"steelblue\">"
            << "<title>" << escape(bars[i].label) << ": " << io::format_double(bars[i].value) << "</title></rect>\n";
        if (bars.size() <= 120) {
            out << "<text x=\"" << num(x + slot / 2) << "\" y=\"" << kHeight - kMargin + 12
                << "\" text-anchor=\"middle\" font-size=\"8\">" << escape(bars[i].label) << "</text>\n";
        }
    }
    out << "</svg>\n";
    return out.str();
}

std::string age_histogram_svg(std::span<const Record> records) {
    std::map<int, std::size_t> per_age;
    for (const auto& r : records) {
        ++per_age[r.age];
    }
    std::vector<Bar> bars;
    for (const auto& [age, n] : per_age) {
        bars.push_back({std::to_string(age), static_cast<double>(n)});
    }
    return svg_bar_chart("Samples per age", bars);
}

std::string llr_histogram_svg(std::span<const Series> series, int bins) {
    if (bins < 1) {
        throw ConfigError("histogram needs at least one bin");
    }
    double lo = INFINITY;
    double hi = -INFINITY;
    for (const auto& s : series) {
        for (double v : s.values) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    std::ostringstream out;
    open_svg(out, "LLR distribution");
    if (!(lo <= hi)) {
        out << "</svg>\n";
        return out.str();
    }
    const double span = hi > lo ? hi - lo : 1.0;
    const char* colors[] = {"steelblue", "darkorange", "seagreen", "firebrick"};

    std::vector<std::vector<double>> density;
    double top = 0.0;
    for (const auto& s : series) {
        std::vector<double> h(static_cast<std::size_t>(bins), 0.0);
        for (double v : s.values) {
            auto b = static_cast<int>((v - lo) / span * bins);
            ++h[static_cast<std::size_t>(std::clamp(b, 0, bins - 1))];
        }
        for (double& x : h) {
            x /= s.values.empty() ? 1.0 : static_cast<double>(s.values.size());
            top = std::max(top, x);
        }
        density.push_back(std::move(h));
    }
    const double plot_w = kWidth - 2 * kMargin;
    const double plot_h = kHeight - 2 * kMargin - 10;
    const double slot = plot_w / bins;
    for (std::size_t s = 0; s < density.size(); ++s) {
        for (int b = 0; b < bins; ++b) {
            const double h = top > 0 ? plot_h * density[s][static_cast<std::size_t>(b)] / top : 0.0;
            out << "<rect class=\"bar\" x=\"" << num(kMargin + slot * b) << "\" y=\"" << num(kHeight - kMargin - h)
                << "\" width=\"" << num(slot) << "\" height=\"" << num(h) << "\" fill=\"" << colors[s % 4]
                << "\" fill-opacity=\"0.5\"/>\n";
        }
        out << "<text x=\"" << kWidth - kMargin << "\" y=\"" << 40 + 14 * s << "\" text-anchor=\"end\" fill=\""
            << colors[s % 4] << "\" font-size=\"12\">" << escape(series[s].name) << "</text>\n";
    }
    out << "<text x=\"" << kMargin << "\" y=\"" << kHeight - 10 << "\" font-size=\"10\">" << io::format_double(lo)
        << "</text>\n";
    out << "<text x=\"" << kWidth - kMargin << "\" y=\"" << kHeight - 10 << "\" text-anchor=\"end\" font-size=\"10\">"
        << io::format_double(hi) << "</text>\n";
    out << "</svg>\n";
    return out.str();
}

}  // namespace fairkit
