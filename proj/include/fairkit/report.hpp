#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fairkit/manifest.hpp"

namespace fairkit {

struct Bar {
    std::string label;
    double value = 0.0;
};

/// Minimal standalone SVG bar chart; one <rect class="bar"> per entry.
std::string svg_bar_chart(const std::string& title, std::span<const Bar> bars);

/// Sample count per age, one bar per distinct age.
std::string age_histogram_svg(std::span<const Record> records);

struct Series {
    std::string name;
    std::vector<double> values;
};

/// Overlaid normalized histograms (e.g. training vs augmentation LLR) on a
/// shared binning over the joint range.
std::string llr_histogram_svg(std::span<const Series> series, int bins = 40);

}  // namespace fairkit
