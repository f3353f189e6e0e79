#include "specfem_mcp/record_section.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fs = std::filesystem;

namespace smcp {

namespace {

constexpr double kPlotWidth = 960.0;
constexpr double kMarginLeft = 120.0;
constexpr double kMarginRight = 24.0;
constexpr double kMarginTop = 20.0;
constexpr double kMarginBottom = 44.0;
constexpr double kRowHeight = 11.0;
constexpr std::size_t kMaxPointsPerTrace = 2000;

std::string f3(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

std::string f6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string escape_xml(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        default: out += c;
        }
    }
    return out;
}

// Max-abs decimation keeps wiggle peaks while bounding the path size.
struct Point {
    double t;
    double v;
};

std::vector<Point> decimate(const Seismogram& trace) {
    std::vector<Point> points;
    const std::size_t n = trace.samples.size();
    const std::size_t stride = (n + kMaxPointsPerTrace - 1) / kMaxPointsPerTrace;
    points.reserve(n / std::max<std::size_t>(stride, 1) + 2);
    for (std::size_t begin = 0; begin < n; begin += stride) {
        const std::size_t end = std::min(begin + stride, n);
        std::size_t pick = begin;
        for (std::size_t i = begin + 1; i < end; ++i) {
            if (std::fabs(trace.samples[i]) > std::fabs(trace.samples[pick])) {
                pick = i;
            }
        }
        points.push_back({trace.t0 + static_cast<double>(pick) * trace.dt, trace.samples[pick]});
    }
    return points;
}

} // namespace

fs::path render_record_section(const RecordSection& rs, const fs::path& out_svg) {
    if (rs.traces.empty()) {
        throw std::invalid_argument("record section needs at least one trace");
    }
    const double dt0 = rs.traces.front().dt;
    for (const auto& trace : rs.traces) {
        if (trace.samples.empty()) {
            throw std::invalid_argument("record section trace has no samples");
        }
        if (std::fabs(trace.dt - dt0) > 1e-9 * std::fabs(dt0)) {
            throw std::invalid_argument("record section traces do not share dt: " +
                                        std::to_string(trace.dt) + " vs " + std::to_string(dt0));
        }
    }

    double tmin = rs.traces.front().t0;
    double tmax = tmin;
    double global_max = 0;
    std::vector<double> trace_max(rs.traces.size(), 0.0);
    for (std::size_t i = 0; i < rs.traces.size(); ++i) {
        const auto& trace = rs.traces[i];
        tmin = std::min(tmin, trace.t0);
        tmax = std::max(tmax, trace.t0 + static_cast<double>(trace.samples.size() - 1) * trace.dt);
        for (double s : trace.samples) {
            trace_max[i] = std::max(trace_max[i], std::fabs(s));
        }
        global_max = std::max(global_max, trace_max[i]);
    }
    const double t_range = tmax > tmin ? tmax - tmin : 1.0;

    const double height = kMarginTop + kRowHeight * static_cast<double>(rs.traces.size()) +
                          kMarginBottom;
    const double width = kMarginLeft + kPlotWidth + kMarginRight;
    const double amp = 0.85 * kRowHeight;

    auto x_of = [&](double t) { return kMarginLeft + (t - tmin) / t_range * kPlotWidth; };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << f3(width) << "\" height=\""
        << f3(height) << "\" viewBox=\"0 0 " << f3(width) << " " << f3(height) << "\">\n";
    svg << "<rect x=\"0\" y=\"0\" width=\"" << f3(width) << "\" height=\"" << f3(height)
        << "\" fill=\"#ffffff\"/>\n";

    for (std::size_t i = 0; i < rs.traces.size(); ++i) {
        const auto& trace = rs.traces[i];
        const double base = kMarginTop + kRowHeight * (static_cast<double>(i) + 0.5);
        const double norm = rs.normalization == RecordSection::Normalization::global
                                ? global_max
                                : trace_max[i];
        const double scale = norm > 0 ? amp / norm : 0.0;
        const auto points = decimate(trace);

        std::string label = trace.network + "." + trace.station + "." + trace.component;
        if (label.size() <= 2) { // traces without parsed names
            label = "trace " + std::to_string(i + 1);
        }
        svg << "<text x=\"4\" y=\"" << f3(base + 2.5)
            << "\" font-family=\"monospace\" font-size=\"7\">" << escape_xml(label)
            << "</text>\n";

        if (rs.fill_positive && norm > 0) {
            bool any_positive = false;
            for (const auto& p : points) {
                if (p.v > 0) {
                    any_positive = true;
                    break;
                }
            }
            if (any_positive) {
                svg << "<path fill=\"#000000\" stroke=\"none\" d=\"M" << f3(x_of(points.front().t))
                    << " " << f3(base);
                for (const auto& p : points) {
                    svg << " L" << f3(x_of(p.t)) << " "
                        << f3(base - std::max(p.v, 0.0) * scale);
                }
                svg << " L" << f3(x_of(points.back().t)) << " " << f3(base) << " Z\"/>\n";
            }
        }

        svg << "<polyline fill=\"none\" stroke=\"#000000\" stroke-width=\"0.5\" points=\"";
        bool first = true;
        for (const auto& p : points) {
            if (!first) {
                svg << ' ';
            }
            first = false;
            svg << f3(x_of(p.t)) << ',' << f3(base - p.v * scale);
        }
        svg << "\"/>\n";
    }

    const double axis_y = height - kMarginBottom + 8;
    svg << "<line x1=\"" << f3(kMarginLeft) << "\" y1=\"" << f3(axis_y) << "\" x2=\""
        << f3(kMarginLeft + kPlotWidth) << "\" y2=\"" << f3(axis_y)
        << "\" stroke=\"#000000\" stroke-width=\"0.8\"/>\n";
    for (int k = 0; k <= 4; ++k) {
        const double t = tmin + t_range * k / 4.0;
        const double x = x_of(t);
        svg << "<line x1=\"" << f3(x) << "\" y1=\"" << f3(axis_y) << "\" x2=\"" << f3(x)
            << "\" y2=\"" << f3(axis_y + 4) << "\" stroke=\"#000000\" stroke-width=\"0.8\"/>\n";
        svg << "<text x=\"" << f3(x) << "\" y=\"" << f3(axis_y + 14)
            << "\" font-family=\"monospace\" font-size=\"8\" text-anchor=\"middle\">" << f6(t)
            << "</text>\n";
    }
    svg << "<text x=\"" << f3(kMarginLeft + kPlotWidth / 2) << "\" y=\"" << f3(axis_y + 28)
        << "\" font-family=\"monospace\" font-size=\"9\" text-anchor=\"middle\">Time (s)"
        << "</text>\n";
    svg << "<text x=\"4\" y=\"" << f3(kMarginTop - 6)
        << "\" font-family=\"monospace\" font-size=\"8\">Traces (" << rs.traces.size()
        << ")</text>\n";
    svg << "</svg>\n";

    std::error_code ec;
    fs::create_directories(out_svg.parent_path(), ec);
    std::ofstream out(out_svg, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot write plot: " + out_svg.string());
    }
    const std::string body = svg.str();
    out.write(body.data(), static_cast<std::streamsize>(body.size()));
    return out_svg;
}

} // namespace smcp
