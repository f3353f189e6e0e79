#include "specfem_mcp/seismogram.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace fs = std::filesystem;

namespace smcp {

Seismogram parse_trace(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::vector<double> times;
    std::vector<double> values;
    int row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        std::istringstream fields(line);
        double t = 0, v = 0;
        if (!(fields >> t >> v)) {
            throw std::invalid_argument("row " + std::to_string(row) +
                                        ": expected two numeric columns");
        }
        times.push_back(t);
        values.push_back(v);
    }
    if (times.size() < 2) {
        throw std::invalid_argument("trace has " + std::to_string(times.size()) +
                                    " rows; need at least 2");
    }
    Seismogram s;
    s.t0 = times[0];
    s.dt = times[1] - times[0];
    if (!(s.dt > 0)) {
        throw std::invalid_argument("non-increasing time axis in first two rows");
    }
    for (std::size_t i = 2; i < times.size(); ++i) {
        const double step = times[i] - times[i - 1];
        if (std::fabs(step - s.dt) > 1e-6 * std::fabs(s.dt)) {
            throw std::invalid_argument("non-uniform sampling at row " + std::to_string(i + 1) +
                                        ": step " + std::to_string(step) + " vs dt " +
                                        std::to_string(s.dt));
        }
    }
    s.samples = std::move(values);
    return s;
}

Seismogram parse_trace_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::invalid_argument("cannot open " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    Seismogram s = parse_trace(buffer.str());

    const std::string stem = path.stem().string(); // NET.STA.CMP
    const auto first = stem.find('.');
    const auto last = stem.rfind('.');
    if (first != std::string::npos && last != std::string::npos && first < last) {
        s.network = stem.substr(0, first);
        s.station = stem.substr(first + 1, last - first - 1);
        s.component = stem.substr(last + 1);
    } else {
        s.station = stem;
    }
    return s;
}

TraceScan discover_traces(const fs::path& output_dir) {
    TraceScan scan;
    if (!fs::exists(output_dir)) {
        throw std::invalid_argument("output directory does not exist: " + output_dir.string());
    }
    for (const auto& entry : fs::directory_iterator(output_dir)) {
        if (!entry.is_regular_file()) {
            continue;
        }
        const std::string ext = entry.path().extension().string();
        if (ext.size() != 5 || ext.compare(0, 4, ".sem") != 0) {
            continue; // not a *.sem? trace
        }
        try {
            scan.traces.push_back(parse_trace_file(entry.path()));
        } catch (const std::exception& e) {
            scan.warnings.push_back(entry.path().filename().string() + ": " + e.what());
        }
    }
    std::sort(scan.traces.begin(), scan.traces.end(), [](const auto& a, const auto& b) {
        return std::tie(a.network, a.station, a.component) <
               std::tie(b.network, b.station, b.component);
    });
    std::sort(scan.warnings.begin(), scan.warnings.end());
    return scan;
}

} // namespace smcp
