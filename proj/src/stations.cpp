#include "specfem_mcp/stations.hpp"

#include "specfem_mcp/deck.hpp"

#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>

namespace smcp {

namespace {

void check_token(const std::string& value, const char* what) {
    if (value.empty()) {
        throw std::invalid_argument(std::string("station ") + what + " must be non-empty");
    }
    if (value.find_first_of(" \t\n") != std::string::npos) {
        throw std::invalid_argument(std::string("station ") + what + " '" + value +
                                    "' contains whitespace");
    }
}

void check_unique(const StationList& stations) {
    std::set<std::pair<std::string, std::string>> seen;
    std::string duplicates;
    for (const auto& s : stations) {
        if (!seen.insert({s.network, s.name}).second) {
            duplicates += " " + s.network + "." + s.name;
        }
    }
    if (!duplicates.empty()) {
        throw std::invalid_argument("duplicate stations:" + duplicates);
    }
}

} // namespace

std::string render_stations(const StationList& stations) {
    if (stations.empty()) {
        throw std::invalid_argument("no stations");
    }
    for (const auto& s : stations) {
        check_token(s.name, "name");
        check_token(s.network, "network");
    }
    check_unique(stations);
    std::ostringstream out;
    for (const auto& s : stations) {
        out << s.name << ' ' << s.network << ' ' << render_number(s.h1) << ' '
            << render_number(s.h2) << ' ' << render_number(s.elevation) << ' '
            << render_number(s.burial) << "\n";
    }
    return out.str();
}

StationList parse_stations(std::string_view text) {
    StationList stations;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream fields(line);
        Station s;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        if (!(fields >> s.name >> s.network >> s.h1 >> s.h2 >> s.elevation >> s.burial)) {
            throw std::invalid_argument("line " + std::to_string(line_no) +
                                        ": expected 6 station fields");
        }
        std::string extra;
        if (fields >> extra) {
            throw std::invalid_argument("line " + std::to_string(line_no) +
                                        ": trailing fields after burial");
        }
        stations.push_back(std::move(s));
    }
    if (stations.empty()) {
        throw std::invalid_argument("no stations");
    }
    check_unique(stations);
    return stations;
}

StationList linspace_stations(int n, std::pair<double, double> start,
                              std::pair<double, double> end, const std::string& network,
                              const std::string& prefix, double elevation, double burial) {
    if (n < 1) {
        throw std::invalid_argument("station count must be >= 1");
    }
    StationList stations;
    stations.reserve(static_cast<std::size_t>(n));
    const double step1 = n > 1 ? (end.first - start.first) / (n - 1) : 0.0;
    const double step2 = n > 1 ? (end.second - start.second) / (n - 1) : 0.0;
    char name[64];
    for (int i = 0; i < n; ++i) {
        std::snprintf(name, sizeof name, "%s%04d", prefix.c_str(), i + 1);
        stations.push_back(Station{name, network, start.first + i * step1,
                                   start.second + i * step2, elevation, burial});
    }
    return stations;
}

} // namespace smcp
