#include "specfem_mcp/sources.hpp"

#include "specfem_mcp/deck.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace smcp {

namespace {

std::string padded_label(const std::string& label, std::size_t width) {
    std::string s = label + ":";
    if (s.size() < width) {
        s.append(width - s.size(), ' ');
    } else {
        s += ' ';
    }
    return s;
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_labeled_number(std::string_view line, const std::string& label, int line_no) {
    const auto colon = line.find(':');
    if (colon == std::string_view::npos ||
        std::string(trim(line.substr(0, colon))) != label) {
        throw std::invalid_argument("line " + std::to_string(line_no) + ": expected '" +
                                    label + ":'");
    }
    const std::string token{trim(line.substr(colon + 1))};
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (token.empty() || end != token.c_str() + token.size()) {
        throw std::invalid_argument("line " + std::to_string(line_no) + ": bad number '" +
                                    token + "' for " + label);
    }
    return v;
}

std::vector<std::string> split_lines(std::string_view text) {
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) {
            nl = text.size();
        }
        std::string_view line = text.substr(pos, nl - pos);
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        lines.emplace_back(line);
        pos = nl + 1;
    }
    while (!lines.empty() && trim(lines.back()).empty()) {
        lines.pop_back();
    }
    return lines;
}

} // namespace

void validate(const SourceSpec2D& source) {
    std::string problems;
    if (!(source.f0 > 0)) {
        problems += " f0 must be > 0;";
    }
    if (source.angle_deg < 0 || source.angle_deg >= 360) {
        problems += " angle_deg must lie in [0, 360);";
    }
    if (!problems.empty()) {
        throw std::invalid_argument("invalid source:" + problems);
    }
}

std::string render_source_2d(const std::vector<SourceSpec2D>& sources) {
    if (sources.empty()) {
        throw std::invalid_argument("no sources");
    }
    std::ostringstream out;
    int index = 0;
    for (const auto& s : sources) {
        validate(s);
        ++index;
        ParameterDeck block;
        block.add_header_comment("source " + std::to_string(index));
        block.set("source_surf", false);
        block.set("xs", s.xs);
        block.set("zs", s.zs);
        block.set("source_type",
                  static_cast<long long>(s.source_type == SourceSpec2D::Mechanism::elastic_force
                                             ? 1
                                             : 2),
                  "1 = force, 2 = moment tensor");
        block.set("time_function_type",
                  static_cast<long long>(
                      s.time_function == SourceSpec2D::TimeFunction::ricker ? 1 : 3),
                  "1 = Ricker, 3 = Gaussian");
        block.set("f0", s.f0);
        block.set("anglesource", s.angle_deg);
        block.set("factor", s.factor);
        if (s.source_type == SourceSpec2D::Mechanism::moment_tensor) {
            block.set("Mxx", s.mxx);
            block.set("Mzz", s.mzz);
            block.set("Mxz", s.mxz);
        }
        out << render_deck(block);
    }
    return out.str();
}

std::vector<SourceSpec2D> parse_source_2d(std::string_view text) {
    std::vector<SourceSpec2D> sources;
    SourceSpec2D current;
    bool open = false;
    bool has_tensor = false;

    auto flush = [&] {
        if (open) {
            current.source_type = has_tensor ? SourceSpec2D::Mechanism::moment_tensor
                                             : current.source_type;
            validate(current);
            sources.push_back(current);
            current = SourceSpec2D{};
            has_tensor = false;
        }
    };

    for (const auto& raw : split_lines(text)) {
        const std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#') {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw std::invalid_argument("source file line without '=': '" + std::string(line) +
                                        "'");
        }
        const std::string key{trim(line.substr(0, eq))};
        const std::string value{trim(line.substr(eq + 1))};
        if (key == "source_surf") {
            flush();
            open = true;
            continue;
        }
        char* end = nullptr;
        const double v = std::strtod(value.c_str(), &end);
        if (key == "xs") {
            current.xs = v;
        } else if (key == "zs") {
            current.zs = v;
        } else if (key == "source_type") {
            current.source_type = v == 2 ? SourceSpec2D::Mechanism::moment_tensor
                                         : SourceSpec2D::Mechanism::elastic_force;
        } else if (key == "time_function_type") {
            current.time_function = v == 3 ? SourceSpec2D::TimeFunction::gaussian
                                           : SourceSpec2D::TimeFunction::ricker;
        } else if (key == "f0") {
            current.f0 = v;
        } else if (key == "anglesource") {
            current.angle_deg = v;
        } else if (key == "factor") {
            current.factor = v;
        } else if (key == "Mxx") {
            current.mxx = v;
            has_tensor = true;
        } else if (key == "Mzz") {
            current.mzz = v;
            has_tensor = true;
        } else if (key == "Mxz") {
            current.mxz = v;
            has_tensor = true;
        }
    }
    flush();
    if (sources.empty()) {
        throw std::invalid_argument("no sources in SOURCE file");
    }
    return sources;
}

void validate(const CmtSolution& cmt) {
    std::string problems;
    if (cmt.header_line.find('\n') != std::string::npos) {
        problems += " header_line must be a single line;";
    }
    if (cmt.event_name.empty()) {
        problems += " event_name must be non-empty;";
    }
    if (cmt.half_duration < 0) {
        problems += " half_duration must be >= 0;";
    }
    if (cmt.latitude < -90 || cmt.latitude > 90) {
        problems += " latitude must lie in [-90, 90];";
    }
    if (cmt.longitude < -180 || cmt.longitude >= 360) {
        problems += " longitude must lie in [-180, 360);";
    }
    if (cmt.depth_km < 0) {
        problems += " depth must be >= 0;";
    }
    if (!problems.empty()) {
        throw std::invalid_argument("invalid CMTSOLUTION:" + problems);
    }
}

std::string render_cmtsolution(const CmtSolution& cmt) {
    validate(cmt);
    constexpr std::size_t kValueColumn = 16;
    auto line = [&](const std::string& label, const std::string& value) {
        return padded_label(label, kValueColumn) + value + "\n";
    };
    std::string out = cmt.header_line + "\n";
    out += line("event name", cmt.event_name);
    out += line("time shift", render_number(cmt.time_shift));
    out += line("half duration", render_number(cmt.half_duration));
    out += line("latitude", render_number(cmt.latitude));
    out += line("longitude", render_number(cmt.longitude));
    out += line("depth", render_number(cmt.depth_km));
    out += line("Mrr", render_number(cmt.mrr));
    out += line("Mtt", render_number(cmt.mtt));
    out += line("Mpp", render_number(cmt.mpp));
    out += line("Mrt", render_number(cmt.mrt));
    out += line("Mrp", render_number(cmt.mrp));
    out += line("Mtp", render_number(cmt.mtp));
    return out;
}

CmtSolution parse_cmtsolution(std::string_view text) {
    const auto lines = split_lines(text);
    if (lines.size() != 13) {
        throw std::invalid_argument("CMTSOLUTION must have exactly 13 lines, got " +
                                    std::to_string(lines.size()));
    }
    CmtSolution cmt;
    cmt.header_line = lines[0];
    const auto colon = lines[1].find(':');
    if (colon == std::string::npos ||
        std::string(trim(std::string_view(lines[1]).substr(0, colon))) != "event name") {
        throw std::invalid_argument("line 2: expected 'event name:'");
    }
    cmt.event_name = std::string(trim(std::string_view(lines[1]).substr(colon + 1)));
    cmt.time_shift = parse_labeled_number(lines[2], "time shift", 3);
    cmt.half_duration = parse_labeled_number(lines[3], "half duration", 4);
    cmt.latitude = parse_labeled_number(lines[4], "latitude", 5);
    cmt.longitude = parse_labeled_number(lines[5], "longitude", 6);
    cmt.depth_km = parse_labeled_number(lines[6], "depth", 7);
    cmt.mrr = parse_labeled_number(lines[7], "Mrr", 8);
    cmt.mtt = parse_labeled_number(lines[8], "Mtt", 9);
    cmt.mpp = parse_labeled_number(lines[9], "Mpp", 10);
    cmt.mrt = parse_labeled_number(lines[10], "Mrt", 11);
    cmt.mrp = parse_labeled_number(lines[11], "Mrp", 12);
    cmt.mtp = parse_labeled_number(lines[12], "Mtp", 13);
    validate(cmt);
    return cmt;
}

void validate(const ForceSolution& force) {
    std::string problems;
    if (force.header_line.empty() || force.header_line.find('\n') != std::string::npos) {
        problems += " header_line must be one non-empty line;";
    }
    if (force.component_dir[0] == 0 && force.component_dir[1] == 0 &&
        force.component_dir[2] == 0) {
        problems += " component_dir must not be all zero;";
    }
    if (force.half_duration_or_f0 < 0) {
        problems += " f0/half duration must be >= 0;";
    }
    if (!problems.empty()) {
        throw std::invalid_argument("invalid FORCESOLUTION:" + problems);
    }
}

std::string render_forcesolution(const ForceSolution& force, ForceLayout layout) {
    validate(force);
    constexpr std::size_t kValueColumn = 33;
    auto line = [&](const std::string& label, double value) {
        return padded_label(label, kValueColumn) + render_number(value) + "\n";
    };
    const bool globe = layout == ForceLayout::globe;
    std::string out = force.header_line + "\n";
    out += line("time shift", force.time_shift);
    out += line(globe ? "half duration" : "f0", force.half_duration_or_f0);
    out += line(globe ? "latitude" : "latorUTM", force.latitude_or_x);
    out += line(globe ? "longitude" : "longorUTM", force.longitude_or_y);
    out += line("depth", force.depth_km_or_z);
    out += line("factor force source", force.factor);
    out += line("component dir vect source E", force.component_dir[0]);
    out += line("component dir vect source N", force.component_dir[1]);
    out += line("component dir vect source Z_UP", force.component_dir[2]);
    return out;
}

} // namespace smcp
