#include "specfem_mcp/interfaces.hpp"

#include "specfem_mcp/deck.hpp"

#include <sstream>
#include <stdexcept>

namespace smcp {

void validate(const InterfaceModel& model) {
    if (model.interfaces.size() < 2) {
        throw std::invalid_argument("need at least 2 interfaces (bottom and free surface), got " +
                                    std::to_string(model.interfaces.size()));
    }
    if (model.layer_elements.size() != model.interfaces.size() - 1) {
        throw std::invalid_argument(
            "layer_elements must have one entry per layer: expected " +
            std::to_string(model.interfaces.size() - 1) + ", got " +
            std::to_string(model.layer_elements.size()));
    }
    for (std::size_t i = 0; i < model.interfaces.size(); ++i) {
        const auto& poly = model.interfaces[i];
        if (poly.size() < 2) {
            throw std::invalid_argument("interface " + std::to_string(i + 1) +
                                        " needs at least 2 points");
        }
        for (std::size_t k = 1; k < poly.size(); ++k) {
            if (!(poly[k].first > poly[k - 1].first)) {
                throw std::invalid_argument("interface " + std::to_string(i + 1) +
                                            ": x must be strictly increasing (point " +
                                            std::to_string(k + 1) + ")");
            }
        }
        if (poly.front().first != model.interfaces.front().front().first ||
            poly.back().first != model.interfaces.front().back().first) {
            throw std::invalid_argument("interface " + std::to_string(i + 1) +
                                        " does not span the shared model width");
        }
    }
    for (std::size_t i = 0; i < model.layer_elements.size(); ++i) {
        if (model.layer_elements[i] < 1) {
            throw std::invalid_argument("layer " + std::to_string(i + 1) +
                                        " element count must be >= 1");
        }
    }
}

std::string render_interfaces(const InterfaceModel& model) {
    validate(model);
    std::ostringstream out;
    out << "# layer interface definition for the internal mesher\n";
    out << "# interfaces are listed bottom to top, then elements per layer\n";
    out << "# number of interfaces\n";
    out << model.interfaces.size() << "\n";
    for (std::size_t i = 0; i < model.interfaces.size(); ++i) {
        const auto& poly = model.interfaces[i];
        out << "# interface " << (i + 1) << ": number of points, then x z per line\n";
        out << poly.size() << "\n";
        for (const auto& [x, z] : poly) {
            out << render_number(x) << " " << render_number(z) << "\n";
        }
    }
    for (std::size_t i = 0; i < model.layer_elements.size(); ++i) {
        out << "# elements in layer " << (i + 1) << "\n";
        out << model.layer_elements[i] << "\n";
    }
    return out.str();
}

namespace {

class TokenReader {
public:
    explicit TokenReader(std::string_view text) : in_(std::string(text)) {}

    // Skips comments and blank lines.
    bool next(std::string& token) {
        std::string line;
        for (;;) {
            if (line_ >> token) {
                return true;
            }
            line_.clear();
            if (!std::getline(in_, line)) {
                return false;
            }
            const auto hash = line.find('#');
            if (hash != std::string::npos) {
                line.erase(hash);
            }
            line_.str(line);
        }
    }

    long long next_int(const char* what) {
        std::string token;
        if (!next(token)) {
            throw std::invalid_argument(std::string("interfaces file ended while reading ") +
                                        what);
        }
        try {
            return std::stoll(token);
        } catch (const std::exception&) {
            throw std::invalid_argument(std::string("expected integer for ") + what + ", got '" +
                                        token + "'");
        }
    }

    double next_double(const char* what) {
        std::string token;
        if (!next(token)) {
            throw std::invalid_argument(std::string("interfaces file ended while reading ") +
                                        what);
        }
        try {
            return std::stod(token);
        } catch (const std::exception&) {
            throw std::invalid_argument(std::string("expected number for ") + what + ", got '" +
                                        token + "'");
        }
    }

private:
    std::istringstream in_;
    std::istringstream line_;
};

} // namespace

InterfaceModel parse_interfaces(std::string_view text) {
    TokenReader reader(text);
    InterfaceModel model;
    const long long n_interfaces = reader.next_int("interface count");
    if (n_interfaces < 2 || n_interfaces > 1000) {
        throw std::invalid_argument("unreasonable interface count: " +
                                    std::to_string(n_interfaces));
    }
    for (long long i = 0; i < n_interfaces; ++i) {
        const long long n_points = reader.next_int("point count");
        if (n_points < 2 || n_points > 1000000) {
            throw std::invalid_argument("unreasonable point count: " + std::to_string(n_points));
        }
        InterfaceModel::Polyline poly;
        poly.reserve(static_cast<std::size_t>(n_points));
        for (long long p = 0; p < n_points; ++p) {
            const double x = reader.next_double("x");
            const double z = reader.next_double("z");
            poly.emplace_back(x, z);
        }
        model.interfaces.push_back(std::move(poly));
    }
    for (long long i = 0; i + 1 < n_interfaces; ++i) {
        model.layer_elements.push_back(static_cast<int>(reader.next_int("layer element count")));
    }
    validate(model);
    return model;
}

} // namespace smcp
