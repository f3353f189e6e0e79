#pragma once

#include "specfem_mcp/deck.hpp"
#include "specfem_mcp/sources.hpp"
#include "specfem_mcp/stations.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

namespace smcp::testing {

inline std::filesystem::path source_dir() {
    return std::filesystem::path(SPECFEM_MCP_SOURCE_DIR);
}

inline std::string server_binary() {
    return SPECFEM_MCP_SERVER_BIN;
}

/// Fresh unique directory under the system temp dir; removed on scope
/// exit.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static std::mt19937_64 rng{std::random_device{}()};
        dir_ = std::filesystem::temp_directory_path() /
               ("smcp_" + tag + "_" + std::to_string(rng()));
        std::filesystem::create_directories(dir_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(dir_, ec);
    }
    const std::filesystem::path& path() const { return dir_; }

private:
    std::filesystem::path dir_;
};

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& bytes) {
    std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    out << bytes;
}

/// Doubles on a decimal grid (<= 9 significant digits) so render/parse
/// round trips are exact.
inline double grid_double(std::mt19937& rng) {
    std::uniform_int_distribution<long long> mantissa(-999999999LL, 999999999LL);
    std::uniform_int_distribution<int> exponent(-8, 8);
    long long m = mantissa(rng);
    if (m == 0) {
        m = 1;
    }
    const std::string text = std::to_string(m) + "e" + std::to_string(exponent(rng));
    return std::strtod(text.c_str(), nullptr);
}

inline std::string random_key(std::mt19937& rng, int min_len = 1, int max_len = 14) {
    static const char alphabet[] = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_";
    std::uniform_int_distribution<int> len(min_len, max_len);
    std::uniform_int_distribution<int> pick(0, sizeof(alphabet) - 2);
    std::string s;
    const int n = len(rng);
    for (int i = 0; i < n; ++i) {
        s += alphabet[pick(rng)];
    }
    return s;
}

/// Bare word strings that cannot be mistaken for numbers or booleans.
inline std::string random_word(std::mt19937& rng) {
    return "w_" + random_key(rng, 1, 10);
}

inline ParameterDeck random_deck(std::mt19937& rng) {
    ParameterDeck deck;
    std::uniform_int_distribution<int> n_comments(0, 3);
    std::uniform_int_distribution<int> n_entries(0, 24);
    std::uniform_int_distribution<int> kind(0, 3);
    std::uniform_int_distribution<long long> integer(-1000000000LL, 1000000000LL);
    std::uniform_int_distribution<int> with_comment(0, 3);

    const int comments = n_comments(rng);
    for (int i = 0; i < comments; ++i) {
        deck.add_header_comment("note " + random_word(rng));
    }
    const int entries = n_entries(rng);
    for (int i = 0; i < entries; ++i) {
        const std::string key = "K" + std::to_string(i) + "_" + random_key(rng, 1, 8);
        Scalar value;
        switch (kind(rng)) {
        case 0: value = (integer(rng) & 1) == 0; break;
        case 1: value = integer(rng); break;
        case 2: value = grid_double(rng); break;
        default: value = random_word(rng); break;
        }
        deck.set(key, value, with_comment(rng) == 0 ? "c " + random_word(rng) : "");
    }
    return deck;
}

inline StationList random_stations(std::mt19937& rng) {
    std::uniform_int_distribution<int> count(1, 40);
    static const char* networks[] = {"AA", "BB", "CC", "II", "IU"};
    std::uniform_int_distribution<int> net(0, 4);
    StationList stations;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) {
        Station s;
        char name[16];
        std::snprintf(name, sizeof name, "S%04d", i + 1);
        s.name = name;
        s.network = networks[net(rng)];
        s.h1 = grid_double(rng);
        s.h2 = grid_double(rng);
        s.elevation = grid_double(rng);
        s.burial = grid_double(rng);
        stations.push_back(s);
    }
    return stations;
}

inline CmtSolution random_cmt(std::mt19937& rng) {
    auto bounded = [&rng](double lo, double hi) {
        std::uniform_int_distribution<long long> grid(0, 1000000);
        return lo + (hi - lo) * static_cast<double>(grid(rng)) / 1.0e6;
    };
    CmtSolution cmt;
    cmt.header_line = "PDE " + random_word(rng);
    cmt.event_name = "EV" + random_key(rng, 2, 10);
    cmt.time_shift = grid_double(rng);
    cmt.half_duration = std::fabs(grid_double(rng));
    // Round the coordinates onto the decimal grid too.
    cmt.latitude = std::strtod(render_number(bounded(-90, 90)).c_str(), nullptr);
    cmt.longitude = std::strtod(render_number(bounded(-180, 359)).c_str(), nullptr);
    cmt.depth_km = std::fabs(grid_double(rng));
    cmt.mrr = grid_double(rng);
    cmt.mtt = grid_double(rng);
    cmt.mpp = grid_double(rng);
    cmt.mrt = grid_double(rng);
    cmt.mrp = grid_double(rng);
    cmt.mtp = grid_double(rng);
    return cmt;
}

} // namespace smcp::testing
