#include "specfem_mcp/workspace.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <stdexcept>

namespace fs = std::filesystem;

namespace smcp {

namespace {

std::string now_utc_iso() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_file_or_throw(const fs::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open for writing: " + path.string());
    }
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
        throw std::runtime_error("write failed: " + path.string());
    }
}

} // namespace

Workspace Workspace::init(const fs::path& root) {
    Workspace ws;
    ws.root_ = root;
    std::error_code ec;
    for (const char* sub : {"DATA", "OUTPUT_FILES"}) {
        fs::create_directories(root / sub, ec);
        if (ec) {
            throw std::runtime_error("cannot create " + (root / sub).string() + ": " +
                                     ec.message());
        }
    }
    // Probe writability so tools fail early with a clear message.
    const fs::path probe = root / ".write_probe";
    {
        std::ofstream out(probe);
        if (!out) {
            throw std::runtime_error("workspace root not writable: " + root.string());
        }
    }
    fs::remove(probe, ec);
    return ws;
}

std::string Workspace::write_data_file(const std::string& name, const std::string& bytes,
                                       const std::string& tool) {
    if (name.empty() || name.find('/') != std::string::npos) {
        throw std::invalid_argument("data file name must be a bare file name: '" + name + "'");
    }
    write_file_or_throw(data_dir() / name, bytes);
    const std::string rel = "DATA/" + name;
    record(rel, tool);
    return rel;
}

std::string Workspace::write_output_file(const std::string& relative, const std::string& bytes,
                                         const std::string& tool) {
    if (relative.empty() || relative.front() == '/' ||
        relative.find("..") != std::string::npos) {
        throw std::invalid_argument("output path must stay under OUTPUT_FILES/: '" + relative +
                                    "'");
    }
    const fs::path path = output_dir() / relative;
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    write_file_or_throw(path, bytes);
    const std::string rel = "OUTPUT_FILES/" + relative;
    record(rel, tool);
    return rel;
}

void Workspace::record(const std::string& relative_path, const std::string& tool) {
    manifest_.push_back({relative_path, tool, now_utc_iso()});
    save_manifest();
}

void Workspace::save_manifest() const {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : manifest_) {
        entries.push_back({{"path", e.path}, {"tool", e.tool}, {"timestamp", e.timestamp}});
    }
    nlohmann::json doc;
    doc["entries"] = entries;
    write_file_or_throw(root_ / "manifest.json", doc.dump(2) + "\n");
}

} // namespace smcp
