#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace smcp {

/// Rooted working directory with the DATA/ and OUTPUT_FILES/ layout
/// expected by the solvers, plus a provenance manifest of every file a
/// tool writes (persisted as manifest.json under the root).
class Workspace {
public:
    struct ManifestEntry {
        std::string path; // workspace-relative
        std::string tool;
        std::string timestamp; // ISO 8601 UTC
    };

    /// Creates DATA/ and OUTPUT_FILES/ under root (root itself is created
    /// if needed). Existing content is preserved; the manifest starts
    /// empty. Throws with the offending path on failure.
    static Workspace init(const std::filesystem::path& root);

    const std::filesystem::path& root() const { return root_; }
    std::filesystem::path data_dir() const { return root_ / "DATA"; }
    std::filesystem::path output_dir() const { return root_ / "OUTPUT_FILES"; }

    const std::filesystem::path& bin_dir() const { return bin_dir_; }
    void set_bin_dir(std::filesystem::path dir) { bin_dir_ = std::move(dir); }

    /// Writes bytes to DATA/<name> and records the file. Returns the
    /// workspace-relative path.
    std::string write_data_file(const std::string& name, const std::string& bytes,
                                const std::string& tool);

    /// Writes bytes to OUTPUT_FILES/<relative> (creating subdirectories)
    /// and records the file. Returns the workspace-relative path.
    std::string write_output_file(const std::string& relative, const std::string& bytes,
                                  const std::string& tool);

    /// Records an externally produced file (workspace-relative path).
    void record(const std::string& relative_path, const std::string& tool);

    const std::vector<ManifestEntry>& manifest() const { return manifest_; }

private:
    std::filesystem::path root_;
    std::filesystem::path bin_dir_;
    std::vector<ManifestEntry> manifest_;

    void save_manifest() const;
};

} // namespace smcp
