#include "specfem_mcp/par_file.hpp"

#include <filesystem>
#include <sstream>
#include <stdexcept>

namespace fs = std::filesystem;

namespace smcp {

namespace {

struct ProblemList {
    std::string text;

    void add(const std::string& problem) { text += "\n  - " + problem; }
    void raise_if_any(const char* what) const {
        if (!text.empty()) {
            throw std::invalid_argument(std::string("invalid ") + what + ":" + text);
        }
    }
};

void require_file(ProblemList& problems, const std::string& key, const std::string& path,
                  bool required) {
    if (path.empty()) {
        if (required) {
            problems.add(key + " is required for an external mesh");
        }
        return;
    }
    if (!fs::exists(path)) {
        problems.add(key + " does not exist: " + path);
    }
}

} // namespace

ParameterDeck build_par_file_2d(const ParFile2D& p) {
    ProblemList problems;
    if (p.nproc < 1) {
        problems.add("NPROC must be >= 1");
    }
    if (p.nstep < 1) {
        problems.add("NSTEP must be >= 1");
    }
    if (!(p.dt > 0)) {
        problems.add("DT must be > 0");
    }
    if (p.simulation_type != 1) {
        problems.add("SIMULATION_TYPE must be 1 (forward)");
    }
    if (p.stacey_absorbing && p.pml_boundary) {
        problems.add(
            "STACEY_ABSORBING_CONDITIONS and PML_BOUNDARY_CONDITIONS are mutually exclusive");
    }
    if (p.materials.empty()) {
        problems.add("materials must be non-empty");
    }
    for (std::size_t i = 0; i < p.materials.size(); ++i) {
        const auto& m = p.materials[i];
        const std::string tag = "material " + std::to_string(i + 1);
        if (m.id != static_cast<int>(i) + 1) {
            problems.add(tag + ": ids must run 1.." + std::to_string(p.materials.size()) +
                         " without gaps");
        }
        if (!(m.rho > 0)) {
            problems.add(tag + ": rho must be > 0");
        }
        if (!(m.vp > 0)) {
            problems.add(tag + ": vp must be > 0");
        }
        if (m.vs < 0) {
            problems.add(tag + ": vs must be >= 0");
        }
        if (!(m.q_kappa > 0) || !(m.q_mu > 0)) {
            problems.add(tag + ": Q_kappa and Q_mu must be > 0");
        }
    }
    if (p.use_external_mesh) {
        require_file(problems, "mesh_file", p.external_mesh.mesh_file, true);
        require_file(problems, "nodes_coords_file", p.external_mesh.nodes_coords_file, true);
        require_file(problems, "materials_file", p.external_mesh.materials_file, true);
        require_file(problems, "free_surface_file", p.external_mesh.free_surface_file, false);
        require_file(problems, "absorbing_surface_file", p.external_mesh.absorbing_surface_file,
                     false);
    } else {
        if (p.internal_mesh.nx < 1) {
            problems.add("internal mesh nx must be >= 1");
        }
        if (!(p.internal_mesh.xmax > p.internal_mesh.xmin)) {
            problems.add("internal mesh xmax must be > xmin");
        }
        if (p.internal_mesh.interfaces_file.empty()) {
            problems.add("interfaces_file must be set for the internal mesher");
        }
        if (p.regions.empty()) {
            problems.add("at least one region is required for the internal mesher");
        }
        for (std::size_t i = 0; i < p.regions.size(); ++i) {
            const auto& r = p.regions[i];
            const std::string tag = "region " + std::to_string(i + 1);
            if (r.nxmin < 1 || r.nxmax < r.nxmin ||
                (p.internal_mesh.nx >= 1 && r.nxmax > p.internal_mesh.nx)) {
                problems.add(tag + ": element range must satisfy 1 <= nxmin <= nxmax <= nx");
            }
            if (r.nzmin < 1 || r.nzmax < r.nzmin) {
                problems.add(tag + ": element range must satisfy 1 <= nzmin <= nzmax");
            }
            if (r.material < 1 || r.material > static_cast<int>(p.materials.size())) {
                problems.add(tag + ": material index out of range");
            }
        }
    }
    problems.raise_if_any("Par_file (2D)");

    ParameterDeck d;
    d.add_header_comment("SPECFEM2D parameter file");
    d.set("title", p.title);
    d.set("SIMULATION_TYPE", static_cast<long long>(p.simulation_type), "1 = forward");
    d.set("NPROC", static_cast<long long>(p.nproc));
    d.set("NSTEP", static_cast<long long>(p.nstep));
    d.set("DT", p.dt);
    d.set("ATTENUATION_VISCOELASTIC", p.attenuation_viscoelastic);
    d.set("STACEY_ABSORBING_CONDITIONS", p.stacey_absorbing);
    d.set("PML_BOUNDARY_CONDITIONS", p.pml_boundary);
    d.set("GPU_MODE", p.gpu_mode);
    d.set("output_wavefield_dumps", p.output_snapshots);
    d.set("nbmodels", static_cast<long long>(p.materials.size()));
    for (const auto& m : p.materials) {
        std::ostringstream value;
        value << render_number(m.rho) << ' ' << render_number(m.vp) << ' '
              << render_number(m.vs) << ' ' << render_number(m.q_kappa) << ' '
              << render_number(m.q_mu);
        d.set("MATERIAL_" + std::to_string(m.id), value.str(),
              m.id == 1 ? "rho vp vs Q_kappa Q_mu" : "");
    }
    d.set("read_external_mesh", p.use_external_mesh);
    if (p.use_external_mesh) {
        d.set("mesh_file", p.external_mesh.mesh_file);
        d.set("nodes_coords_file", p.external_mesh.nodes_coords_file);
        d.set("materials_file", p.external_mesh.materials_file);
        if (!p.external_mesh.free_surface_file.empty()) {
            d.set("free_surface_file", p.external_mesh.free_surface_file);
        }
        if (!p.external_mesh.absorbing_surface_file.empty()) {
            d.set("absorbing_surface_file", p.external_mesh.absorbing_surface_file);
        }
    } else {
        d.set("interfacesfile", p.internal_mesh.interfaces_file);
        d.set("xmin", p.internal_mesh.xmin);
        d.set("xmax", p.internal_mesh.xmax);
        d.set("nx", static_cast<long long>(p.internal_mesh.nx));
        d.set("nbregions", static_cast<long long>(p.regions.size()));
        int index = 0;
        for (const auto& r : p.regions) {
            ++index;
            std::ostringstream value;
            value << r.nxmin << ' ' << r.nxmax << ' ' << r.nzmin << ' ' << r.nzmax << ' '
                  << r.material;
            d.set("REGION_" + std::to_string(index), value.str(),
                  index == 1 ? "nxmin nxmax nzmin nzmax material" : "");
        }
    }
    return d;
}

ParameterDeck build_par_file_3d(const ParFile3D& p) {
    ProblemList problems;
    if (p.nproc < 1) {
        problems.add("NPROC must be >= 1");
    }
    if (p.nstep < 1) {
        problems.add("NSTEP must be >= 1");
    }
    if (!(p.dt > 0)) {
        problems.add("DT must be > 0");
    }
    if (p.pml_conditions && p.stacey_conditions) {
        problems.add("PML_CONDITIONS and STACEY_ABSORBING_CONDITIONS are mutually exclusive");
    }
    if (p.model_name.empty()) {
        problems.add("MODEL must be non-empty");
    }
    problems.raise_if_any("Par_file (3D)");

    ParameterDeck d;
    d.add_header_comment("SPECFEM3D_Cartesian parameter file");
    d.set("SIMULATION_TYPE", 1LL, "1 = forward");
    d.set("NPROC", static_cast<long long>(p.nproc));
    d.set("NSTEP", static_cast<long long>(p.nstep));
    d.set("DT", p.dt);
    d.set("UTM_PROJECTION_ZONE", static_cast<long long>(p.utm_zone));
    d.set("SUPPRESS_UTM_PROJECTION", p.suppress_utm);
    d.set("MODEL", p.model_name);
    d.set("ATTENUATION", p.attenuation);
    d.set("USE_OLSEN_ATTENUATION", p.use_olsen_attenuation);
    d.set("PML_CONDITIONS", p.pml_conditions);
    d.set("STACEY_ABSORBING_CONDITIONS", p.stacey_conditions);
    d.set("GPU_MODE", p.gpu_mode);
    d.set("MOVIE_SURFACE", p.movie_surface);
    return d;
}

ParameterDeck build_par_file_globe(const ParFileGlobe& p) {
    ProblemList problems;
    if (p.nchunks != 1 && p.nchunks != 2 && p.nchunks != 3 && p.nchunks != 6) {
        problems.add("NCHUNKS must be one of 1, 2, 3, 6");
    }
    if (p.nex_xi < 1 || p.nex_eta < 1) {
        problems.add("NEX_XI and NEX_ETA must be >= 1");
    }
    if (p.nproc_xi < 1 || p.nproc_eta < 1) {
        problems.add("NPROC_XI and NPROC_ETA must be >= 1");
    }
    if (p.nchunks == 6 && (p.nex_xi != p.nex_eta || p.nproc_xi != p.nproc_eta)) {
        problems.add("NCHUNKS = 6 requires NEX_XI = NEX_ETA and NPROC_XI = NPROC_ETA");
    }
    // Mesher divisibility constraint, reported up front rather than from
    // a failed run.
    if (p.nproc_xi >= 1 && p.nex_xi % (8 * p.nproc_xi) != 0) {
        problems.add("NEX_XI = " + std::to_string(p.nex_xi) + " must be a multiple of 8*NPROC_XI = " +
                     std::to_string(8 * p.nproc_xi));
    }
    if (p.nproc_eta >= 1 && p.nex_eta % (8 * p.nproc_eta) != 0) {
        problems.add("NEX_ETA = " + std::to_string(p.nex_eta) +
                     " must be a multiple of 8*NPROC_ETA = " + std::to_string(8 * p.nproc_eta));
    }
    if (!(p.record_length_minutes > 0)) {
        problems.add("RECORD_LENGTH_IN_MINUTES must be > 0");
    }
    if (p.model_name.empty()) {
        problems.add("MODEL must be non-empty");
    }
    problems.raise_if_any("Par_file (globe)");

    ParameterDeck d;
    d.add_header_comment("SPECFEM3D_Globe parameter file");
    d.set("SIMULATION_TYPE", 1LL, "1 = forward");
    d.set("NCHUNKS", static_cast<long long>(p.nchunks));
    d.set("NEX_XI", static_cast<long long>(p.nex_xi));
    d.set("NEX_ETA", static_cast<long long>(p.nex_eta));
    d.set("NPROC_XI", static_cast<long long>(p.nproc_xi));
    d.set("NPROC_ETA", static_cast<long long>(p.nproc_eta));
    d.set("MODEL", p.model_name);
    d.set("OCEANS", p.oceans);
    d.set("ELLIPTICITY", p.ellipticity);
    d.set("TOPOGRAPHY", p.topography);
    d.set("GRAVITY", p.gravity);
    d.set("ROTATION", p.rotation);
    d.set("ATTENUATION", p.attenuation);
    d.set("RECORD_LENGTH_IN_MINUTES", p.record_length_minutes);
    d.set("GPU_MODE", p.gpu_mode);
    return d;
}

} // namespace smcp
