#pragma once

#include "specfem_mcp/deck.hpp"

#include <string>
#include <vector>

namespace smcp {

/// One velocity model entry; vs == 0 marks an acoustic (fluid) material.
struct Material2D {
    int id = 0; // 1-based, contiguous
    double rho = 0;     // kg/m^3, > 0
    double vp = 0;      // m/s, > 0
    double vs = 0;      // m/s, >= 0
    double q_kappa = 0; // > 0
    double q_mu = 0;    // > 0

    friend bool operator==(const Material2D&, const Material2D&) = default;
};

/// Element-index box assigned to one material (internal mesher regions).
struct Region2D {
    int nxmin = 1, nxmax = 1;
    int nzmin = 1, nzmax = 1;
    int material = 1;

    friend bool operator==(const Region2D&, const Region2D&) = default;
};

struct InternalMeshSpec {
    double xmin = 0;
    double xmax = 0;
    int nx = 0;
    std::string interfaces_file = "interfaces.dat";

    friend bool operator==(const InternalMeshSpec&, const InternalMeshSpec&) = default;
};

struct ExternalMeshPaths {
    std::string mesh_file;
    std::string nodes_coords_file;
    std::string materials_file;
    std::string free_surface_file;      // optional
    std::string absorbing_surface_file; // optional

    friend bool operator==(const ExternalMeshPaths&, const ExternalMeshPaths&) = default;
};

struct ParFile2D {
    std::string title = "SPECFEM2D simulation";
    int nproc = 1;
    long long nstep = 0;
    double dt = 0;
    int simulation_type = 1; // forward
    bool attenuation_viscoelastic = false;
    bool stacey_absorbing = false;
    bool pml_boundary = false;
    bool gpu_mode = false;
    bool output_snapshots = false;
    std::vector<Material2D> materials;
    bool use_external_mesh = false;
    InternalMeshSpec internal_mesh;
    ExternalMeshPaths external_mesh;
    std::vector<Region2D> regions;
};

struct ParFile3D {
    int nproc = 1;
    long long nstep = 0;
    double dt = 0;
    int utm_zone = 0;
    bool suppress_utm = true;
    bool attenuation = false;
    bool use_olsen_attenuation = false;
    bool pml_conditions = false;
    bool stacey_conditions = false;
    bool gpu_mode = false;
    bool movie_surface = false;
    std::string model_name = "default";
};

struct ParFileGlobe {
    int nchunks = 6; // one of 1, 2, 3, 6
    int nex_xi = 64;
    int nex_eta = 64;
    int nproc_xi = 1;
    int nproc_eta = 1;
    std::string model_name = "s362ani";
    bool oceans = false;
    bool ellipticity = false;
    bool topography = false;
    bool gravity = false;
    bool rotation = false;
    bool attenuation = false;
    double record_length_minutes = 10.0;
    bool gpu_mode = false;
};

/// Deck builders. Each validates its input and throws a single
/// std::invalid_argument naming every violated field; external mesh
/// files must exist at build time.
ParameterDeck build_par_file_2d(const ParFile2D& p);
ParameterDeck build_par_file_3d(const ParFile3D& p);
ParameterDeck build_par_file_globe(const ParFileGlobe& p);

} // namespace smcp
