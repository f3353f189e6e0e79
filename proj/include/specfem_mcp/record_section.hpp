#pragma once

#include "specfem_mcp/seismogram.hpp"

#include <filesystem>

namespace smcp {

/// Stacked wiggle plot: one horizontal trace per row, positive lobes
/// optionally filled in black, labels on the left, time axis below.
struct RecordSection {
    enum class Normalization { per_trace, global };

    std::vector<Seismogram> traces; // drawn top to bottom in order
    Normalization normalization = Normalization::per_trace;
    bool fill_positive = true;
};

/// Writes an SVG with byte-deterministic output for equal input. Throws
/// on an empty trace list or when the traces do not share dt (1e-9
/// relative). Returns the output path.
std::filesystem::path render_record_section(const RecordSection& rs,
                                            const std::filesystem::path& out_svg);

} // namespace smcp
