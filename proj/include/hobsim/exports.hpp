#pragma once

#include <string>

#include "hobsim/cutting.hpp"

namespace hobsim {

inline constexpr const char* kArtifactVersion = "hobsim-0.1.0";

/// FNV-1a 64-bit hash, hex encoded; used for output provenance.
std::string fnv1a_hex(const std::string& data);

/// "# config-hash=<hash>, version=<version>"
std::string provenance_line(const std::string& config_hash);

/// Shortest decimal form at 12 significant digits.
std::string format_sig12(double v);

/// Deviation field CSV: row,col,u,z_mm,dev_mm,pose_index.
void write_deviation_csv(const DeviationField& field, const std::string& path,
                         const std::string& config_hash = "");

/// Binary STL of the as-cut flank patch (grid points offset along normals).
void write_stl(const DeviationField& field, const std::string& path);

/// Transverse slice CSV: theta_deg,radius_mm,x_mm,y_mm.
void write_slice_csv(const SliceProfile& slice, const std::string& path,
                     const std::string& config_hash = "");

/// Slice polyline as an SVG path, 1 user unit = 1 mm.
void write_slice_svg(const SliceProfile& slice, const std::string& path);

}  // namespace hobsim
