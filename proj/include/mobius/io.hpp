#pragma once

#include <mobius/mesh.hpp>

#include <iosfwd>
#include <string>

namespace mobius {

struct ObjParseError : std::runtime_error {
    int line;
    ObjParseError(int line_, const std::string& what_)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
};

/// Reads the v/f subset of Wavefront OBJ. Texture and normal indices on
/// faces are accepted and ignored; polygons with more than three vertices
/// are rejected; unknown directives are skipped.
SimplicialSurface read_obj(const std::string& path);
SimplicialSurface read_obj_stream(std::istream& in);

/// Positions are written with 17 significant digits so a write/read round
/// trip reproduces the doubles exactly.
void write_obj(const SimplicialSurface& mesh, const std::string& path);
void write_obj_stream(const SimplicialSurface& mesh, std::ostream& out);

/// Full energy report: per-vertex betas, W_i, K_i, monodromy angle and
/// theorem check, plus totals. Serialized as versioned JSON.
std::string energy_report_json(const SimplicialSurface& mesh, double tol = 1e-8);

/// Harmonic-mean face spheres as center/radius or normal/offset records.
std::string face_spheres_json(const SimplicialSurface& mesh);

}  // namespace mobius
