#pragma once

#include <mobius/mesh.hpp>

namespace mobius {

/// Parallel transport along one Kagome arc: a rotation about the face
/// circumcircle taking the circumsphere of the source edge to the
/// circumsphere of the target edge.
struct KagomeTransport {
    int arc = -1;
    double alpha = 0;  // signed angle in (-pi, pi]
    MoebiusMap map;    // exp(1/2 alpha C_face)
};

/// Throws DegenerateEdgeError for concircular endpoint edges and
/// std::domain_error for anti-aligned circumspheres.
KagomeTransport transport(const SimplicialSurface& mesh, const KagomeComplex& kc, int arc);

/// Ordered product of arc transports; the first arc of the list acts first.
MoebiusMap cycle_product(const SimplicialSurface& mesh, const KagomeComplex& kc,
                         const std::vector<int>& arcs);

struct VertexMonodromy {
    int vertex = -1;
    MoebiusMap map;           // transports composed ccw around the vertex
    Quaternion mu;            // unit; M psi_i = psi_i mu
    double theta = 0;         // rotation angle, sign fixed against base_normal
    ImQuaternion base_normal; // n_0: normal of the first star circumsphere at f_i
    double willmore = 0;      // W_i from the circumcircle angle sums
    double deviation = 0;     // min over signs of |mu -+ exp(-W_i/2 n_0)|_max
    bool matches_energy = false;
};

/// Monodromy of the vertex-type Kagome cycle with the given index, compared
/// against the angle-sum energy up to quaternion sign.
VertexMonodromy monodromy(const SimplicialSurface& mesh, const KagomeComplex& kc,
                          int cycle_index, double tol = 1e-8);

/// Ordered product of the rotations exp(1/2 alpha_l t_l) carrying each unit
/// normal to the next (cyclically); the first pair acts first. Equals
/// +-exp(-1/2 n_1 sum of exterior angles). Throws for antipodal neighbours.
Quaternion spherical_polygon_product(const std::vector<ImQuaternion>& normals);

}  // namespace mobius
