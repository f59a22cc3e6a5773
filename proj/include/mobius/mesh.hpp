#pragma once

#include <mobius/spheres.hpp>

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace mobius {

/// Oriented triangle mesh with derived halfedge adjacency. Halfedge 3f + c of
/// face f runs from corner c to corner (c + 1) % 3. Immutable after
/// construction apart from set_positions, which keeps the connectivity.
class SimplicialSurface {
  public:
    SimplicialSurface(std::vector<ImQuaternion> positions,
                      std::vector<std::array<int, 3>> triangles);

    int vertex_count() const { return int(positions_.size()); }
    int face_count() const { return int(triangles_.size()); }
    int edge_count() const { return int(edges_.size()); }
    int halfedge_count() const { return int(3 * triangles_.size()); }

    const std::vector<ImQuaternion>& positions() const { return positions_; }
    const ImQuaternion& position(int v) const { return positions_[v]; }
    const std::vector<std::array<int, 3>>& triangles() const { return triangles_; }
    void set_positions(std::vector<ImQuaternion> positions);

    int he_origin(int h) const;
    int he_target(int h) const;
    int he_face(int h) const { return h / 3; }
    int he_next(int h) const { return 3 * (h / 3) + (h + 1) % 3; }
    int he_prev(int h) const { return 3 * (h / 3) + (h + 2) % 3; }
    int he_twin(int h) const { return twin_[h]; }  // -1 at boundary
    int he_edge(int h) const { return he_edge_[h]; }

    struct Edge {
        int halfedge;  // one representative halfedge
    };
    const Edge& edge(int e) const { return edges_[e]; }

    /// Outgoing halfedges of v in counterclockwise order; starts at a boundary
    /// halfedge when the vertex is on the boundary.
    const std::vector<int>& vertex_star(int v) const { return star_[v]; }
    bool is_interior_vertex(int v) const { return interior_[v]; }
    bool is_interior_edge(int e) const { return twin_[edges_[e].halfedge] >= 0; }
    int vertex_degree(int v) const { return int(star_[v].size()); }

    double bbox_diagonal() const;

  private:
    std::vector<ImQuaternion> positions_;
    std::vector<std::array<int, 3>> triangles_;
    std::vector<int> twin_;
    std::vector<int> he_edge_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> star_;
    std::vector<bool> interior_;
};

/// Thrown when an edge has four concircular vertices: the circumsphere is not
/// unique there.
struct DegenerateEdgeError : std::runtime_error {
    int edge;
    explicit DegenerateEdgeError(int e)
        : std::runtime_error("degenerate (concircular) edge " + std::to_string(e)), edge(e) {}
};

/// Circumcircle of a face, oriented by the face.
Circle circumcircle(const SimplicialSurface& mesh, int face);

/// Circumsphere of an interior edge, oriented so that its normal at f_i points
/// along the cross product of the two adjacent circumcircle tangents there.
/// Throws DegenerateEdgeError for concircular quads.
Sphere2 circumsphere(const SimplicialSurface& mesh, int edge);

/// Intersection angle of the two adjacent circumcircles, in [0, pi).
/// nullopt for boundary edges; 0 for degenerate (concircular) edges.
std::optional<double> beta(const SimplicialSurface& mesh, int edge);

struct VertexEnergyReport {
    int vertex = -1;
    std::vector<double> betas;       // per incident interior edge, star order
    double willmore = 0;             // W_i = sum betas - 2 pi
    double gauss_defect = 0;         // K_i = 2 pi - sum corner angles
    std::vector<int> degenerate_edges;
};

/// Per-vertex discrete Willmore energy. Interior vertices only.
VertexEnergyReport willmore_vertex(const SimplicialSurface& mesh, int vertex);

/// W = 1/2 sum over interior vertices of W_i.
double willmore_total(const SimplicialSurface& mesh);

/// Angle defect at an interior vertex. nullopt for boundary vertices.
std::optional<double> gauss_defect(const SimplicialSurface& mesh, int vertex);

/// Derived complex: one node per mesh edge, one arc per mesh corner, faces
/// split into face cycles (per triangle) and vertex cycles (per interior
/// vertex).
struct KagomeComplex {
    struct Arc {
        int source_node;  // mesh edge index
        int target_node;  // mesh edge index
        int face;         // the mesh face the corner belongs to
        int corner_vertex;
    };
    int node_count = 0;
    std::vector<Arc> arcs;                       // one per corner; arc index == halfedge index
    std::vector<std::vector<int>> face_cycles;   // arc indices, one cycle per face
    std::vector<std::vector<int>> vertex_cycles; // arc indices, ccw, one per interior vertex
    std::vector<int> vertex_of_cycle;            // mesh vertex per vertex cycle
};

KagomeComplex build_kagome(const SimplicialSurface& mesh);

}  // namespace mobius
