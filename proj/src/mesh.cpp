#include <mobius/mesh.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

namespace mobius {

namespace {

constexpr double kPi = std::numbers::pi;

struct EuclideanCircle {
    bool is_line;
    ImQuaternion center;  // a point on the line when is_line
    double radius;        // unused when is_line
    ImQuaternion axis;    // plane normal (round) or direction (line), unit
};

EuclideanCircle euclidean_circumcircle(const ImQuaternion& p1, const ImQuaternion& p2,
                                       const ImQuaternion& p3) {
    ImQuaternion u = p2 - p1;
    ImQuaternion v = p3 - p1;
    ImQuaternion nrm = cross(u, v);
    if (nrm.norm() <= 1e-12 * u.norm() * v.norm()) {
        return {true, p1, 0.0, normalized(u)};
    }
    double n2 = nrm.norm2();
    ImQuaternion center =
        p1 + (u.norm2() * cross(v, nrm) + v.norm2() * cross(nrm, u)) / (2.0 * n2);
    return {false, center, (p1 - center).norm(), nrm / nrm.norm()};
}

/// Relative distance of q from the circle through p1, p2, p3.
double concircularity_residual(const EuclideanCircle& c, const ImQuaternion& q) {
    if (c.is_line) {
        ImQuaternion d = q - c.center;
        double along = dot(d, c.axis);
        double off = (d - c.axis * along).norm();
        return off / std::max(1.0, d.norm());
    }
    ImQuaternion d = q - c.center;
    double out_of_plane = dot(d, c.axis);
    double in_plane = (d - c.axis * out_of_plane).norm();
    return std::hypot(out_of_plane, in_plane - c.radius) / c.radius;
}

constexpr double kConcircularTol = 1e-10;

}  // namespace

SimplicialSurface::SimplicialSurface(std::vector<ImQuaternion> positions,
                                     std::vector<std::array<int, 3>> triangles)
    : positions_(std::move(positions)), triangles_(std::move(triangles)) {
    const int nv = int(positions_.size());
    const int nh = 3 * int(triangles_.size());
    for (const auto& t : triangles_) {
        for (int v : t) {
            if (v < 0 || v >= nv) throw std::invalid_argument("triangle index out of range");
        }
        if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) {
            throw std::invalid_argument("degenerate triangle with repeated vertex");
        }
    }

    // Twins from directed edges; a repeated directed edge means the mesh is
    // non-manifold or inconsistently oriented.
    std::unordered_map<long long, int> directed;
    directed.reserve(nh);
    auto key = [nv](int a, int b) { return (long long)a * nv + b; };
    for (int h = 0; h < nh; ++h) {
        auto [it, fresh] = directed.emplace(key(he_origin(h), he_target(h)), h);
        if (!fresh) throw std::invalid_argument("non-manifold mesh: repeated directed edge");
    }
    twin_.assign(nh, -1);
    he_edge_.assign(nh, -1);
    for (int h = 0; h < nh; ++h) {
        auto it = directed.find(key(he_target(h), he_origin(h)));
        twin_[h] = it == directed.end() ? -1 : it->second;
        if (he_edge_[h] < 0) {
            int e = int(edges_.size());
            edges_.push_back({h});
            he_edge_[h] = e;
            if (twin_[h] >= 0) he_edge_[twin_[h]] = e;
        }
    }

    // Vertex stars in counterclockwise order; the disk/half-disk condition
    // demands that a single fan sweep reaches every outgoing halfedge.
    std::vector<int> out_count(nv, 0), seed(nv, -1);
    for (int h = 0; h < nh; ++h) {
        int v = he_origin(h);
        ++out_count[v];
        seed[v] = h;
    }
    star_.assign(nv, {});
    interior_.assign(nv, false);
    for (int v = 0; v < nv; ++v) {
        if (seed[v] < 0) throw std::invalid_argument("isolated vertex");
        int start = seed[v];
        // Rewind clockwise to the boundary, if there is one.
        for (int g = start, steps = 0;; ++steps) {
            if (steps > out_count[v]) throw std::invalid_argument("non-manifold vertex fan");
            int t = he_twin(g);
            if (t < 0) { start = g; break; }
            g = he_next(t);
            if (g == seed[v]) { start = g; interior_[v] = true; break; }
        }
        int h = start;
        for (int steps = 0; steps < out_count[v]; ++steps) {
            star_[v].push_back(h);
            int p = he_prev(h);
            int t = he_twin(p);
            if (t < 0) break;
            h = t;
            if (h == start) break;
        }
        if (int(star_[v].size()) != out_count[v]) {
            throw std::invalid_argument("non-manifold vertex: star is not a disk");
        }
    }
}

void SimplicialSurface::set_positions(std::vector<ImQuaternion> positions) {
    if (positions.size() != positions_.size()) {
        throw std::invalid_argument("position count mismatch");
    }
    positions_ = std::move(positions);
}

int SimplicialSurface::he_origin(int h) const { return triangles_[h / 3][h % 3]; }
int SimplicialSurface::he_target(int h) const { return triangles_[h / 3][(h + 1) % 3]; }

double SimplicialSurface::bbox_diagonal() const {
    ImQuaternion lo = positions_[0], hi = positions_[0];
    for (const auto& p : positions_) {
        lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
        hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
    }
    return (hi - lo).norm();
}

Circle circumcircle(const SimplicialSurface& mesh, int face) {
    const auto& t = mesh.triangles()[face];
    try {
        return circle_through_points(mesh.position(t[0]), mesh.position(t[1]),
                                     mesh.position(t[2]));
    } catch (const std::domain_error&) {
        throw std::domain_error("degenerate face " + std::to_string(face));
    }
}

Sphere2 circumsphere(const SimplicialSurface& mesh, int edge) {
    int h = mesh.edge(edge).halfedge;
    int ht = mesh.he_twin(h);
    if (ht < 0) throw std::domain_error("boundary edge has no circumsphere");

    const int i = mesh.he_origin(h), j = mesh.he_target(h);
    const int k = mesh.he_target(mesh.he_next(h));
    const int l = mesh.he_target(mesh.he_next(ht));
    const ImQuaternion pi = mesh.position(i), pj = mesh.position(j);
    const ImQuaternion pk = mesh.position(k), pl = mesh.position(l);

    EuclideanCircle face_circle = euclidean_circumcircle(pi, pj, pk);
    if (concircularity_residual(face_circle, pl) < kConcircularTol) {
        throw DegenerateEdgeError(edge);
    }

    // Center of the sphere through the four points: 2 (p_m - p_i) . c =
    // |p_m|^2 - |p_i|^2. A singular system means the quad is coplanar and the
    // sphere is the common plane.
    ImQuaternion rows[3] = {pj - pi, pk - pi, pl - pi};
    double rhs[3];
    const ImQuaternion others[3] = {pj, pk, pl};
    for (int r = 0; r < 3; ++r) rhs[r] = 0.5 * (others[r].norm2() - pi.norm2());

    double det = dot(rows[0], cross(rows[1], rows[2]));
    double scale = std::max({rows[0].norm(), rows[1].norm(), rows[2].norm()});

    ImQuaternion n;
    double hcurv;
    if (std::abs(det) <= 1e-12 * scale * scale * scale) {
        n = normalized(cross(rows[0], rows[1]));
        hcurv = 0.0;
    } else {
        // Cramer's rule.
        ImQuaternion c12 = cross(rows[1], rows[2]);
        ImQuaternion c20 = cross(rows[2], rows[0]);
        ImQuaternion c01 = cross(rows[0], rows[1]);
        ImQuaternion center = (c12 * rhs[0] + c20 * rhs[1] + c01 * rhs[2]) / det;
        double radius = (pi - center).norm();
        n = (pi - center) / radius;
        hcurv = 1.0 / radius;
    }

    // Orientation: the normal at f_i follows t^i_{jil} x t^i_{ijk}.
    Circle c_ijk = circumcircle(mesh, mesh.he_face(h));
    Circle c_jil = circumcircle(mesh, mesh.he_face(ht));
    PointS3 at_i{pi};
    ImQuaternion t_ijk = circle_tangent_at(c_ijk, at_i);
    ImQuaternion t_jil = circle_tangent_at(c_jil, at_i);
    double side = dot(n, cross(t_jil, t_ijk));
    if (side == 0) throw DegenerateEdgeError(edge);
    if (side < 0) {
        n = -n;
        hcurv = -hcurv;
    }
    return sphere_from_point_normal_h(pi, n, hcurv);
}

std::optional<double> beta(const SimplicialSurface& mesh, int edge) {
    int h = mesh.edge(edge).halfedge;
    int ht = mesh.he_twin(h);
    if (ht < 0) return std::nullopt;
    Circle c1 = circumcircle(mesh, mesh.he_face(h));
    Circle c2 = circumcircle(mesh, mesh.he_face(ht));
    double c = std::clamp(inner(c1.matrix(), c2.matrix()), -1.0, 1.0);
    return std::acos(c);
}

VertexEnergyReport willmore_vertex(const SimplicialSurface& mesh, int vertex) {
    if (!mesh.is_interior_vertex(vertex)) {
        throw std::domain_error("Willmore energy is defined for interior vertices only");
    }
    VertexEnergyReport report;
    report.vertex = vertex;
    double beta_sum = 0;
    double angle_sum = 0;
    for (int h : mesh.vertex_star(vertex)) {
        int e = mesh.he_edge(h);
        auto b = beta(mesh, e);
        if (!b) throw std::domain_error("interior vertex with boundary edge");
        report.betas.push_back(*b);
        beta_sum += *b;

        // Corner angle in the face of h at the vertex.
        ImQuaternion u = mesh.position(mesh.he_target(h)) - mesh.position(vertex);
        ImQuaternion v =
            mesh.position(mesh.he_origin(mesh.he_prev(h))) - mesh.position(vertex);
        angle_sum += std::atan2(cross(u, v).norm(), dot(u, v));

        // Flag concircular edges; their circumsphere is not unique but the
        // energy extends continuously with beta = 0.
        int ht = mesh.he_twin(h);
        const auto& t = mesh.triangles()[mesh.he_face(h)];
        EuclideanCircle fc = euclidean_circumcircle(mesh.position(t[0]), mesh.position(t[1]),
                                                    mesh.position(t[2]));
        ImQuaternion pl = mesh.position(mesh.he_target(mesh.he_next(ht)));
        if (concircularity_residual(fc, pl) < kConcircularTol) {
            report.degenerate_edges.push_back(e);
        }
    }
    report.willmore = beta_sum - 2 * kPi;
    report.gauss_defect = 2 * kPi - angle_sum;
    return report;
}

double willmore_total(const SimplicialSurface& mesh) {
    std::vector<double> beta_sum(mesh.vertex_count(), 0.0);
    for (int e = 0; e < mesh.edge_count(); ++e) {
        auto b = beta(mesh, e);
        if (!b) continue;
        int h = mesh.edge(e).halfedge;
        beta_sum[mesh.he_origin(h)] += *b;
        beta_sum[mesh.he_target(h)] += *b;
    }
    double total = 0;
    for (int v = 0; v < mesh.vertex_count(); ++v) {
        if (mesh.is_interior_vertex(v)) total += beta_sum[v] - 2 * kPi;
    }
    return 0.5 * total;
}

std::optional<double> gauss_defect(const SimplicialSurface& mesh, int vertex) {
    if (!mesh.is_interior_vertex(vertex)) return std::nullopt;
    double angle_sum = 0;
    for (int h : mesh.vertex_star(vertex)) {
        ImQuaternion u = mesh.position(mesh.he_target(h)) - mesh.position(vertex);
        ImQuaternion v =
            mesh.position(mesh.he_origin(mesh.he_prev(h))) - mesh.position(vertex);
        angle_sum += std::atan2(cross(u, v).norm(), dot(u, v));
    }
    return 2 * kPi - angle_sum;
}

KagomeComplex build_kagome(const SimplicialSurface& mesh) {
    KagomeComplex kc;
    kc.node_count = mesh.edge_count();
    kc.arcs.resize(mesh.halfedge_count());
    // The corner of halfedge h sits at its origin; the arc runs from the edge
    // of h to the edge of prev(h), both incident on that corner vertex.
    for (int h = 0; h < mesh.halfedge_count(); ++h) {
        kc.arcs[h] = {mesh.he_edge(h), mesh.he_edge(mesh.he_prev(h)), mesh.he_face(h),
                      mesh.he_origin(h)};
    }
    kc.face_cycles.resize(mesh.face_count());
    for (int f = 0; f < mesh.face_count(); ++f) {
        kc.face_cycles[f] = {3 * f, 3 * f + 1, 3 * f + 2};
    }
    for (int v = 0; v < mesh.vertex_count(); ++v) {
        if (!mesh.is_interior_vertex(v)) continue;
        kc.vertex_cycles.push_back(mesh.vertex_star(v));
        kc.vertex_of_cycle.push_back(v);
    }
    return kc;
}

}  // namespace mobius
